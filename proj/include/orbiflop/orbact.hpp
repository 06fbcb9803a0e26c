// Cyclic group actions on coordinate charts, twisted sectors and their
// degree-shifting numbers, invariant-character filters.
#pragma once

#include "orbiflop/rational.hpp"

#include <cstddef>
#include <vector>

namespace orbiflop {

struct CyclicAction {
    long long order = 1;                 // r >= 1
    std::vector<long long> weights;      // residues in [0, r)

    bool operator==(const CyclicAction&) const = default;
};

// Weights are reduced to canonical residues mod r.
CyclicAction make_action(long long order, const std::vector<long long>& raw_weights);

// sum_i frac(k*w_i / r) for the group element indexed by k in [0, r).
Rat degree_shifting(const CyclicAction& act, long long k);

struct TwistedSector {
    long long k;
    Rat shifting;
};

// All r sectors k = 0..r-1, ordered by k.
std::vector<TwistedSector> sector_table(const CyclicAction& act);

// Indices i with chars[i] == 0 mod r, order preserved.
std::vector<std::size_t> invariant_indices(const std::vector<long long>& chars, long long r);

}  // namespace orbiflop
