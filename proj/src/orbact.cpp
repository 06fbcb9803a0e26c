#include "orbiflop/orbact.hpp"

#include <stdexcept>

namespace orbiflop {

CyclicAction make_action(long long order, const std::vector<long long>& raw_weights) {
    if (order < 1) throw std::invalid_argument("cyclic group order must be positive");
    CyclicAction act;
    act.order = order;
    act.weights.reserve(raw_weights.size());
    for (long long w : raw_weights) act.weights.push_back(mod_residue(w, order));
    return act;
}

Rat degree_shifting(const CyclicAction& act, long long k) {
    if (k < 0 || k >= act.order) throw std::out_of_range("sector index out of range");
    Rat total = 0;
    for (long long w : act.weights) total += rat_frac(Rat(BigInt(k) * w, BigInt(act.order)));
    return total;
}

std::vector<TwistedSector> sector_table(const CyclicAction& act) {
    std::vector<TwistedSector> out;
    out.reserve(static_cast<std::size_t>(act.order));
    for (long long k = 0; k < act.order; ++k) out.push_back({k, degree_shifting(act, k)});
    return out;
}

std::vector<std::size_t> invariant_indices(const std::vector<long long>& chars, long long r) {
    if (r < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < chars.size(); ++i)
        if (mod_residue(chars[i], r) == 0) out.push_back(i);
    return out;
}

}  // namespace orbiflop
