// Cohomology weights of equivariant line bundles on degree-d covers of
// invariant orbifold lines (two-pole spheres).  Sections are enumerated as
// the lattice points common to the two pole-local weight progressions,
// filtered by the isotropy characters of the cover.
#pragma once

#include "orbiflop/weightform.hpp"

#include <vector>

namespace orbiflop {

struct LineEndData {
    long long m;            // target isotropy order at this pole
    WeightForm tangent;     // uniformized tangent weight of the line
    long long tangent_char; // chart character of the tangent direction
};

struct CoverEnd {
    long long g, k, e;       // g = gcd(d, m), k = m / g, e = d / g
    long long monodromy;     // group element (exponent in Z_m) at this pole
    WeightForm src_tangent;  // uniformized source tangent weight
};

struct LineCover {
    long long d;  // coarse degree over the line
    LineEndData endA, endB;
    CoverEnd covA, covB;
};

LineCover make_cover(const LineEndData& a, const LineEndData& b, long long d);

// Character (in Z_k) of the pullback of a fiber direction with chart
// character chi at the given pole of the cover.
long long pole_character(const LineEndData& end, const CoverEnd& cov, long long d, long long chi);

struct SummandEnds {
    WeightForm fiberA;
    long long charA;  // chart character at end A
    WeightForm fiberB;
    long long charB;
};

std::vector<WeightForm> h0_weights(const LineCover& cover, const SummandEnds& s);
std::vector<WeightForm> h1_weights(const LineCover& cover, const SummandEnds& s);

// The tangent line of the covered line itself as a summand.
SummandEnds tangent_summand(const LineCover& cover);

// Weight tables for sections of O(2d-2) on the d-fold cover of the
// exceptional curve, and the dual H^1 weights of the invariant part.
struct SectionInfo {
    long long a, b;  // monomial exponents, a + b = 2d - 2
    WeightForm weight;
    long long character;  // residue mod r
};

std::vector<SectionInfo> h0_sections_O2dm2(long long d, long long r, const Rat& lam_scale = Rat(1));
std::vector<WeightForm> h1_dual_weights(long long d, long long r);

}  // namespace orbiflop
