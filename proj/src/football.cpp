#include "orbiflop/football.hpp"

#include "orbiflop/rational.hpp"

#include <stdexcept>

namespace orbiflop {

namespace {

CoverEnd make_cover_end(const LineEndData& end, long long d) {
    CoverEnd c;
    c.g = gcd_ll(d, end.m);
    c.k = end.m / c.g;
    c.e = d / c.g;
    c.monodromy = (d % end.m) * mod_inverse(end.tangent_char, end.m) % end.m;
    c.src_tangent = end.tangent * Rat(BigInt(c.g), BigInt(d));
    return c;
}

}  // namespace

LineCover make_cover(const LineEndData& a, const LineEndData& b, long long d) {
    if (d < 1) throw std::invalid_argument("cover degree must be positive");
    LineCover cover{d, a, b, make_cover_end(a, d), make_cover_end(b, d)};
    WeightForm balance = cover.covA.src_tangent * rat_of(cover.covA.k) +
                         cover.covB.src_tangent * rat_of(cover.covB.k);
    if (!balance.is_zero()) throw std::logic_error("cover tangent weights do not balance");
    return cover;
}

long long pole_character(const LineEndData& end, const CoverEnd& cov, long long d, long long chi) {
    long long m = end.m;
    long long val = mod_residue(d % m * mod_residue(chi, m) % m * mod_inverse(end.tangent_char, m) % m, m);
    if (val % cov.g != 0) throw std::logic_error("fiber character is not defined on the cover isotropy");
    return val / cov.g;
}

namespace {

struct EndSpec {
    WeightForm nu;
    long long c;  // residue in Z_k
};

// Common solutions of nu_A - i*W_A = nu_B - i'*W_B with i, i' >= 0 subject to
// the character congruences.  Returns the section weights.
std::vector<WeightForm> solve_sections(const LineCover& cover, const EndSpec& A, const EndSpec& B) {
    std::vector<WeightForm> out;
    const WeightForm& W = cover.covA.src_tangent;
    WeightForm diff = A.nu - B.nu;
    Rat rho;
    if (diff.is_zero()) {
        rho = 0;
    } else if (!proportional_ratio(diff, W, rho)) {
        return out;
    }
    Rat R = rho * rat_of(cover.covB.k);
    if (!rat_is_integer(R)) return out;
    long long Ri = rat_to_ll(R);
    if (Ri < 0) return out;
    long long kA = cover.covA.k, kB = cover.covB.k;
    for (long long i = mod_residue(A.c, kA); i * kB <= Ri; i += kA) {
        long long rem = Ri - i * kB;
        if (rem % kA != 0) continue;
        long long ip = rem / kA;
        if (mod_residue(ip, kB) != mod_residue(B.c, kB)) continue;
        out.push_back(A.nu - W * rat_of(i));
    }
    return out;
}

EndSpec pullback_spec(const LineEndData& end, const CoverEnd& cov, long long d, const WeightForm& fiber,
                      long long chi) {
    return EndSpec{fiber, pole_character(end, cov, d, chi)};
}

}  // namespace

std::vector<WeightForm> h0_weights(const LineCover& cover, const SummandEnds& s) {
    EndSpec A = pullback_spec(cover.endA, cover.covA, cover.d, s.fiberA, s.charA);
    EndSpec B = pullback_spec(cover.endB, cover.covB, cover.d, s.fiberB, s.charB);
    return solve_sections(cover, A, B);
}

std::vector<WeightForm> h1_weights(const LineCover& cover, const SummandEnds& s) {
    // Serre duality: H^1(F)* = H^0(K (x) F*), with K carrying character -1
    // and weight -src_tangent at each pole.
    EndSpec A = pullback_spec(cover.endA, cover.covA, cover.d, s.fiberA, s.charA);
    EndSpec B = pullback_spec(cover.endB, cover.covB, cover.d, s.fiberB, s.charB);
    EndSpec dualA{-cover.covA.src_tangent - A.nu, mod_residue(-1 - A.c, cover.covA.k)};
    EndSpec dualB{-cover.covB.src_tangent - B.nu, mod_residue(-1 - B.c, cover.covB.k)};
    std::vector<WeightForm> duals = solve_sections(cover, dualA, dualB);
    std::vector<WeightForm> out;
    out.reserve(duals.size());
    for (const auto& w : duals) out.push_back(-w);
    return out;
}

SummandEnds tangent_summand(const LineCover& cover) {
    return SummandEnds{cover.endA.tangent, cover.endA.tangent_char, cover.endB.tangent,
                       cover.endB.tangent_char};
}

std::vector<SectionInfo> h0_sections_O2dm2(long long d, long long r, const Rat& lam_scale) {
    if (d < 1 || r < 1) throw std::invalid_argument("d and r must be positive");
    std::vector<SectionInfo> out;
    for (long long a = 0; a <= 2 * d - 2; ++a) {
        long long b = 2 * d - 2 - a;
        WeightForm w{lam_scale * Rat(BigInt(d - 1 - a), BigInt(d)), rat_of(-r)};
        out.push_back(SectionInfo{a, b, w, mod_residue(d - 1 - a, r)});
    }
    return out;
}

std::vector<WeightForm> h1_dual_weights(long long d, long long r) {
    std::vector<WeightForm> out;
    for (const auto& s : h0_sections_O2dm2(d, r)) {
        if (s.character == 0) out.push_back(-s.weight);
    }
    return out;
}

}  // namespace orbiflop
