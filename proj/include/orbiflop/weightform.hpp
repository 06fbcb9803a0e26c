// Linear torus weights a*lambda + b*u in the two equivariant parameters.
#pragma once

#include "orbiflop/rational.hpp"

#include <compare>
#include <string>

namespace orbiflop {

struct WeightForm {
    Rat lam;  // coefficient of lambda
    Rat u;    // coefficient of u

    bool is_zero() const { return lam == 0 && u == 0; }
    bool pure_u() const { return lam == 0 && u != 0; }
    bool pure_lam() const { return u == 0 && lam != 0; }

    WeightForm operator+(const WeightForm& o) const { return {lam + o.lam, u + o.u}; }
    WeightForm operator-(const WeightForm& o) const { return {lam - o.lam, u - o.u}; }
    WeightForm operator-() const { return {-lam, -u}; }
    WeightForm operator*(const Rat& c) const { return {lam * c, u * c}; }

    bool operator==(const WeightForm& o) const { return lam == o.lam && u == o.u; }
    bool operator<(const WeightForm& o) const {
        if (lam != o.lam) return lam < o.lam;
        return u < o.u;
    }

    Rat eval(const Rat& lam0, const Rat& u0) const { return lam * lam0 + u * u0; }

    std::string str() const { return rat_str(lam) + "*L+" + rat_str(u) + "*U"; }
};

inline WeightForm wf(long long a, long long b) { return {rat_of(a), rat_of(b)}; }
inline WeightForm wf(Rat a, Rat b) { return {std::move(a), std::move(b)}; }

// Scale so the first nonzero coefficient is 1; the scale factor is returned
// separately.  This is the representative used to merge proportional factors.
struct SplitForm {
    Rat scale;
    WeightForm rep;
};

inline SplitForm canonical_split(const WeightForm& w) {
    if (w.lam != 0) return {w.lam, {rat_of(1), w.u / w.lam}};
    if (w.u != 0) return {w.u, {rat_of(0), rat_of(1)}};
    throw std::invalid_argument("zero weight form has no canonical representative");
}

// q such that x == q * y, if the forms are proportional.
bool proportional_ratio(const WeightForm& x, const WeightForm& y, Rat& q);

}  // namespace orbiflop
