// Exact rational arithmetic helpers on top of boost::multiprecision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbiflop {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_of(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(BigInt(num), BigInt(den));
}

// Largest integer <= q.
inline BigInt rat_floor(const Rat& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quo = n / d;
    if (n % d != 0 && n < 0) --quo;
    return quo;
}

// q - floor(q), in [0, 1).
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

inline long long rat_to_ll(const Rat& q) {
    if (!rat_is_integer(q)) throw std::domain_error("rational is not an integer");
    return static_cast<long long>(numerator(q));
}

// Canonical text: "p" for integers, "p/q" otherwise; q > 0.
inline std::string rat_str(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

Rat rat_parse(std::string_view s);

// Nonnegative residue of n modulo m (m > 0).
inline long long mod_residue(long long n, long long m) {
    long long v = n % m;
    return v < 0 ? v + m : v;
}

long long gcd_ll(long long a, long long b);

// Inverse of a modulo m; throws when gcd(a, m) != 1.
long long mod_inverse(long long a, long long m);

}  // namespace orbiflop
