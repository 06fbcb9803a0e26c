// Rational functions in (lambda, u) kept as factored products of linear
// weight forms, plus opaque symbols of declared u-degree zero.
#pragma once

#include "orbiflop/weightform.hpp"

#include <map>
#include <string>

namespace orbiflop {

struct LimitU0;

class FactoredRat {
  public:
    FactoredRat() : scalar_(0) {}  // canonical zero

    static FactoredRat zero() { return FactoredRat(); }
    static FactoredRat one() { return from_scalar(rat_of(1)); }
    static FactoredRat from_scalar(const Rat& c);
    // (w)^exp, with the proportional-form normalization folded into the scalar.
    static FactoredRat from_weight(const WeightForm& w, long long exp = 1);
    static FactoredRat from_opaque(const std::string& symbol, long long exp = 1);

    bool is_zero() const { return scalar_ == 0; }
    const Rat& scalar() const { return scalar_; }
    const std::map<WeightForm, long long>& factors() const { return factors_; }
    const std::map<std::string, long long>& opaques() const { return opaques_; }

    FactoredRat operator*(const FactoredRat& o) const;
    FactoredRat& operator*=(const FactoredRat& o) { return *this = *this * o; }
    FactoredRat inverse() const;  // throws on zero
    FactoredRat pow(long long e) const;

    bool operator==(const FactoredRat& o) const {
        return scalar_ == o.scalar_ && factors_ == o.factors_ && opaques_ == o.opaques_;
    }

    // Net exponent of pure-u factors; opaques contribute zero by contract.
    // Throws on the canonical zero.
    long long u_valuation() const;

    LimitU0 limit_u0() const;

    // Exact evaluation at a rational point; opaques must be absent and no
    // factor with negative exponent may vanish there.
    Rat eval(const Rat& lam0, const Rat& u0) const;

    // Canonical text "c * (a*L+b*U)^e * ... * {sym}^e"; byte-identical for
    // equal values and round-trip stable.
    std::string str() const;
    static FactoredRat parse(std::string_view text);

  private:
    Rat scalar_;
    std::map<WeightForm, long long> factors_;   // canonical representative -> exponent
    std::map<std::string, long long> opaques_;  // symbol -> exponent

    void mul_weight(const WeightForm& w, long long exp);
};

struct LimitU0 {
    enum class Kind { Zero, Pole, Value } kind;
    FactoredRat value;  // lambda-only, opaques preserved; set for Kind::Value
};

FactoredRat operator*(const Rat& c, const FactoredRat& f);

}  // namespace orbiflop
