#include "orbiflop/factored.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace orbiflop {

Rat rat_parse(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(BigInt(std::string(s)));
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + std::string(s));
    }
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

long long mod_inverse(long long a, long long m) {
    long long r0 = m, r1 = mod_residue(a, m);
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw std::domain_error("not invertible modulo " + std::to_string(m));
    return mod_residue(t0, m);
}

bool proportional_ratio(const WeightForm& x, const WeightForm& y, Rat& q) {
    if (y.is_zero()) return false;
    if (y.lam != 0) {
        q = x.lam / y.lam;
        return x.u == q * y.u;
    }
    if (x.lam != 0) return false;
    q = x.u / y.u;
    return true;
}

FactoredRat FactoredRat::from_scalar(const Rat& c) {
    FactoredRat f;
    f.scalar_ = c;
    return f;
}

FactoredRat FactoredRat::from_weight(const WeightForm& w, long long exp) {
    if (w.is_zero()) throw std::invalid_argument("zero weight form is not a valid factor");
    FactoredRat f = one();
    f.mul_weight(w, exp);
    return f;
}

FactoredRat FactoredRat::from_opaque(const std::string& symbol, long long exp) {
    if (symbol.empty()) throw std::invalid_argument("empty opaque symbol");
    FactoredRat f = one();
    if (exp != 0) f.opaques_[symbol] = exp;
    return f;
}

void FactoredRat::mul_weight(const WeightForm& w, long long exp) {
    if (exp == 0) return;
    SplitForm s = canonical_split(w);
    Rat scale = 1;
    for (long long i = 0; i < (exp > 0 ? exp : -exp); ++i) scale *= s.scale;
    if (exp < 0) scale = Rat(1) / scale;
    scalar_ *= scale;
    auto it = factors_.find(s.rep);
    if (it == factors_.end()) {
        factors_.emplace(s.rep, exp);
    } else {
        it->second += exp;
        if (it->second == 0) factors_.erase(it);
    }
}

FactoredRat FactoredRat::operator*(const FactoredRat& o) const {
    if (is_zero() || o.is_zero()) return zero();
    FactoredRat out = *this;
    out.scalar_ *= o.scalar_;
    for (const auto& [rep, e] : o.factors_) {
        auto it = out.factors_.find(rep);
        if (it == out.factors_.end()) {
            out.factors_.emplace(rep, e);
        } else {
            it->second += e;
            if (it->second == 0) out.factors_.erase(it);
        }
    }
    for (const auto& [sym, e] : o.opaques_) {
        auto it = out.opaques_.find(sym);
        if (it == out.opaques_.end()) {
            out.opaques_.emplace(sym, e);
        } else {
            it->second += e;
            if (it->second == 0) out.opaques_.erase(it);
        }
    }
    return out;
}

FactoredRat FactoredRat::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    FactoredRat out;
    out.scalar_ = Rat(1) / scalar_;
    for (const auto& [rep, e] : factors_) out.factors_.emplace(rep, -e);
    for (const auto& [sym, e] : opaques_) out.opaques_.emplace(sym, -e);
    return out;
}

FactoredRat FactoredRat::pow(long long e) const {
    if (e == 0) return one();
    if (is_zero()) {
        if (e < 0) throw std::domain_error("inverse of zero");
        return zero();
    }
    FactoredRat base = e > 0 ? *this : inverse();
    long long n = e > 0 ? e : -e;
    FactoredRat out = one();
    for (long long i = 0; i < n; ++i) out *= base;
    return out;
}

long long FactoredRat::u_valuation() const {
    if (is_zero()) throw std::domain_error("u-valuation of zero is undefined");
    long long v = 0;
    for (const auto& [rep, e] : factors_)
        if (rep.pure_u()) v += e;
    return v;
}

LimitU0 FactoredRat::limit_u0() const {
    if (is_zero()) return {LimitU0::Kind::Value, zero()};
    long long v = u_valuation();
    if (v > 0) return {LimitU0::Kind::Zero, zero()};
    if (v < 0) return {LimitU0::Kind::Pole, zero()};
    FactoredRat out = from_scalar(scalar_);
    for (const auto& [rep, e] : factors_) {
        if (rep.pure_u()) continue;  // net exponent zero after merging
        out.mul_weight(WeightForm{rep.lam, rat_of(0)}, e);
    }
    for (const auto& [sym, e] : opaques_) out.opaques_[sym] = e;
    return {LimitU0::Kind::Value, out};
}

Rat FactoredRat::eval(const Rat& lam0, const Rat& u0) const {
    if (!opaques_.empty()) throw std::domain_error("cannot evaluate opaque symbols");
    Rat v = scalar_;
    for (const auto& [rep, e] : factors_) {
        Rat x = rep.eval(lam0, u0);
        if (x == 0) {
            if (e < 0) throw std::domain_error("evaluation point is a pole");
            return Rat(0);
        }
        for (long long i = 0; i < (e > 0 ? e : -e); ++i) {
            if (e > 0)
                v *= x;
            else
                v /= x;
        }
    }
    return v;
}

std::string FactoredRat::str() const {
    if (is_zero()) return "0";
    std::string out = rat_str(scalar_);
    for (const auto& [rep, e] : factors_) {
        out += " * (" + rep.str() + ")^" + std::to_string(e);
    }
    for (const auto& [sym, e] : opaques_) {
        out += " * {" + sym + "}^" + std::to_string(e);
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw std::invalid_argument("expected '" + std::string(1, c) + "' in factored form");
    }
    std::string_view until(char stop) {
        skip_ws();
        size_t start = i;
        while (i < s.size() && s[i] != stop) ++i;
        return s.substr(start, i - start);
    }
    std::string_view token() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '*' && s[i] != '(' &&
               s[i] != '{')
            ++i;
        return s.substr(start, i - start);
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

long long parse_exponent(Cursor& c) {
    c.expect('^');
    std::string_view tok = c.token();
    try {
        return std::stoll(std::string(tok));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in factored form");
    }
}

}  // namespace

FactoredRat FactoredRat::parse(std::string_view text) {
    Cursor c{text};
    std::string_view head = c.token();
    if (head.empty()) throw std::invalid_argument("empty factored form");
    Rat scalar = rat_parse(head);
    FactoredRat out = from_scalar(scalar);
    while (!c.done()) {
        c.expect('*');
        c.skip_ws();
        if (c.eat('(')) {
            std::string_view body = c.until(')');
            c.expect(')');
            auto plus = body.find("*L+");
            if (plus == std::string_view::npos) throw std::invalid_argument("bad weight form: " + std::string(body));
            Rat a = rat_parse(body.substr(0, plus));
            std::string_view rest = body.substr(plus + 3);
            auto ustar = rest.find("*U");
            if (ustar == std::string_view::npos) throw std::invalid_argument("bad weight form: " + std::string(body));
            Rat b = rat_parse(rest.substr(0, ustar));
            long long e = parse_exponent(c);
            if (!out.is_zero()) out.mul_weight(WeightForm{a, b}, e);
        } else if (c.eat('{')) {
            std::string sym{c.until('}')};
            c.expect('}');
            long long e = parse_exponent(c);
            out *= from_opaque(sym, e);
        } else {
            throw std::invalid_argument("unexpected token in factored form");
        }
    }
    return out;
}

FactoredRat operator*(const Rat& c, const FactoredRat& f) { return FactoredRat::from_scalar(c) * f; }

}  // namespace orbiflop
