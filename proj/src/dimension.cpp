#include "orbiflop/dimension.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbiflop {

std::string to_string(RelTarget t) {
    switch (t) {
        case RelTarget::X: return "X";
        case RelTarget::Y: return "Y";
        case RelTarget::S: return "S";
        case RelTarget::ZPlus: return "Z+";
        case RelTarget::ZMinus: return "Z-";
        case RelTarget::SmoothZ: return "smooth";
    }
    throw std::logic_error("bad relative target");
}

RelTarget rel_target_from_string(const std::string& s) {
    for (RelTarget t : {RelTarget::X, RelTarget::Y, RelTarget::S, RelTarget::ZPlus, RelTarget::ZMinus,
                        RelTarget::SmoothZ})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown relative target: " + s);
}

std::string to_string(AdmCase c) {
    switch (c) {
        case AdmCase::Case1: return "case1";
        case AdmCase::Case2: return "case2";
        case AdmCase::Case3: return "case3";
        case AdmCase::Inadmissible: return "inadmissible";
    }
    throw std::logic_error("bad case");
}

RelInsertion RelInsertion::make(RelTarget target, long long alpha, Rat ell, long long r) {
    if (ell <= 0) throw std::invalid_argument("tangency multiplicity must be positive");
    long long group = 0;
    switch (target) {
        case RelTarget::X:
        case RelTarget::Y:
            group = r * r;
            if (alpha <= 0 || alpha >= group || alpha % r == 0)
                throw std::invalid_argument("sector index at a divisor point must avoid the stratum subgroup");
            break;
        case RelTarget::S:
        case RelTarget::ZPlus:
        case RelTarget::ZMinus:
            group = r;
            if (alpha <= 0 || alpha >= group)
                throw std::invalid_argument("sector index out of range for the divisor stratum");
            break;
        case RelTarget::SmoothZ:
            if (alpha != 0) throw std::invalid_argument("untwisted relative point must have alpha = 0");
            if (!rat_is_integer(ell)) throw std::invalid_argument("untwisted tangency must be an integer");
            return RelInsertion{target, 0, std::move(ell)};
    }
    Rat expect = target == RelTarget::S ? Rat(BigInt(alpha), BigInt(r)) : Rat(BigInt(alpha), BigInt(group));
    if (target == RelTarget::ZPlus || target == RelTarget::ZMinus) expect = Rat(BigInt(alpha), BigInt(r));
    if (rat_frac(ell) != expect)
        throw std::invalid_argument("tangency multiplicity inconsistent with the sector index");
    return RelInsertion{target, alpha, std::move(ell)};
}

Rat chern_pairing(const RelDatum& d, long long r) {
    Rat total = 0;
    for (const auto& x : d.rel) total += x.ell;
    return total * rat_of(r + 2);
}

Rat u_contrib(const AbsInsertion& a, long long r) {
    if (!a.twisted) return Rat(1);
    if (a.alpha <= 0 || a.alpha >= r) throw std::invalid_argument("absolute sector index out of range");
    return Rat(BigInt(-a.alpha), BigInt(r));
}

Rat abs_iota(const AbsInsertion& a, long long r) {
    if (!a.twisted) return Rat(0);
    return Rat(1) + Rat(BigInt(a.alpha), BigInt(r));
}

Rat rel_iota(const RelInsertion& x, long long r, const Rat& mu_x, const Rat& mu_y) {
    const Rat ar2 = Rat(BigInt(x.alpha), BigInt(r) * r);
    const Rat ar = Rat(BigInt(x.alpha), BigInt(r));
    switch (x.target) {
        case RelTarget::X:
        case RelTarget::Y: {
            const Rat& mu = x.target == RelTarget::X ? mu_x : mu_y;
            return ar2 + rat_frac(ar2 + rat_frac(mu * rat_of(x.alpha))) + rat_frac(ar);
        }
        case RelTarget::S:
            return rat_frac(ar) * 2;
        case RelTarget::ZPlus:
        case RelTarget::ZMinus:
            return Rat(1) + ar;
        case RelTarget::SmoothZ:
            return Rat(0);
    }
    throw std::logic_error("bad relative target");
}

Rat v_contrib(const RelInsertion& x, long long r, const Rat& mu_x, const Rat& mu_y) {
    const Rat floor_ell = Rat(rat_floor(x.ell));
    switch (x.target) {
        case RelTarget::X:
        case RelTarget::Y: {
            Rat iota = rel_iota(x, r, mu_x, mu_y);
            Rat v = rat_of(r + 2) * x.ell + 1 - floor_ell - iota;
            // v = (r+1)[ell] + n - frac(alpha*mu) with n a positive integer.
            const Rat& mu = x.target == RelTarget::X ? mu_x : mu_y;
            Rat n = v - rat_of(r + 1) * floor_ell + rat_frac(mu * rat_of(x.alpha));
            if (!rat_is_integer(n) || n < 1)
                throw std::logic_error("divisor-point contribution failed the integrality bound");
            return v;
        }
        case RelTarget::S:
            return rat_of(r + 1) * floor_ell + rat_of(x.alpha) + 1;
        case RelTarget::ZPlus:
        case RelTarget::ZMinus:
            return rat_of(r + 1) * floor_ell + rat_of(x.alpha) + Rat(BigInt(x.alpha), BigInt(r));
        case RelTarget::SmoothZ:
            return rat_of(r + 1) * x.ell + 1;
    }
    throw std::logic_error("bad relative target");
}

namespace {

Rat chart_rel_iota(const RelInsertion& x, const ModelCatalog& cat) {
    switch (x.target) {
        case RelTarget::X: return degree_shifting(cat.point(PointId::X).chart, x.alpha);
        case RelTarget::Y: return degree_shifting(cat.point(PointId::Y).chart, x.alpha);
        case RelTarget::S: return degree_shifting(cat.stratum().normal_action, x.alpha);
        case RelTarget::ZPlus: return degree_shifting(cat.point(PointId::ZPlus).chart, x.alpha);
        case RelTarget::ZMinus: return degree_shifting(cat.point(PointId::ZMinus).chart, x.alpha);
        case RelTarget::SmoothZ: return Rat(0);
    }
    throw std::logic_error("bad relative target");
}

}  // namespace

Rat virtual_dim_complex(const RelDatum& d, const ModelCatalog& cat) {
    const long long r = cat.id().r;
    Rat ledger = 0;
    for (const auto& a : d.abs) ledger += u_contrib(a, r);
    for (const auto& x : d.rel) ledger += v_contrib(x, r, cat.mu_x(), cat.mu_y());

    // General form: c1(A) + sum(1 - iota(h_i)) + sum(1 - iota(g_j) - [ell_j]),
    // with every shift read off the chart actions of the catalog.
    Rat general = chern_pairing(d, r);
    for (const auto& a : d.abs) general += Rat(1) - abs_iota(a, r);
    for (const auto& x : d.rel) general += Rat(1) - chart_rel_iota(x, cat) - Rat(rat_floor(x.ell));

    if (ledger != general)
        throw std::logic_error("dimension ledger disagrees with the chart-action formula");
    return ledger;
}

long long sector_locus_dim(RelTarget t) {
    switch (t) {
        case RelTarget::X:
        case RelTarget::Y:
        case RelTarget::ZPlus:
        case RelTarget::ZMinus:
            return 0;
        case RelTarget::S:
            return 1;
        case RelTarget::SmoothZ:
            return 2;
    }
    throw std::logic_error("bad relative target");
}

NValues n_values(const RelDatum& d, const ModelCatalog& cat) {
    Rat n = virtual_dim_complex(d, cat);
    for (const auto& a : d.abs) n -= rat_of(a.form_degree);
    long long np = 0;
    for (const auto& x : d.rel) np += sector_locus_dim(x.target);
    return NValues{n, np};
}

Classification classify(const RelDatum& d, const ModelCatalog& cat) {
    for (const auto& a : d.abs)
        if (a.form_degree != 0)
            throw std::invalid_argument("classification requires degree-zero absolute insertions");
    if (d.abs.size() > 3) throw std::invalid_argument("classification requires at most three absolute insertions");

    const long long r = cat.id().r;
    NValues nv = n_values(d, cat);
    Classification out;
    if (nv.n > Rat(nv.n_prime)) {
        out.kind = AdmCase::Inadmissible;
        return out;
    }

    Rat iota_sum = 0;
    for (const auto& a : d.abs) iota_sum += abs_iota(a, r);

    bool has_smooth = false, has_z = false;
    for (const auto& x : d.rel) {
        has_smooth |= x.target == RelTarget::SmoothZ;
        has_z |= x.target == RelTarget::ZPlus || x.target == RelTarget::ZMinus;
        if (x.ell > 1) out.violations.push_back("tangency multiplicity exceeds 1");
    }

    if (has_smooth) {
        out.kind = AdmCase::Case1;
        if (d.rel.size() != 1) out.violations.push_back("smooth contact is not the unique relative point");
        if (d.abs.size() != 3) out.violations.push_back("smooth contact without three absolute points");
        if (iota_sum != 5) out.violations.push_back("shifting sum differs from 5");
        if (r != 2) out.violations.push_back("smooth contact away from r = 2");
        if (nv.n != Rat(nv.n_prime)) out.violations.push_back("smooth contact with N < N'");
    } else if (has_z) {
        out.kind = AdmCase::Case2;
        for (const auto& x : d.rel) {
            if (x.target != RelTarget::ZPlus && x.target != RelTarget::ZMinus) continue;
            if (x.alpha != 1) out.violations.push_back("corner contact with sector index != 1");
            if (rat_floor(x.ell) != 0) out.violations.push_back("corner contact with integer tangency part");
        }
        Rat opt2 = Rat(3) + Rat(1, BigInt(r));
        Rat opt3 = Rat(4) + Rat(1, BigInt(r));
        bool ok = (d.abs.size() == 2 && iota_sum == opt2) || (d.abs.size() == 3 && iota_sum == opt3);
        if (!ok) out.violations.push_back("shifting sum does not match the corner-contact constraint");
    } else {
        out.kind = AdmCase::Case3;
        for (const auto& x : d.rel) {
            if (x.ell >= 1) out.violations.push_back("singular contact with multiplicity >= 1");
        }
    }
    return out;
}

namespace {

int target_rank(RelTarget t) { return static_cast<int>(t); }

bool rel_less(const RelInsertion& a, const RelInsertion& b) {
    if (a.target != b.target) return target_rank(a.target) < target_rank(b.target);
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.ell < b.ell;
}

bool abs_less(const AbsInsertion& a, const AbsInsertion& b) {
    if (a.twisted != b.twisted) return !a.twisted;
    return a.alpha < b.alpha;
}

bool datum_less(const RelDatum& a, const RelDatum& b) {
    if (a.rel.size() != b.rel.size()) return a.rel.size() < b.rel.size();
    for (size_t i = 0; i < a.rel.size(); ++i) {
        if (!(a.rel[i] == b.rel[i])) return rel_less(a.rel[i], b.rel[i]);
    }
    if (a.abs.size() != b.abs.size()) return a.abs.size() < b.abs.size();
    for (size_t i = 0; i < a.abs.size(); ++i) {
        if (!(a.abs[i] == b.abs[i])) return abs_less(a.abs[i], b.abs[i]);
    }
    return false;
}

}  // namespace

std::vector<EnumeratedDatum> enumerate_admissible(const ModelCatalog& cat, long long max_ell_int,
                                                  long long max_abs) {
    if (max_ell_int < 0 || max_abs < 0 || max_abs > 3)
        throw std::invalid_argument("enumeration bounds out of range");
    const long long r = cat.id().r;

    // Candidate relative insertions with their strictly positive N - N'
    // contributions; the budget is the most negative absolute total.
    std::vector<std::pair<RelInsertion, Rat>> cand;
    auto add = [&](RelTarget t, long long alpha, const Rat& ell) {
        RelInsertion x = RelInsertion::make(t, alpha, ell, r);
        Rat c = v_contrib(x, r, cat.mu_x(), cat.mu_y()) - rat_of(sector_locus_dim(t));
        if (c <= 0) throw std::logic_error("relative contribution to N - N' is not positive");
        cand.emplace_back(std::move(x), std::move(c));
    };
    for (long long fl = 0; fl <= max_ell_int; ++fl) {
        Rat base = rat_of(fl);
        for (long long alpha = 1; alpha < r * r; ++alpha) {
            if (alpha % r == 0) continue;
            add(RelTarget::X, alpha, base + Rat(BigInt(alpha), BigInt(r) * r));
            add(RelTarget::Y, alpha, base + Rat(BigInt(alpha), BigInt(r) * r));
        }
        for (long long alpha = 1; alpha < r; ++alpha) {
            add(RelTarget::S, alpha, base + Rat(BigInt(alpha), BigInt(r)));
            add(RelTarget::ZPlus, alpha, base + Rat(BigInt(alpha), BigInt(r)));
            add(RelTarget::ZMinus, alpha, base + Rat(BigInt(alpha), BigInt(r)));
        }
        if (fl >= 1) add(RelTarget::SmoothZ, 0, base);
    }
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return rel_less(a.first, b.first); });

    Rat budget = Rat(BigInt(max_abs) * (r - 1), BigInt(r));

    // All multisets of relative insertions with total contribution <= budget.
    std::vector<std::vector<RelInsertion>> rel_sets;
    std::vector<RelInsertion> current;
    auto dfs = [&](auto&& self, size_t from, Rat used) -> void {
        rel_sets.push_back(current);
        for (size_t i = from; i < cand.size(); ++i) {
            Rat next = used + cand[i].second;
            if (next > budget) continue;
            current.push_back(cand[i].first);
            self(self, i, next);
            current.pop_back();
        }
    };
    dfs(dfs, 0, Rat(0));

    // All absolute multisets of size <= max_abs (untwisted and sectors).
    std::vector<std::vector<AbsInsertion>> abs_sets;
    std::vector<AbsInsertion> abs_cand;
    abs_cand.push_back(AbsInsertion::untwisted());
    for (long long alpha = 1; alpha < r; ++alpha) abs_cand.push_back(AbsInsertion::sector(alpha));
    std::vector<AbsInsertion> abs_current;
    auto abs_dfs = [&](auto&& self, size_t from) -> void {
        abs_sets.push_back(abs_current);
        if (abs_current.size() == static_cast<size_t>(max_abs)) return;
        for (size_t i = from; i < abs_cand.size(); ++i) {
            abs_current.push_back(abs_cand[i]);
            self(self, i);
            abs_current.pop_back();
        }
    };
    abs_dfs(abs_dfs, 0);

    std::vector<EnumeratedDatum> out;
    for (const auto& rel : rel_sets) {
        for (const auto& abs : abs_sets) {
            RelDatum d;
            d.abs = abs;
            d.rel = rel;
            NValues nv = n_values(d, cat);
            if (nv.n > Rat(nv.n_prime)) continue;
            out.push_back(EnumeratedDatum{d, classify(d, cat)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const EnumeratedDatum& a, const EnumeratedDatum& b) { return datum_less(a.datum, b.datum); });
    return out;
}

nlohmann::json datum_to_json(const RelDatum& d, const ModelId& id) {
    nlohmann::json j;
    j["r"] = id.r;
    j["a"] = id.a;
    j["side"] = to_string(id.side);
    j["gamma"] = d.gamma_degree;
    nlohmann::json abs = nlohmann::json::array();
    for (const auto& a : d.abs) {
        if (a.twisted)
            abs.push_back(nlohmann::json{{"alpha", a.alpha}});
        else
            abs.push_back("untwisted");
    }
    j["abs"] = abs;
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& x : d.rel)
        rel.push_back(nlohmann::json{
            {"target", to_string(x.target)}, {"alpha", x.alpha}, {"ell", rat_str(x.ell)}});
    j["rel"] = rel;
    return j;
}

std::pair<ModelId, RelDatum> datum_from_json(const nlohmann::json& j) {
    long long r = j.at("r").get<long long>();
    long long a = j.at("a").get<long long>();
    Side side = j.contains("side") ? side_from_string(j.at("side").get<std::string>()) : Side::S;
    ModelId id = ModelId::make(r, a, side);
    RelDatum d;
    d.gamma_degree = j.value("gamma", 0LL);
    if (d.gamma_degree < 0) throw std::invalid_argument("gamma degree must be nonnegative");
    if (j.contains("abs")) {
        for (const auto& e : j.at("abs")) {
            if (e.is_string() && e.get<std::string>() == "untwisted") {
                d.abs.push_back(AbsInsertion::untwisted());
            } else if (e.is_object()) {
                long long alpha = e.at("alpha").get<long long>();
                if (alpha == 0)
                    d.abs.push_back(AbsInsertion::untwisted());
                else
                    d.abs.push_back(AbsInsertion::sector(alpha));
            } else {
                throw std::invalid_argument("bad absolute insertion entry");
            }
        }
    }
    if (j.contains("rel")) {
        for (const auto& e : j.at("rel")) {
            RelTarget t = rel_target_from_string(e.at("target").get<std::string>());
            long long alpha = e.value("alpha", 0LL);
            Rat ell = rat_parse(e.at("ell").get<std::string>());
            d.rel.push_back(RelInsertion::make(t, alpha, ell, r));
        }
    }
    for (const auto& ai : d.abs)
        if (ai.twisted && (ai.alpha <= 0 || ai.alpha >= r))
            throw std::invalid_argument("absolute sector index out of range");
    return {id, d};
}

}  // namespace orbiflop
