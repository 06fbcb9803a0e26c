#include "orbiflop/degen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace orbiflop {

namespace {

std::string contact_key(const RelInsertion& x) {
    return to_string(x.target) + "," + std::to_string(x.alpha) + "," + rat_str(x.ell);
}

std::string sector_key(const RelInsertion& x) { return to_string(x.target) + "," + std::to_string(x.alpha); }

}  // namespace

Rat c_eta(const SplitTriple& t, const DegenOptions& opt) {
    std::map<std::string, long long> groups;
    for (const auto& x : t.contacts) ++groups[opt.aut_identical_pairs_only ? contact_key(x) : sector_key(x)];
    Rat aut = 1;
    for (const auto& [key, n] : groups)
        for (long long i = 2; i <= n; ++i) aut *= rat_of(i);
    Rat prod = 1;
    for (const auto& x : t.contacts) prod *= x.ell;
    return aut * prod;
}

ThreePointType glue(const SplitTriple& t, const ThreePointType& original) {
    const size_t n = t.contacts.size();
    std::vector<int> plus_owner(n, -1), minus_owner(n, -1);
    for (size_t c = 0; c < t.plus.size(); ++c)
        for (int idx : t.plus[c].contacts) {
            if (idx < 0 || static_cast<size_t>(idx) >= n || plus_owner[static_cast<size_t>(idx)] != -1)
                throw std::invalid_argument("contact pairing is not a bijection on the resolution side");
            plus_owner[static_cast<size_t>(idx)] = static_cast<int>(c);
        }
    for (size_t c = 0; c < t.minus.size(); ++c)
        for (int idx : t.minus[c].contacts) {
            if (idx < 0 || static_cast<size_t>(idx) >= n || minus_owner[static_cast<size_t>(idx)] != -1)
                throw std::invalid_argument("contact pairing is not a bijection on the far side");
            minus_owner[static_cast<size_t>(idx)] = static_cast<int>(c);
        }
    for (size_t i = 0; i < n; ++i)
        if (plus_owner[i] < 0 || minus_owner[i] < 0)
            throw std::invalid_argument("unpaired contact point");

    // Connected and simply connected after gluing was requested.
    const size_t nodes = t.plus.size() + t.minus.size();
    if (nodes == 0) throw std::invalid_argument("empty splitting");
    std::vector<int> parent(nodes);
    for (size_t i = 0; i < nodes; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
    };
    size_t merges = 0;
    for (size_t i = 0; i < n; ++i) {
        int a = plus_owner[i];
        int b = static_cast<int>(t.plus.size()) + minus_owner[i];
        int ra = find(a), rb = find(b);
        if (ra == rb) throw std::invalid_argument("glued type has positive genus");
        parent[static_cast<size_t>(ra)] = rb;
        ++merges;
    }
    if (merges != nodes - 1) throw std::invalid_argument("glued type is disconnected");

    std::set<int> marks;
    long long gamma = 0;
    for (const auto& c : t.plus) {
        gamma += c.gamma_degree;
        for (int mk : c.abs_marks) marks.insert(mk);
    }
    for (const auto& c : t.minus)
        for (int mk : c.abs_marks) marks.insert(mk);
    if (marks != std::set<int>{0, 1, 2}) throw std::invalid_argument("insertions are not distributed once each");
    if (gamma != original.gamma_coeff)
        throw std::invalid_argument("exceptional-curve degree does not glue back to the global class");
    return original;
}

long long sector_basis_rank(RelTarget t) {
    switch (t) {
        case RelTarget::X:
        case RelTarget::Y:
        case RelTarget::ZPlus:
        case RelTarget::ZMinus:
            return 1;
        case RelTarget::S:
            return 2;
        case RelTarget::SmoothZ:
            return 3;
    }
    throw std::logic_error("bad relative target");
}

namespace {

std::string serialize_splitting(const SplitTriple& t) {
    // Content-canonical form: contacts are identified by their data, the
    // component structure by sorted blocks.
    std::vector<std::string> plus, minus;
    for (const auto& c : t.plus) {
        std::ostringstream os;
        os << "P(g" << c.gamma_degree;
        std::vector<std::string> cs;
        for (int idx : c.contacts) cs.push_back(contact_key(t.contacts[static_cast<size_t>(idx)]));
        std::sort(cs.begin(), cs.end());
        for (const auto& s : cs) os << ";" << s;
        std::vector<int> mk = c.abs_marks;
        std::sort(mk.begin(), mk.end());
        for (int m : mk) os << ";m" << m;
        os << ")";
        plus.push_back(os.str());
    }
    for (const auto& c : t.minus) {
        std::ostringstream os;
        os << "M(";
        std::vector<std::string> cs;
        for (int idx : c.contacts) cs.push_back(contact_key(t.contacts[static_cast<size_t>(idx)]));
        std::sort(cs.begin(), cs.end());
        for (const auto& s : cs) os << ";" << s;
        std::vector<int> mk = c.abs_marks;
        std::sort(mk.begin(), mk.end());
        for (int m : mk) os << ";m" << m;
        os << ")";
        minus.push_back(os.str());
    }
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    std::string out;
    for (const auto& s : plus) out += s;
    for (const auto& s : minus) out += s;
    return out;
}

std::vector<RelInsertion> contact_candidates(const ModelCatalog& cat, const DegenBounds& bounds) {
    const long long r = cat.id().r;
    std::vector<RelInsertion> out;
    auto add = [&](RelTarget t, long long alpha, const Rat& ell, long long m) {
        Rat dd = ell * rat_of(m);
        if (!rat_is_integer(dd) || rat_to_ll(dd) < 1 || rat_to_ll(dd) > bounds.max_edge_degree) return;
        out.push_back(RelInsertion::make(t, alpha, ell, r));
    };
    for (long long fl = 0; fl <= bounds.max_ell_int; ++fl) {
        Rat base = rat_of(fl);
        for (long long alpha = 1; alpha < r * r; ++alpha) {
            if (alpha % r == 0) continue;
            add(RelTarget::X, alpha, base + Rat(BigInt(alpha), BigInt(r) * r), r * r);
            add(RelTarget::Y, alpha, base + Rat(BigInt(alpha), BigInt(r) * r), r * r);
        }
        for (long long alpha = 1; alpha < r; ++alpha) {
            add(RelTarget::S, alpha, base + Rat(BigInt(alpha), BigInt(r)), r * r);
            add(RelTarget::ZPlus, alpha, base + Rat(BigInt(alpha), BigInt(r)), r);
            add(RelTarget::ZMinus, alpha, base + Rat(BigInt(alpha), BigInt(r)), r);
        }
        if (fl >= 1) add(RelTarget::SmoothZ, 0, base, r);
    }
    return out;
}

}  // namespace

std::vector<SplitTriple> enumerate_splittings(const ThreePointType& type, const ModelCatalog& cat,
                                              const DegenBounds& bounds) {
    if (!type.off_exceptional)
        throw std::invalid_argument(
            "class is a multiple of the exceptional curve; the comparison is stated away from it");

    std::vector<int> twisted, untwisted;
    for (int i = 0; i < 3; ++i) {
        if (type.ins[static_cast<size_t>(i)].kind == GlobalInsertion::Kind::Untwisted)
            untwisted.push_back(i);
        else
            twisted.push_back(i);
    }

    std::vector<SplitTriple> out;
    std::set<std::string> seen;
    auto emit = [&](SplitTriple&& t) {
        std::string key = serialize_splitting(t);
        if (seen.insert(key).second) out.push_back(std::move(t));
    };

    // The whole curve on the far side: possible only with no twisted marks
    // and no exceptional degree.
    if (twisted.empty() && type.gamma_coeff == 0) {
        SplitTriple t;
        t.minus.push_back(MinusComponent{{}, {0, 1, 2}});
        emit(std::move(t));
    }

    std::vector<RelInsertion> cand = contact_candidates(cat, bounds);

    // Contact multisets of size 1..max_contacts.
    std::vector<std::vector<RelInsertion>> contact_sets;
    std::vector<RelInsertion> cur;
    std::function<void(size_t)> dfs = [&](size_t from) {
        if (!cur.empty()) contact_sets.push_back(cur);
        if (cur.size() == static_cast<size_t>(bounds.max_contacts)) return;
        for (size_t i = from; i < cand.size(); ++i) {
            cur.push_back(cand[i]);
            dfs(i);
            cur.pop_back();
        }
    };
    dfs(0);

    for (const auto& contacts : contact_sets) {
        const int n = static_cast<int>(contacts.size());
        for (int n_plus = 1; n_plus <= bounds.max_plus_components && n_plus <= n; ++n_plus) {
            const int n_minus = n - n_plus + 1;
            // Assign each contact to a resolution-side component.
            std::vector<int> plus_of(static_cast<size_t>(n), 0);
            while (true) {
                bool surjective = true;
                for (int c = 0; c < n_plus; ++c)
                    if (std::count(plus_of.begin(), plus_of.end(), c) == 0) surjective = false;
                if (surjective) {
                    // Assign each contact to a far-side component.
                    std::vector<int> minus_of(static_cast<size_t>(n), 0);
                    while (true) {
                        bool msurj = true;
                        for (int c = 0; c < n_minus; ++c)
                            if (std::count(minus_of.begin(), minus_of.end(), c) == 0) msurj = false;
                        if (msurj) {
                            // Exceptional degrees over the plus components.
                            std::vector<long long> gam(static_cast<size_t>(n_plus), 0);
                            std::function<void(int, long long)> gam_rec = [&](int pos, long long left) {
                                if (pos == n_plus) {
                                    if (left != 0) return;
                                    // Twisted marks go to plus components; untwisted to either side.
                                    const size_t n_tw = twisted.size(), n_un = untwisted.size();
                                    std::vector<int> tw_at(n_tw, 0), un_at(n_un, 0);
                                    while (true) {
                                        SplitTriple t;
                                        t.contacts = contacts;
                                        t.plus.resize(static_cast<size_t>(n_plus));
                                        t.minus.resize(static_cast<size_t>(n_minus));
                                        for (int i = 0; i < n_plus; ++i)
                                            t.plus[static_cast<size_t>(i)].gamma_degree = gam[static_cast<size_t>(i)];
                                        for (int i = 0; i < n; ++i) {
                                            t.plus[static_cast<size_t>(plus_of[static_cast<size_t>(i)])].contacts.push_back(i);
                                            t.minus[static_cast<size_t>(minus_of[static_cast<size_t>(i)])].contacts.push_back(i);
                                        }
                                        for (size_t i = 0; i < n_tw; ++i)
                                            t.plus[static_cast<size_t>(tw_at[i])].abs_marks.push_back(twisted[i]);
                                        for (size_t i = 0; i < n_un; ++i) {
                                            int at = un_at[i];
                                            if (at < n_plus)
                                                t.plus[static_cast<size_t>(at)].abs_marks.push_back(untwisted[i]);
                                            else
                                                t.minus[static_cast<size_t>(at - n_plus)].abs_marks.push_back(untwisted[i]);
                                        }
                                        try {
                                            glue(t, type);
                                            emit(std::move(t));
                                        } catch (const std::invalid_argument&) {
                                            // rejected structure (cycle or disconnection)
                                        }
                                        size_t pos2 = 0;
                                        while (pos2 < n_tw) {
                                            if (++tw_at[pos2] < n_plus) break;
                                            tw_at[pos2] = 0;
                                            ++pos2;
                                        }
                                        if (pos2 < n_tw) continue;
                                        size_t pos3 = 0;
                                        while (pos3 < n_un) {
                                            if (++un_at[pos3] < n_plus + n_minus) break;
                                            un_at[pos3] = 0;
                                            ++pos3;
                                        }
                                        if (pos3 == n_un) break;
                                    }
                                    return;
                                }
                                for (long long g = 0; g <= left; ++g) {
                                    gam[static_cast<size_t>(pos)] = g;
                                    gam_rec(pos + 1, left - g);
                                }
                            };
                            gam_rec(0, type.gamma_coeff);
                        }
                        size_t pos = 0;
                        while (pos < static_cast<size_t>(n)) {
                            if (++minus_of[pos] < n_minus) break;
                            minus_of[pos] = 0;
                            ++pos;
                        }
                        if (pos == static_cast<size_t>(n)) break;
                    }
                }
                size_t pos = 0;
                while (pos < static_cast<size_t>(n)) {
                    if (++plus_of[pos] < n_plus) break;
                    plus_of[pos] = 0;
                    ++pos;
                }
                if (pos == static_cast<size_t>(n)) break;
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const SplitTriple& a, const SplitTriple& b) {
        return serialize_splitting(a) < serialize_splitting(b);
    });
    return out;
}

namespace {

RelDatum component_datum(const SplitTriple& t, const PlusComponent& c, const ThreePointType& type) {
    RelDatum d;
    d.gamma_degree = c.gamma_degree;
    for (int mk : c.abs_marks) {
        const GlobalInsertion& gi = type.ins[static_cast<size_t>(mk)];
        if (gi.kind == GlobalInsertion::Kind::Untwisted)
            d.abs.push_back(AbsInsertion::untwisted());
        else
            d.abs.push_back(AbsInsertion::sector(gi.alpha));
    }
    for (int idx : c.contacts) d.rel.push_back(t.contacts[static_cast<size_t>(idx)]);
    return d;
}

// Formal sum of canonical factored terms; equality is term-multiset equality.
using FormalSum = std::vector<FactoredRat>;

FormalSum local_factor(const ModelCatalog& cat, const RelDatum& d, long long bound) {
    FormalSum terms;
    for (const auto& g : survivors(cat, d, bound)) {
        FactoredRat c = graph_contribution(cat, g);
        auto lim = c.limit_u0();
        if (lim.kind != LimitU0::Kind::Value)
            throw std::logic_error("survivor contribution has nonzero u-order");
        terms.push_back(lim.value);
    }
    return terms;
}

FormalSum product(const FormalSum& a, const FormalSum& b) {
    FormalSum out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

std::vector<std::string> render(const FormalSum& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (const auto& t : s) out.push_back(t.str());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

DegenReport compare_flop_sum(const ThreePointType& type, const ModelCatalog& cat_s, const DegenBounds& bounds,
                             const DegenOptions& opt) {
    if (!type.off_exceptional)
        throw std::invalid_argument(
            "class is a multiple of the exceptional curve: every localization term with the curve class "
            "has positive u-order, so the comparison is stated away from these classes");

    ModelCatalog cat_sf(cat_s.id().flopped());
    DegenReport report;
    std::vector<std::string> total_lhs, total_rhs;

    for (const auto& eta : enumerate_splittings(type, cat_s, bounds)) {
        SplitRow row;
        row.eta = eta;
        row.c = c_eta(eta, opt);

        // Basis-index tuples for the dual-class sums over the contacts.
        std::vector<long long> ranks;
        for (const auto& x : eta.contacts) ranks.push_back(sector_basis_rank(x.target));
        std::vector<long long> index(eta.contacts.size(), 0);

        FormalSum lhs_total, rhs_total;
        FormalSum lhs_plus{FactoredRat::from_scalar(row.c)};
        FormalSum rhs_plus{FactoredRat::from_scalar(row.c)};
        for (const auto& comp : eta.plus) {
            RelDatum d = component_datum(eta, comp, type);
            Classification cls = classify(d, cat_s);
            row.cases.push_back(to_string(cls.kind));
            FormalSum ls, rs;
            if (cls.kind != AdmCase::Inadmissible) {
                ls = local_factor(cat_s, d, bounds.max_edge_degree);
                // The flop sends the exceptional class to its negative, so a
                // component with positive exceptional degree transports to an
                // empty moduli problem on the other side.
                rs = comp.gamma_degree > 0 ? FormalSum{}
                                           : local_factor(cat_sf, d, bounds.max_edge_degree);
            }
            lhs_plus = product(lhs_plus, ls);
            rhs_plus = product(rhs_plus, rs);
        }

        if (!lhs_plus.empty() || !rhs_plus.empty()) {
            while (true) {
                FactoredRat tag = FactoredRat::one();
                for (size_t c = 0; c < index.size(); ++c)
                    tag *= FactoredRat::from_opaque("bI(" + std::to_string(c) + ";" + std::to_string(index[c]) + ")");
                for (size_t mcomp = 0; mcomp < eta.minus.size(); ++mcomp) {
                    const auto& mc = eta.minus[mcomp];
                    std::string key = "Ym(";
                    std::vector<std::string> parts;
                    for (int idx : mc.contacts)
                        parts.push_back(contact_key(eta.contacts[static_cast<size_t>(idx)]) + "#" +
                                        std::to_string(index[static_cast<size_t>(idx)]));
                    for (int mk : mc.abs_marks) {
                        const GlobalInsertion& gi = type.ins[static_cast<size_t>(mk)];
                        parts.push_back("a" + std::to_string(mk) + ":" + gi.label);
                    }
                    std::sort(parts.begin(), parts.end());
                    for (const auto& p : parts) key += p + ";";
                    key += ")";
                    tag *= FactoredRat::from_opaque(key);
                }
                for (const auto& term : lhs_plus) lhs_total.push_back(term * tag);
                for (const auto& term : rhs_plus) rhs_total.push_back(term * tag);
                size_t pos = 0;
                while (pos < index.size()) {
                    if (++index[pos] < ranks[pos]) break;
                    index[pos] = 0;
                    ++pos;
                }
                if (pos == index.size()) break;
            }
        }

        row.lhs = render(lhs_total);
        row.rhs = render(rhs_total);
        row.equal = row.lhs == row.rhs;
        total_lhs.insert(total_lhs.end(), row.lhs.begin(), row.lhs.end());
        total_rhs.insert(total_rhs.end(), row.rhs.begin(), row.rhs.end());
        report.rows.push_back(std::move(row));
    }

    std::sort(total_lhs.begin(), total_lhs.end());
    std::sort(total_rhs.begin(), total_rhs.end());
    report.total_equal = total_lhs == total_rhs;
    return report;
}

nlohmann::json splitting_to_json(const SplitTriple& t) {
    nlohmann::json j;
    nlohmann::json contacts = nlohmann::json::array();
    for (const auto& x : t.contacts)
        contacts.push_back({{"target", to_string(x.target)}, {"alpha", x.alpha}, {"ell", rat_str(x.ell)}});
    j["contacts"] = contacts;
    nlohmann::json plus = nlohmann::json::array();
    for (const auto& c : t.plus)
        plus.push_back({{"gamma", c.gamma_degree}, {"contacts", c.contacts}, {"marks", c.abs_marks}});
    j["plus"] = plus;
    nlohmann::json minus = nlohmann::json::array();
    for (const auto& c : t.minus) minus.push_back({{"contacts", c.contacts}, {"marks", c.abs_marks}});
    j["minus"] = minus;
    return j;
}

nlohmann::json report_to_json(const DegenReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"eta", splitting_to_json(row.eta)},
                        {"C_eta", rat_str(row.c)},
                        {"case", row.cases},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"equal", row.equal}});
    }
    return nlohmann::json{{"rows", rows}, {"total_equal", r.total_equal}};
}

ThreePointType type_from_json(const nlohmann::json& j) {
    ThreePointType t;
    t.gamma_coeff = j.value("gamma", 0LL);
    t.off_exceptional = j.value("off", true);
    const auto& ins = j.at("ins");
    if (!ins.is_array() || ins.size() != 3) throw std::invalid_argument("a three-point type needs three insertions");
    for (size_t i = 0; i < 3; ++i) {
        const auto& e = ins[i];
        std::string kind = e.at("kind").get<std::string>();
        GlobalInsertion gi;
        if (kind == "p") {
            gi.kind = GlobalInsertion::Kind::TwistedP;
            gi.alpha = e.at("alpha").get<long long>();
        } else if (kind == "q") {
            gi.kind = GlobalInsertion::Kind::TwistedQ;
            gi.alpha = e.at("alpha").get<long long>();
        } else if (kind == "untwisted") {
            gi.kind = GlobalInsertion::Kind::Untwisted;
            gi.label = e.value("label", "A" + std::to_string(i));
        } else {
            throw std::invalid_argument("unknown insertion kind: " + kind);
        }
        t.ins[i] = gi;
    }
    return t;
}

nlohmann::json type_to_json(const ThreePointType& t) {
    nlohmann::json ins = nlohmann::json::array();
    for (const auto& gi : t.ins) {
        switch (gi.kind) {
            case GlobalInsertion::Kind::TwistedP: ins.push_back({{"kind", "p"}, {"alpha", gi.alpha}}); break;
            case GlobalInsertion::Kind::TwistedQ: ins.push_back({{"kind", "q"}, {"alpha", gi.alpha}}); break;
            case GlobalInsertion::Kind::Untwisted: ins.push_back({{"kind", "untwisted"}, {"label", gi.label}}); break;
        }
    }
    return nlohmann::json{{"gamma", t.gamma_coeff}, {"off", t.off_exceptional}, {"ins", ins}};
}

}  // namespace orbiflop
