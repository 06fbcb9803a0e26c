#include "orbiflop/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace orbiflop {

namespace {

const CurveEnd& curve_end(const CurveRec& rec, int end) { return end == 0 ? rec.end0 : rec.end1; }

LineEndData line_end_data(const ModelCatalog& cat, const CurveRec& rec, int end) {
    const CurveEnd& ce = curve_end(rec, end);
    return LineEndData{cat.point(ce.point).stabilizer, cat.tangent_weight(ce), cat.tangent_character(ce)};
}

bool divisor_point(PointId p) { return p != PointId::P && p != PointId::Q; }

}  // namespace

LineCover line_cover(const ModelCatalog& cat, CurveId line, long long d) {
    const CurveRec& rec = cat.curve(line);
    return make_cover(line_end_data(cat, rec, 0), line_end_data(cat, rec, 1), d);
}

PoleInfo pole_info(const ModelCatalog& cat, const GraphEdge& e, int end) {
    const CurveRec& rec = cat.curve(e.line);
    LineCover cover = line_cover(cat, e.line, e.d);
    const CoverEnd& ce = end == 0 ? cover.covA : cover.covB;
    const LineEndData& le = end == 0 ? cover.endA : cover.endB;
    return PoleInfo{curve_end(rec, end).point, le.m, ce.k, ce.monodromy, ce.src_tangent};
}

FactoredRat edge_factor(const ModelCatalog& cat, const GraphEdge& e) {
    const CurveRec& rec = cat.curve(e.line);
    LineCover cover = line_cover(cat, e.line, e.d);
    FactoredRat num = FactoredRat::one(), den = FactoredRat::one();
    int zero_sections = 0;
    auto apply = [&](const SummandEnds& s, bool tangent_line) {
        for (const WeightForm& w : h0_weights(cover, s)) {
            if (w.is_zero()) {
                if (!tangent_line)
                    throw std::logic_error("zero weight outside the reparametrization section");
                ++zero_sections;
                continue;
            }
            den *= FactoredRat::from_weight(w);
        }
        for (const WeightForm& w : h1_weights(cover, s)) {
            if (w.is_zero()) throw std::logic_error("zero weight in an obstruction space");
            num *= FactoredRat::from_weight(w);
        }
    };
    apply(tangent_summand(cover), true);
    for (int j = 0; j < 2; ++j) {
        SummandEnds s{cat.normal_weight(rec.end0, j), cat.normal_character(rec.end0, j),
                      cat.normal_weight(rec.end1, j), cat.normal_character(rec.end1, j)};
        apply(s, false);
    }
    if (zero_sections != 1) throw std::logic_error("expected exactly one reparametrization section");
    return num * den.inverse();
}

FactoredRat vertex_factor(const ModelCatalog& cat, const LocGraph& g, int vertex_index) {
    const GraphVertex& v = g.vertices[static_cast<size_t>(vertex_index)];
    const FixedPointRec& pt = cat.point(v.point);
    const long long m = pt.stabilizer;

    std::vector<long long> flag_monodromies;
    std::vector<long long> sectors;  // special-point sectors seen from the component
    for (const PoleRef& p : v.poles) {
        PoleInfo info = pole_info(cat, g.edges[static_cast<size_t>(p.edge)], p.end);
        flag_monodromies.push_back(info.monodromy);
        sectors.push_back(mod_residue(-info.monodromy, m));
    }
    for (int mi : v.marks) {
        const AbsInsertion& a = g.datum.abs[static_cast<size_t>(mi)];
        sectors.push_back(a.twisted ? mod_residue(a.alpha, m) : 0);
    }

    FactoredRat out = FactoredRat::one();
    if (!v.ghost) {
        if (v.poles.size() == 2) {
            long long j = flag_monodromies[0];
            for (const TangentDir& dir : pt.tangent)
                if (mod_residue(j * dir.character, m) == 0) out *= FactoredRat::from_weight(dir.weight);
        }
        return out;
    }

    // Contracted component: flag spaces, then section/obstruction counts of
    // the pulled-back tangent directions from the twist data.
    for (long long j : flag_monodromies)
        for (const TangentDir& dir : pt.tangent)
            if (mod_residue(j * dir.character, m) == 0) out *= FactoredRat::from_weight(dir.weight);
    for (const TangentDir& dir : pt.tangent) {
        Rat theta_sum = 0;
        bool all_trivial = true;
        for (long long s : sectors) {
            long long t = mod_residue(s * dir.character, m);
            if (t != 0) all_trivial = false;
            theta_sum += Rat(BigInt(t), BigInt(m));
        }
        if (all_trivial) {
            out *= FactoredRat::from_weight(dir.weight).inverse();
        } else {
            if (!rat_is_integer(theta_sum) || theta_sum < 1)
                throw std::logic_error("ghost twist data is inconsistent");
            long long h1 = rat_to_ll(theta_sum) - 1;
            if (h1 > 0) out *= FactoredRat::from_weight(dir.weight, h1);
        }
    }
    std::vector<long long> sorted = sectors;
    std::sort(sorted.begin(), sorted.end());
    std::string sym = "DM(" + to_string(v.point);
    for (long long s : sorted) sym += ";" + std::to_string(s);
    sym += ")";
    out *= FactoredRat::from_opaque(sym);
    return out;
}

FactoredRat graph_contribution(const ModelCatalog& cat, const LocGraph& g) {
    FactoredRat out = FactoredRat::from_scalar(Rat(1) / g.aut_order);
    for (const auto& e : g.edges) out *= edge_factor(cat, e);
    for (size_t vi = 0; vi < g.vertices.size(); ++vi) out *= vertex_factor(cat, g, static_cast<int>(vi));
    for (size_t j = 0; j < g.datum.rel.size(); ++j) {
        const RelInsertion& x = g.datum.rel[j];
        out *= FactoredRat::from_opaque("beta" + std::to_string(j) + "(" + to_string(x.target) + "," +
                                        std::to_string(x.alpha) + ")");
    }
    return out;
}

namespace {

// Candidate edges realizing one relative insertion: the divisor endpoint,
// the line through it, and the coarse degree are pinned by (target, ell).
std::vector<GraphEdge> rel_candidates(const ModelCatalog& cat, const RelDatum& datum, int rel_index,
                                      long long bound) {
    const RelInsertion& x = datum.rel[static_cast<size_t>(rel_index)];
    const long long r = cat.id().r;
    std::vector<GraphEdge> out;
    auto push = [&](CurveId line, long long m) {
        Rat dd = x.ell * rat_of(m);
        if (!rat_is_integer(dd)) return;
        long long d = rat_to_ll(dd);
        if (d < 1 || d > bound) return;
        GraphEdge e{line, d, rel_index};
        // The divisor-end monodromy must realize the recorded sector.
        long long j = pole_info(cat, e, 1).monodromy;
        long long want = 0;
        switch (x.target) {
            case RelTarget::X:
            case RelTarget::Y: want = x.alpha; break;
            case RelTarget::S: want = mod_residue(r * x.alpha, r * r); break;
            case RelTarget::ZPlus:
            case RelTarget::ZMinus: want = x.alpha; break;
            case RelTarget::SmoothZ: want = 0; break;
        }
        if (j != want) throw std::logic_error("edge monodromy does not realize the contact sector");
        out.push_back(e);
    };
    const bool s_side = cat.id().side == Side::S;
    switch (x.target) {
        case RelTarget::X: push(CurveId::Lqx, r * r); break;
        case RelTarget::Y: push(CurveId::Lpy, r * r); break;
        case RelTarget::ZPlus: push(s_side ? CurveId::Lqz : CurveId::Lpz, r); break;
        case RelTarget::ZMinus: push(s_side ? CurveId::Lpz : CurveId::Lqz, r); break;
        case RelTarget::S:
            push(CurveId::Lqx, r * r);
            push(CurveId::Lpy, r * r);
            break;
        case RelTarget::SmoothZ:
            push(CurveId::Lqx, r * r);
            push(CurveId::Lpy, r * r);
            push(CurveId::Lqz, r);
            push(CurveId::Lpz, r);
            break;
    }
    return out;
}

void all_partitions(size_t n, const std::function<void(const std::vector<std::vector<int>>&)>& cb) {
    std::vector<std::vector<int>> blocks;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            cb(blocks);
            return;
        }
        for (auto& b : blocks) {
            b.push_back(static_cast<int>(i));
            rec(i + 1);
            b.pop_back();
        }
        blocks.push_back({static_cast<int>(i)});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

struct BlockCheckContext {
    const ModelCatalog& cat;
    const RelDatum& datum;
    const std::vector<GraphEdge>& edges;
};

std::optional<GraphVertex> make_block_vertex(const BlockCheckContext& ctx, PointId pt,
                                             const std::vector<PoleRef>& poles, const std::vector<int>& marks) {
    const long long m = ctx.cat.point(pt).stabilizer;
    std::vector<PoleInfo> infos;
    infos.reserve(poles.size());
    for (const PoleRef& p : poles) infos.push_back(pole_info(ctx.cat, ctx.edges[static_cast<size_t>(p.edge)], p.end));

    auto mark_sector = [&](int mi) {
        const AbsInsertion& a = ctx.datum.abs[static_cast<size_t>(mi)];
        return a.twisted ? mod_residue(a.alpha, m) : 0;
    };

    GraphVertex v{pt, false, poles, marks};
    if (poles.size() == 1 && marks.empty()) {
        if (infos[0].k != 1) return std::nullopt;  // bare orbifold point is not allowed
        return v;
    }
    if (poles.size() == 1 && marks.size() == 1) {
        if (infos[0].monodromy == mark_sector(marks[0])) return v;
        return std::nullopt;
    }
    if (poles.size() == 2 && marks.empty()) {
        if (mod_residue(infos[0].monodromy + infos[1].monodromy, m) == 0) return v;
        return std::nullopt;
    }
    if (poles.size() + marks.size() < 3) return std::nullopt;
    long long total = 0;
    for (const PoleInfo& info : infos) total += mod_residue(-info.monodromy, m);
    for (int mi : marks) total += mark_sector(mi);
    if (mod_residue(total, m) != 0) return std::nullopt;
    v.ghost = true;
    return v;
}

bool is_tree(size_t n_vertices, const std::vector<std::pair<int, int>>& links) {
    if (n_vertices == 0) return false;
    if (links.size() != n_vertices - 1) return false;
    std::vector<int> parent(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
    size_t merges = 0;
    for (const auto& [a, b] : links) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<size_t>(ra)] = rb;
        ++merges;
    }
    return merges == n_vertices - 1;
}

std::string serialize_graph(const LocGraph& g) {
    std::ostringstream os;
    for (const auto& e : g.edges)
        os << "E(" << to_string(e.line) << "," << e.d << "," << e.rel_index << ")";
    std::vector<std::string> vs;
    for (const auto& v : g.vertices) {
        std::ostringstream vo;
        vo << "V(" << to_string(v.point) << (v.ghost ? ",ghost" : ",point");
        std::vector<std::pair<int, int>> poles;
        for (const auto& p : v.poles) poles.emplace_back(p.edge, p.end);
        std::sort(poles.begin(), poles.end());
        for (const auto& [e, end] : poles) vo << ",p" << e << ":" << end;
        std::vector<int> marks = v.marks;
        std::sort(marks.begin(), marks.end());
        for (int mk : marks) vo << ",m" << mk;
        vo << ")";
        vs.push_back(vo.str());
    }
    std::sort(vs.begin(), vs.end());
    for (const auto& s : vs) os << s;
    return os.str();
}

}  // namespace

std::vector<LocGraph> enumerate_graphs(const ModelCatalog& cat, const RelDatum& datum,
                                       long long max_edge_degree) {
    const long long r = cat.id().r;
    for (const auto& a : datum.abs)
        if (a.twisted && (a.alpha <= 0 || a.alpha >= r))
            throw std::invalid_argument("absolute sector index out of range");
    if (!cat.id().compactified && !datum.rel.empty())
        throw std::invalid_argument("relative insertions require the compactified model");

    std::vector<LocGraph> out;
    std::set<std::string> seen;
    auto emit = [&](LocGraph&& g) {
        std::string key = serialize_graph(g);
        if (seen.insert(key).second) out.push_back(std::move(g));
    };

    // Contracted-to-a-point realizations exist only for class zero.
    if (datum.rel.empty() && datum.gamma_degree == 0) {
        if (datum.abs.size() >= 3) {
            for (PointId pt : {PointId::P, PointId::Q}) {
                std::vector<int> marks(datum.abs.size());
                for (size_t i = 0; i < marks.size(); ++i) marks[i] = static_cast<int>(i);
                long long total = 0;
                for (const auto& a : datum.abs) total += a.twisted ? mod_residue(a.alpha, r) : 0;
                if (mod_residue(total, r) != 0) continue;
                LocGraph g;
                g.datum = datum;
                g.vertices.push_back(GraphVertex{pt, true, {}, marks});
                emit(std::move(g));
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const LocGraph& a, const LocGraph& b) { return serialize_graph(a) < serialize_graph(b); });
        return out;
    }

    if (datum.gamma_degree > max_edge_degree) return out;

    std::vector<std::vector<GraphEdge>> cands;
    for (size_t i = 0; i < datum.rel.size(); ++i) {
        cands.push_back(rel_candidates(cat, datum, static_cast<int>(i), max_edge_degree));
        if (cands.back().empty()) return out;
    }

    std::vector<size_t> pick(cands.size(), 0);
    while (true) {
        std::vector<GraphEdge> edges;
        if (datum.gamma_degree > 0) edges.push_back(GraphEdge{CurveId::Gamma, datum.gamma_degree, -1});
        for (size_t i = 0; i < cands.size(); ++i) edges.push_back(cands[i][pick[i]]);

        std::vector<PoleRef> poles_p, poles_q;
        std::vector<std::pair<PoleRef, PointId>> divisor_poles;
        for (size_t ei = 0; ei < edges.size(); ++ei) {
            const CurveRec& rec = cat.curve(edges[ei].line);
            for (int end = 0; end < 2; ++end) {
                PointId pt = curve_end(rec, end).point;
                PoleRef ref{static_cast<int>(ei), end};
                if (pt == PointId::P)
                    poles_p.push_back(ref);
                else if (pt == PointId::Q)
                    poles_q.push_back(ref);
                else
                    divisor_poles.emplace_back(ref, pt);
            }
        }

        BlockCheckContext ctx{cat, datum, edges};
        all_partitions(poles_p.size(), [&](const std::vector<std::vector<int>>& part_p) {
            all_partitions(poles_q.size(), [&](const std::vector<std::vector<int>>& part_q) {
                struct Block {
                    PointId pt;
                    std::vector<PoleRef> poles;
                };
                std::vector<Block> blocks;
                for (const auto& b : part_p) {
                    Block blk{PointId::P, {}};
                    for (int i : b) blk.poles.push_back(poles_p[static_cast<size_t>(i)]);
                    blocks.push_back(blk);
                }
                for (const auto& b : part_q) {
                    Block blk{PointId::Q, {}};
                    for (int i : b) blk.poles.push_back(poles_q[static_cast<size_t>(i)]);
                    blocks.push_back(blk);
                }
                const size_t n_marks = datum.abs.size();
                if (!blocks.empty() || n_marks == 0) {
                    std::vector<size_t> assign(n_marks, 0);
                    while (true) {
                        if (n_marks > 0 && blocks.empty()) break;
                        std::vector<std::vector<int>> marks_of(blocks.size());
                        for (size_t mi = 0; mi < n_marks; ++mi)
                            marks_of[assign[mi]].push_back(static_cast<int>(mi));
                        std::vector<GraphVertex> vertices;
                        bool ok = true;
                        for (size_t bi = 0; bi < blocks.size() && ok; ++bi) {
                            auto v = make_block_vertex(ctx, blocks[bi].pt, blocks[bi].poles, marks_of[bi]);
                            if (!v) {
                                ok = false;
                                break;
                            }
                            vertices.push_back(std::move(*v));
                        }
                        if (ok) {
                            for (const auto& [ref, pt] : divisor_poles)
                                vertices.push_back(GraphVertex{pt, false, {ref}, {}});
                            std::map<std::pair<int, int>, int> owner;
                            for (size_t vi = 0; vi < vertices.size(); ++vi)
                                for (const auto& p : vertices[vi].poles)
                                    owner[{p.edge, p.end}] = static_cast<int>(vi);
                            std::vector<std::pair<int, int>> links;
                            for (size_t ei = 0; ei < edges.size(); ++ei)
                                links.emplace_back(owner.at({static_cast<int>(ei), 0}),
                                                   owner.at({static_cast<int>(ei), 1}));
                            if (is_tree(vertices.size(), links)) {
                                LocGraph g;
                                g.datum = datum;
                                g.edges = edges;
                                g.vertices = std::move(vertices);
                                Rat aut = 1;
                                for (const auto& e : g.edges) aut *= rat_of(e.d);
                                g.aut_order = aut;
                                emit(std::move(g));
                            }
                        }
                        // next mark assignment
                        size_t pos = 0;
                        while (pos < n_marks) {
                            if (++assign[pos] < blocks.size()) break;
                            assign[pos] = 0;
                            ++pos;
                        }
                        if (pos == n_marks || n_marks == 0) break;
                    }
                }
            });
        });

        size_t pos = 0;
        while (pos < cands.size()) {
            if (++pick[pos] < cands[pos].size()) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == cands.size()) break;
    }

    std::sort(out.begin(), out.end(),
              [](const LocGraph& a, const LocGraph& b) { return serialize_graph(a) < serialize_graph(b); });
    return out;
}

std::vector<LocGraph> survivors(const ModelCatalog& cat, const RelDatum& d, long long max_edge_degree) {
    std::vector<LocGraph> out;
    for (auto& g : enumerate_graphs(cat, d, max_edge_degree)) {
        FactoredRat c = graph_contribution(cat, g);
        if (c.is_zero() || c.u_valuation() != 0) continue;
        // With at least one contact, nontrivial terms are confined to the
        // two lines shared by the flop sides; anything else is a weight bug.
        if (!d.rel.empty())
            for (const auto& e : g.edges)
                if (e.line != CurveId::Lpy && e.line != CurveId::Lqx)
                    throw std::logic_error("survivor uses an edge outside the shared lines");
        out.push_back(std::move(g));
    }
    return out;
}

FlopMatch flop_match(const ModelCatalog& cat, const LocGraph& g) {
    for (const auto& e : g.edges)
        if (e.line != CurveId::Lpy && e.line != CurveId::Lqx)
            throw std::invalid_argument("flop transport is defined for survivors only");
    FlopCorrespondence corr = flop(cat.id());
    ModelCatalog image_cat(corr.image);
    LocGraph image = g;
    for (auto& e : image.edges) e.line = corr.map_curve(e.line);
    for (auto& v : image.vertices) v.point = corr.map_point(v.point);
    FactoredRat lhs = graph_contribution(cat, g);
    FactoredRat rhs = graph_contribution(image_cat, image);
    return FlopMatch{std::move(image), lhs == rhs};
}

nlohmann::json graph_to_json(const ModelCatalog& cat, const LocGraph& g) {
    nlohmann::json j;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges) {
        PoleInfo a = pole_info(cat, e, 0), b = pole_info(cat, e, 1);
        nlohmann::json je{{"curve", to_string(e.line)}, {"d", e.d}, {"orb", a.k > 1 || b.k > 1}};
        if (e.rel_index >= 0) je["rel"] = e.rel_index;
        edges.push_back(je);
    }
    j["edges"] = edges;
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : g.vertices) {
        nlohmann::json jv{{"pt", to_string(v.point)}, {"ghost", v.ghost}};
        nlohmann::json flags = nlohmann::json::array();
        for (const auto& p : v.poles) {
            PoleInfo info = pole_info(cat, g.edges[static_cast<size_t>(p.edge)], p.end);
            flags.push_back({{"edge", p.edge}, {"sector", info.monodromy}});
        }
        jv["flags"] = flags;
        jv["marks"] = v.marks;
        vertices.push_back(jv);
    }
    j["vertices"] = vertices;
    return j;
}

std::vector<GraphRow> contribution_report(const ModelCatalog& cat, const RelDatum& d, long long max_edge_degree,
                                          int jobs) {
    std::vector<LocGraph> graphs = enumerate_graphs(cat, d, max_edge_degree);
    std::vector<GraphRow> rows(graphs.size());
    auto work = [&](size_t begin, size_t step) {
        for (size_t i = begin; i < graphs.size(); i += step) {
            FactoredRat c = graph_contribution(cat, graphs[i]);
            long long v = c.is_zero() ? 0 : c.u_valuation();
            bool surv = !c.is_zero() && v == 0;
            rows[i] = GraphRow{graphs[i], std::move(c), v, surv};
        }
    };
    if (jobs <= 1 || graphs.size() < 2) {
        work(0, 1);
    } else {
        size_t n = std::min<size_t>(static_cast<size_t>(jobs), graphs.size());
        std::vector<std::thread> pool;
        for (size_t t = 0; t < n; ++t) pool.emplace_back(work, t, n);
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace orbiflop
