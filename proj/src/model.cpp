#include "orbiflop/model.hpp"

#include <stdexcept>

namespace orbiflop {

std::string to_string(Side s) { return s == Side::S ? "s" : "sf"; }

std::string to_string(PointId p) {
    switch (p) {
        case PointId::P: return "P";
        case PointId::Q: return "Q";
        case PointId::X: return "X";
        case PointId::Y: return "Y";
        case PointId::ZPlus: return "Z+";
        case PointId::ZMinus: return "Z-";
    }
    throw std::logic_error("bad point id");
}

std::string to_string(CurveId c) {
    switch (c) {
        case CurveId::Gamma: return "Gamma";
        case CurveId::Lpy: return "Lpy";
        case CurveId::Lqx: return "Lqx";
        case CurveId::Lpz: return "Lpz";
        case CurveId::Lqz: return "Lqz";
    }
    throw std::logic_error("bad curve id");
}

Side side_from_string(const std::string& s) {
    if (s == "s") return Side::S;
    if (s == "sf") return Side::SF;
    throw std::invalid_argument("unknown side: " + s);
}

PointId point_from_string(const std::string& s) {
    for (PointId p : {PointId::P, PointId::Q, PointId::X, PointId::Y, PointId::ZPlus, PointId::ZMinus})
        if (to_string(p) == s) return p;
    throw std::invalid_argument("unknown fixed point: " + s);
}

CurveId curve_from_string(const std::string& s) {
    for (CurveId c : {CurveId::Gamma, CurveId::Lpy, CurveId::Lqx, CurveId::Lpz, CurveId::Lqz})
        if (to_string(c) == s) return c;
    throw std::invalid_argument("unknown invariant curve: " + s);
}

ModelId ModelId::make(long long r, long long a, Side side, bool compactified) {
    if (r < 1) throw std::invalid_argument("order r must be >= 1");
    long long ar = mod_residue(a, r == 1 ? 1 : r);
    if (r == 1) {
        ar = 0;
    } else {
        if (ar == 0 || gcd_ll(ar, r) != 1) throw std::invalid_argument("a must be coprime to r");
    }
    return ModelId{r, ar, side, compactified};
}

ModelId ModelId::flopped() const {
    ModelId out = *this;
    out.side = side == Side::S ? Side::SF : Side::S;
    return out;
}

namespace {

constexpr int kTangent0 = 0;  // index conventions inside chart triples

FixedPointRec make_point(PointId id, long long stab, const std::vector<long long>& chars,
                         std::array<WeightForm, 3> weights, Rat mu = Rat(0)) {
    FixedPointRec rec;
    rec.id = id;
    rec.stabilizer = stab;
    rec.chart = make_action(stab, chars);
    for (int i = 0; i < 3; ++i) rec.tangent[i] = TangentDir{weights[i], rec.chart.weights[i]};
    rec.mu = mu;
    return rec;
}

}  // namespace

ModelCatalog::ModelCatalog(ModelId id) : id_(id) {
    const long long r = id_.r;
    const long long a = id_.a;
    const Rat rr = rat_of(r);

    // Charts along the exceptional curve.  At P the directions are
    // (curve coordinate, y, z); at Q they are (curve coordinate, z, x).
    points_.emplace(PointId::P,
                    make_point(PointId::P, r, {a, -a, 1},
                               {wf(rat_of(1), rat_of(0)), wf(rat_of(-1), rr), wf(rat_of(0), rat_of(1))}));
    points_.emplace(PointId::Q,
                    make_point(PointId::Q, r, {-a, 1, a},
                               {wf(rat_of(-1), rat_of(0)), wf(rat_of(0), rat_of(1)), wf(rat_of(1), rr)}));

    curves_.emplace(CurveId::Gamma, CurveRec{CurveId::Gamma,
                                             CurveEnd{PointId::P, kTangent0, {2, 1}},
                                             CurveEnd{PointId::Q, kTangent0, {1, 2}}});

    stratum_.normal_action = make_action(r, {1, 1});

    if (id_.compactified) {
        // Chart constants at the divisor points: a*cx = -1 and a*cy = +1 mod r.
        const long long cx = r == 1 ? 0 : mod_residue(-mod_inverse(a, r), r);
        const long long cy = r == 1 ? 0 : mod_inverse(a, r);
        const long long r2 = r * r;
        const Rat inv_r = Rat(1, BigInt(r));

        // Directions (z, t, w).
        points_.emplace(PointId::X,
                        make_point(PointId::X, r2, {1 + r * cx, r, 1},
                                   {wf(-inv_r, rat_of(0)), wf(rat_of(-1), rat_of(0)), wf(-inv_r, rat_of(-1))},
                                   Rat(BigInt(cx), BigInt(r))));
        points_.emplace(PointId::Y,
                        make_point(PointId::Y, r2, {1 + r * cy, r, 1},
                                   {wf(inv_r, rat_of(0)), wf(rat_of(1), rat_of(0)), wf(inv_r, rat_of(-1))},
                                   Rat(BigInt(cy), BigInt(r))));
        // Directions (x, y, w).
        for (PointId z : {PointId::ZPlus, PointId::ZMinus})
            points_.emplace(z, make_point(z, r, {-a, a, 1},
                                          {wf(rat_of(1), rat_of(0)), wf(rat_of(-1), rat_of(0)),
                                           wf(rat_of(0), rat_of(-1))}));

        const PointId pz_end = id_.side == Side::S ? PointId::ZMinus : PointId::ZPlus;
        const PointId qz_end = id_.side == Side::S ? PointId::ZPlus : PointId::ZMinus;

        curves_.emplace(CurveId::Lpy, CurveRec{CurveId::Lpy,
                                               CurveEnd{PointId::P, 1, {0, 2}},
                                               CurveEnd{PointId::Y, 2, {1, 0}}});
        curves_.emplace(CurveId::Lqx, CurveRec{CurveId::Lqx,
                                               CurveEnd{PointId::Q, 2, {0, 1}},
                                               CurveEnd{PointId::X, 2, {1, 0}}});
        curves_.emplace(CurveId::Lpz, CurveRec{CurveId::Lpz,
                                               CurveEnd{PointId::P, 2, {0, 1}},
                                               CurveEnd{pz_end, 2, {0, 1}}});
        curves_.emplace(CurveId::Lqz, CurveRec{CurveId::Lqz,
                                               CurveEnd{PointId::Q, 1, {0, 2}},
                                               CurveEnd{qz_end, 2, {1, 0}}});
    }

    check_consistency();
}

const FixedPointRec& ModelCatalog::point(PointId p) const {
    auto it = points_.find(p);
    if (it == points_.end())
        throw std::invalid_argument("fixed point " + to_string(p) + " requires the compactified model");
    return it->second;
}

const CurveRec& ModelCatalog::curve(CurveId c) const {
    auto it = curves_.find(c);
    if (it == curves_.end())
        throw std::invalid_argument("curve " + to_string(c) + " requires the compactified model");
    return it->second;
}

std::vector<FixedPointRec> ModelCatalog::fixed_points() const {
    std::vector<FixedPointRec> out;
    for (const auto& [id, rec] : points_) out.push_back(rec);
    return out;
}

std::vector<CurveRec> ModelCatalog::invariant_curves() const {
    std::vector<CurveRec> out;
    for (const auto& [id, rec] : curves_) out.push_back(rec);
    return out;
}

Rat ModelCatalog::mu_x() const { return id_.compactified ? point(PointId::X).mu : Rat(0); }
Rat ModelCatalog::mu_y() const { return id_.compactified ? point(PointId::Y).mu : Rat(0); }

Rat ModelCatalog::sector_shifting_at(PointId pt, long long k) const {
    return degree_shifting(point(pt).chart, k);
}

WeightForm ModelCatalog::tangent_weight(const CurveEnd& e) const {
    return point(e.point).tangent[static_cast<size_t>(e.tangent_dir)].weight;
}

long long ModelCatalog::tangent_character(const CurveEnd& e) const {
    return point(e.point).tangent[static_cast<size_t>(e.tangent_dir)].character;
}

WeightForm ModelCatalog::normal_weight(const CurveEnd& e, int which) const {
    return point(e.point).tangent[static_cast<size_t>(e.normal_dirs[static_cast<size_t>(which)])].weight;
}

long long ModelCatalog::normal_character(const CurveEnd& e, int which) const {
    return point(e.point).tangent[static_cast<size_t>(e.normal_dirs[static_cast<size_t>(which)])].character;
}

void ModelCatalog::check_consistency() const {
    for (const auto& [cid, rec] : curves_) {
        const auto& p0 = point(rec.end0.point);
        const auto& p1 = point(rec.end1.point);
        WeightForm t0 = tangent_weight(rec.end0) * rat_of(p0.stabilizer);
        WeightForm t1 = tangent_weight(rec.end1) * rat_of(p1.stabilizer);
        if (!(t0 + t1).is_zero())
            throw std::logic_error("tangent weights at the ends of " + to_string(cid) + " do not balance");
        for (int j = 0; j < 2; ++j) {
            WeightForm diff = normal_weight(rec.end0, j) - normal_weight(rec.end1, j);
            Rat ratio;
            if (!diff.is_zero() && !proportional_ratio(diff, t0, ratio))
                throw std::logic_error("normal summand " + std::to_string(j) + " of " + to_string(cid) +
                                       " is not a consistent line bundle");
        }
    }
}

nlohmann::json ModelCatalog::to_json() const {
    nlohmann::json j;
    j["r"] = id_.r;
    j["a"] = id_.a;
    j["side"] = to_string(id_.side);
    j["compactified"] = id_.compactified;
    nlohmann::json pts = nlohmann::json::object();
    for (const auto& [pid, rec] : points_) {
        nlohmann::json p;
        p["stabilizer"] = rec.stabilizer;
        p["chart_weights"] = rec.chart.weights;
        nlohmann::json dirs = nlohmann::json::array();
        for (const auto& d : rec.tangent)
            dirs.push_back({{"weight", FactoredRat::from_weight(d.weight).str()}, {"char", d.character}});
        p["tangent"] = dirs;
        if (rec.id == PointId::X || rec.id == PointId::Y) p["mu"] = rat_str(rec.mu);
        pts[to_string(pid)] = p;
    }
    j["points"] = pts;
    nlohmann::json crv = nlohmann::json::object();
    for (const auto& [cid, rec] : curves_) {
        nlohmann::json c;
        for (int e = 0; e < 2; ++e) {
            const CurveEnd& end = e == 0 ? rec.end0 : rec.end1;
            nlohmann::json je;
            je["point"] = to_string(end.point);
            je["order"] = point(end.point).stabilizer;
            je["tangent_weight"] = FactoredRat::from_weight(tangent_weight(end)).str();
            je["normal_weights"] = {FactoredRat::from_weight(normal_weight(end, 0)).str(),
                                    FactoredRat::from_weight(normal_weight(end, 1)).str()};
            c[e == 0 ? "end0" : "end1"] = je;
        }
        crv[to_string(cid)] = c;
    }
    j["curves"] = crv;
    j["stratum"] = {{"normal_weights", stratum_.normal_action.weights}, {"order", stratum_.normal_action.order}};
    return j;
}

CurveId FlopCorrespondence::map_curve(CurveId c) const {
    switch (c) {
        case CurveId::Lpz: return CurveId::Lqz;
        case CurveId::Lqz: return CurveId::Lpz;
        default: return c;
    }
}

FlopCorrespondence flop(const ModelId& m) { return FlopCorrespondence{m.flopped()}; }

}  // namespace orbiflop
