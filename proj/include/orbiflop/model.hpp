// Geometry catalog for the local models: fixed points with chart actions and
// tangent weights, invariant curves with end data, and the flop map.
#pragma once

#include "orbiflop/factored.hpp"
#include "orbiflop/orbact.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orbiflop {

enum class Side { S, SF };
enum class PointId { P, Q, X, Y, ZPlus, ZMinus };
enum class CurveId { Gamma, Lpy, Lqx, Lpz, Lqz };

std::string to_string(Side);
std::string to_string(PointId);
std::string to_string(CurveId);
Side side_from_string(const std::string&);
PointId point_from_string(const std::string&);
CurveId curve_from_string(const std::string&);

struct ModelId {
    long long r = 1;
    long long a = 0;  // residue in [1, r) coprime to r; 0 only when r == 1
    Side side = Side::S;
    bool compactified = true;

    static ModelId make(long long r, long long a, Side side, bool compactified = true);
    ModelId flopped() const;
    bool operator==(const ModelId&) const = default;
};

struct TangentDir {
    WeightForm weight;     // uniformized chart weight
    long long character;   // residue in the chart group
};

struct FixedPointRec {
    PointId id;
    long long stabilizer = 1;
    CyclicAction chart;                  // chart group acting on the three directions
    std::array<TangentDir, 3> tangent;
    Rat mu;                              // chart constant, nonzero only at X and Y
};

struct CurveEnd {
    PointId point;
    int tangent_dir;                 // index into FixedPointRec::tangent
    std::array<int, 2> normal_dirs;  // paired with the other end in order
};

struct CurveRec {
    CurveId id;
    CurveEnd end0, end1;
};

struct SingularStratumRec {
    CyclicAction normal_action;  // (z, w) rotated by the same character
};

class ModelCatalog {
  public:
    explicit ModelCatalog(ModelId id);

    const ModelId& id() const { return id_; }
    const FixedPointRec& point(PointId p) const;
    const CurveRec& curve(CurveId c) const;
    std::vector<FixedPointRec> fixed_points() const;   // deterministic order
    std::vector<CurveRec> invariant_curves() const;
    const SingularStratumRec& stratum() const { return stratum_; }

    Rat mu_x() const;
    Rat mu_y() const;

    // Degree shifting of the chart action at pt for sector index k.
    Rat sector_shifting_at(PointId pt, long long k) const;

    // End data convenience.
    WeightForm tangent_weight(const CurveEnd& e) const;
    long long tangent_character(const CurveEnd& e) const;
    WeightForm normal_weight(const CurveEnd& e, int which) const;
    long long normal_character(const CurveEnd& e, int which) const;

    nlohmann::json to_json() const;

  private:
    ModelId id_;
    std::map<PointId, FixedPointRec> points_;
    std::map<CurveId, CurveRec> curves_;
    SingularStratumRec stratum_;

    void check_consistency() const;
};

struct FlopCorrespondence {
    ModelId image;
    CurveId map_curve(CurveId c) const;
    PointId map_point(PointId p) const { return p; }
    int class_sign(CurveId c) const { return c == CurveId::Gamma ? -1 : 1; }
};

FlopCorrespondence flop(const ModelId& m);

}  // namespace orbiflop
