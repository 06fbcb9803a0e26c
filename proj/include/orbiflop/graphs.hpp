// Torus-fixed-locus graphs for the relative local models: enumeration up to
// isomorphism, equivariant Euler factors, u-order analysis, and transport
// across the flop.
#pragma once

#include "orbiflop/dimension.hpp"
#include "orbiflop/football.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orbiflop {

struct GraphEdge {
    CurveId line;
    long long d;         // coarse degree over the line
    int rel_index = -1;  // relative insertion carried at the divisor end
    bool operator==(const GraphEdge&) const = default;
};

struct PoleRef {
    int edge;
    int end;  // 0 = end0 of the curve record, 1 = end1
    bool operator==(const PoleRef&) const = default;
};

struct GraphVertex {
    PointId point;
    bool ghost = false;
    std::vector<PoleRef> poles;
    std::vector<int> marks;  // indices into the datum's absolute insertions
    bool operator==(const GraphVertex&) const = default;
};

struct LocGraph {
    RelDatum datum;
    std::vector<GraphEdge> edges;
    std::vector<GraphVertex> vertices;
    Rat aut_order = Rat(1);  // graph automorphisms times covering automorphisms
    bool operator==(const LocGraph& o) const {
        return datum == o.datum && edges == o.edges && vertices == o.vertices;
    }
};

// Cover data of one edge pole.
struct PoleInfo {
    PointId point;
    long long m;         // target isotropy order
    long long k;         // source isotropy order
    long long monodromy; // group element at the pole, as a residue in Z_m
    WeightForm src_tangent;
};

LineCover line_cover(const ModelCatalog& cat, CurveId line, long long d);
PoleInfo pole_info(const ModelCatalog& cat, const GraphEdge& e, int end);

// Euler factor e(H^1)/e(H^0) of the pulled-back tangent and normal data on
// one edge; the single zero-weight reparametrization section is dropped.
FactoredRat edge_factor(const ModelCatalog& cat, const GraphEdge& e);

// Flag spaces, ghost corrections, and the moduli opaque of one vertex.
FactoredRat vertex_factor(const ModelCatalog& cat, const LocGraph& g, int vertex_index);

// Full contribution: edges, vertices, insertion-class opaques, 1/|Aut|.
FactoredRat graph_contribution(const ModelCatalog& cat, const LocGraph& g);

// All fixed-locus graphs realizing the datum, with edge degrees bounded,
// deduplicated up to isomorphism, in a deterministic order.
std::vector<LocGraph> enumerate_graphs(const ModelCatalog& cat, const RelDatum& d, long long max_edge_degree);

// Graphs whose contribution has u-valuation zero.  Checks that every
// survivor lies on the two lines shared by the flop sides.
std::vector<LocGraph> survivors(const ModelCatalog& cat, const RelDatum& d, long long max_edge_degree);

struct FlopMatch {
    LocGraph image;
    bool equal;
};

// Transport of a survivor graph to the flopped model; the precondition is
// that every edge lies on Lpy or Lqx.
FlopMatch flop_match(const ModelCatalog& cat, const LocGraph& g);

nlohmann::json graph_to_json(const ModelCatalog& cat, const LocGraph& g);

struct GraphRow {
    LocGraph graph;
    FactoredRat contribution;
    long long u_valuation;
    bool survivor;
};

std::vector<GraphRow> contribution_report(const ModelCatalog& cat, const RelDatum& d, long long max_edge_degree,
                                          int jobs = 1);

}  // namespace orbiflop
