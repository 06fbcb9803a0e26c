// Degeneration-formula bookkeeping: splittings of three-point types along
// the cut divisor, gluing multiplicities, and the symbolic comparison of the
// two flop sides.
#pragma once

#include "orbiflop/graphs.hpp"

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

namespace orbiflop {

struct GlobalInsertion {
    enum class Kind { TwistedP, TwistedQ, Untwisted } kind = Kind::Untwisted;
    long long alpha = 0;  // sector index for the twisted kinds
    std::string label;    // symbol for untwisted classes

    bool operator==(const GlobalInsertion&) const = default;
};

struct ThreePointType {
    long long gamma_coeff = 0;    // coefficient of the exceptional-curve class
    bool off_exceptional = true;  // class has a component away from the curve
    std::array<GlobalInsertion, 3> ins;
};

struct PlusComponent {
    long long gamma_degree = 0;
    std::vector<int> contacts;   // indices into SplitTriple::contacts
    std::vector<int> abs_marks;  // indices into the three insertions
    bool operator==(const PlusComponent&) const = default;
};

struct MinusComponent {
    std::vector<int> contacts;
    std::vector<int> abs_marks;
    bool operator==(const MinusComponent&) const = default;
};

struct SplitTriple {
    std::vector<RelInsertion> contacts;  // the shared relative data T
    std::vector<PlusComponent> plus;
    std::vector<MinusComponent> minus;
    bool operator==(const SplitTriple&) const = default;
};

struct DegenOptions {
    // Contact points are interchangeable for Aut(T) only when both the
    // sector and the multiplicity agree; the looser sector-only convention
    // is kept behind this switch.
    bool aut_identical_pairs_only = true;
};

Rat c_eta(const SplitTriple& t, const DegenOptions& opt = {});

// Reassembles the global type and validates connectivity and the pairing.
ThreePointType glue(const SplitTriple& t, const ThreePointType& original);

struct DegenBounds {
    long long max_contacts = 2;
    long long max_ell_int = 1;
    long long max_edge_degree = 2;
    long long max_plus_components = 2;
};

std::vector<SplitTriple> enumerate_splittings(const ThreePointType& type, const ModelCatalog& cat,
                                              const DegenBounds& bounds);

// Declared basis rank of each divisor sector locus, used for the formal
// dual-basis sums.
long long sector_basis_rank(RelTarget t);

struct SplitRow {
    SplitTriple eta;
    Rat c;
    std::vector<std::string> cases;  // classification of each component datum
    std::vector<std::string> lhs;    // canonical term lists
    std::vector<std::string> rhs;
    bool equal = false;
};

struct DegenReport {
    std::vector<SplitRow> rows;
    bool total_equal = false;
};

DegenReport compare_flop_sum(const ThreePointType& type, const ModelCatalog& cat_s, const DegenBounds& bounds,
                             const DegenOptions& opt = {});

nlohmann::json splitting_to_json(const SplitTriple& t);
nlohmann::json report_to_json(const DegenReport& r);
ThreePointType type_from_json(const nlohmann::json& j);
nlohmann::json type_to_json(const ThreePointType& t);

}  // namespace orbiflop
