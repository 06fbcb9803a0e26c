// Virtual dimension ledger, admissibility, and the classification of
// relative data into the three admissible cases.
#pragma once

#include "orbiflop/model.hpp"

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace orbiflop {

enum class RelTarget { X, Y, S, ZPlus, ZMinus, SmoothZ };

std::string to_string(RelTarget);
RelTarget rel_target_from_string(const std::string&);

struct AbsInsertion {
    bool twisted = false;
    long long alpha = 0;       // sector index in [1, r) when twisted
    long long form_degree = 0; // complex degree of the inserted class

    static AbsInsertion untwisted(long long form_degree = 0) { return {false, 0, form_degree}; }
    static AbsInsertion sector(long long alpha) { return {true, alpha, 0}; }
    bool operator==(const AbsInsertion&) const = default;
};

struct RelInsertion {
    RelTarget target = RelTarget::SmoothZ;
    long long alpha = 0;
    Rat ell;  // tangency multiplicity, > 0

    // Validates the (target, alpha, ell) consistency for the given order r.
    static RelInsertion make(RelTarget target, long long alpha, Rat ell, long long r);
    bool operator==(const RelInsertion&) const = default;
};

struct RelDatum {
    long long gamma_degree = 0;  // coefficient of the exceptional-curve class
    std::vector<AbsInsertion> abs;
    std::vector<RelInsertion> rel;
    std::vector<long long> rel_form_degrees;  // degrees of the divisor-side classes

    bool operator==(const RelDatum&) const = default;
};

// (r+2) * sum of tangency multiplicities.
Rat chern_pairing(const RelDatum& d, long long r);

// Contribution of an absolute marked point to the dimension ledger.
Rat u_contrib(const AbsInsertion& a, long long r);

// Contribution of a relative marked point; mu_x / mu_y are the chart
// constants of the two divisor points.
Rat v_contrib(const RelInsertion& x, long long r, const Rat& mu_x, const Rat& mu_y);

// Degree shifting of the sector carried by an insertion (closed forms).
Rat abs_iota(const AbsInsertion& a, long long r);
Rat rel_iota(const RelInsertion& x, long long r, const Rat& mu_x, const Rat& mu_y);

// Complex virtual dimension, computed both through the per-insertion ledger
// and through the general dimension formula with chart-derived shifts; the
// two must agree exactly.
Rat virtual_dim_complex(const RelDatum& d, const ModelCatalog& cat);

struct NValues {
    Rat n;
    long long n_prime;
};
NValues n_values(const RelDatum& d, const ModelCatalog& cat);

// Complex dimension of the divisor sector locus met by a relative insertion.
long long sector_locus_dim(RelTarget t);

enum class AdmCase { Case1, Case2, Case3, Inadmissible };
std::string to_string(AdmCase);

struct Classification {
    AdmCase kind = AdmCase::Inadmissible;
    std::vector<std::string> violations;  // structural facts that failed to hold
};

// Requires the standing assumption: absolute form degrees zero, at most
// three absolute insertions.  Throws std::invalid_argument otherwise.
Classification classify(const RelDatum& d, const ModelCatalog& cat);

struct EnumeratedDatum {
    RelDatum datum;
    Classification cls;
};

// Exhaustive enumeration of admissible data within bounds, classified, in a
// deterministic order.
std::vector<EnumeratedDatum> enumerate_admissible(const ModelCatalog& cat, long long max_ell_int,
                                                  long long max_abs);

// CLI-facing JSON: {"r":..,"a":..,"side":..,"gamma":..,"abs":[..],"rel":[..]}
nlohmann::json datum_to_json(const RelDatum& d, const ModelId& id);
std::pair<ModelId, RelDatum> datum_from_json(const nlohmann::json& j);

}  // namespace orbiflop
