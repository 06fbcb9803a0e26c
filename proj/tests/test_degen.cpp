#include "orbiflop/degen.hpp"

#include <doctest.h>

using namespace orbiflop;

namespace {

ThreePointType small_type(long long r, std::array<long long, 3> alphas, long long gamma = 0) {
    ThreePointType t;
    t.gamma_coeff = gamma;
    t.off_exceptional = true;
    for (size_t i = 0; i < 3; ++i) {
        if (alphas[i] == 0) {
            t.ins[i] = GlobalInsertion{GlobalInsertion::Kind::Untwisted, 0, "A" + std::to_string(i)};
        } else {
            t.ins[i] = GlobalInsertion{i % 2 == 0 ? GlobalInsertion::Kind::TwistedP : GlobalInsertion::Kind::TwistedQ,
                                       alphas[i], ""};
        }
    }
    (void)r;
    return t;
}

}  // namespace

TEST_CASE("gluing multiplicities") {
    SplitTriple t1;
    t1.contacts = {RelInsertion::make(RelTarget::SmoothZ, 0, rat_of(1), 2)};
    CHECK(c_eta(t1) == rat_of(1));

    SplitTriple t2;
    t2.contacts = {RelInsertion::make(RelTarget::ZPlus, 1, rat_of(1, 2), 2),
                   RelInsertion::make(RelTarget::ZPlus, 1, rat_of(1, 2), 2)};
    CHECK(c_eta(t2) == rat_of(1, 2));  // 2 * (1/2) * (1/2)

    SplitTriple t3;
    t3.contacts = {RelInsertion::make(RelTarget::SmoothZ, 0, rat_of(1), 2),
                   RelInsertion::make(RelTarget::SmoothZ, 0, rat_of(2), 2)};
    CHECK(c_eta(t3) == rat_of(2));  // distinct multiplicities: trivial symmetry

    DegenOptions sector_only;
    sector_only.aut_identical_pairs_only = false;
    CHECK(c_eta(t3, sector_only) == rat_of(4));
}

TEST_CASE("gluing validates the pairing and the topology") {
    ThreePointType type = small_type(2, {1, 1, 0});
    SplitTriple t;
    t.contacts = {RelInsertion::make(RelTarget::X, 1, rat_of(1, 4), 2)};
    t.plus = {PlusComponent{0, {0}, {0, 1}}};
    t.minus = {MinusComponent{{0}, {2}}};
    CHECK_NOTHROW(glue(t, type));

    SplitTriple unpaired = t;
    unpaired.minus[0].contacts.clear();
    CHECK_THROWS_AS(glue(unpaired, type), std::invalid_argument);

    SplitTriple doubled = t;
    doubled.plus.push_back(PlusComponent{0, {0}, {}});
    CHECK_THROWS_AS(glue(doubled, type), std::invalid_argument);

    SplitTriple lost_mark = t;
    lost_mark.minus[0].abs_marks.clear();
    CHECK_THROWS_AS(glue(lost_mark, type), std::invalid_argument);
}

TEST_CASE("splittings glue back to the original type") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    ThreePointType type = small_type(2, {1, 1, 0});
    DegenBounds bounds;
    auto all = enumerate_splittings(type, cat, bounds);
    CHECK(!all.empty());
    for (const auto& eta : all) CHECK_NOTHROW(glue(eta, type));
}

TEST_CASE("no contacts leaves only the far-side term") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    ThreePointType type = small_type(2, {0, 0, 0});
    DegenBounds bounds;
    bounds.max_contacts = 0;
    auto all = enumerate_splittings(type, cat, bounds);
    REQUIRE(all.size() == 1);
    CHECK(all[0].plus.empty());
    CHECK(all[0].minus.size() == 1);

    ThreePointType twisted = small_type(2, {1, 1, 0});
    CHECK(enumerate_splittings(twisted, cat, bounds).empty());
}

TEST_CASE("classes along the exceptional curve are routed to the vanishing diagnostic") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    ThreePointType type = small_type(2, {1, 1, 0});
    type.off_exceptional = false;
    DegenBounds bounds;
    try {
        compare_flop_sum(type, cat, bounds);
        FAIL("expected a diagnostic");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("u-order") != std::string::npos);
    }
}

TEST_CASE("the two flop sides assemble to equal sums") {
    for (long long r : {2LL, 3LL}) {
        ModelCatalog cat(ModelId::make(r, 1, Side::S));
        ThreePointType type = small_type(r, {1, 1, 0});
        DegenBounds bounds;
        bounds.max_contacts = 2;
        bounds.max_ell_int = 1;
        bounds.max_edge_degree = 2;
        DegenReport rep = compare_flop_sum(type, cat, bounds);
        CHECK(!rep.rows.empty());
        for (const auto& row : rep.rows) CHECK(row.equal);
        CHECK(rep.total_equal);
        bool some_nonzero = false;
        for (const auto& row : rep.rows) some_nonzero |= !row.lhs.empty();
        CHECK(some_nonzero);
    }
}

TEST_CASE("report serialization") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    ThreePointType type = small_type(2, {1, 1, 0});
    DegenBounds bounds;
    bounds.max_contacts = 1;
    DegenReport rep = compare_flop_sum(type, cat, bounds);
    auto j = report_to_json(rep);
    CHECK(j.contains("rows"));
    CHECK(j["total_equal"] == rep.total_equal);
    if (!rep.rows.empty()) {
        CHECK(j["rows"][0].contains("C_eta"));
        CHECK(j["rows"][0].contains("equal"));
    }
    auto t2 = type_from_json(type_to_json(type));
    CHECK(t2.gamma_coeff == type.gamma_coeff);
    CHECK(t2.ins[0].alpha == type.ins[0].alpha);
}
