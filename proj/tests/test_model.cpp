#include "orbiflop/model.hpp"

#include <doctest.h>

using namespace orbiflop;

TEST_CASE("stabilizer orders across the divisor") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    CHECK(cat.point(PointId::P).stabilizer == 2);
    CHECK(cat.point(PointId::Q).stabilizer == 2);
    CHECK(cat.point(PointId::X).stabilizer == 4);
    CHECK(cat.point(PointId::Y).stabilizer == 4);
    CHECK(cat.point(PointId::ZPlus).stabilizer == 2);
    CHECK(cat.point(PointId::ZMinus).stabilizer == 2);
    CHECK(cat.stratum().normal_action.order == 2);

    for (long long r = 1; r <= 8; ++r) {
        for (long long a = (r == 1 ? 0 : 1); a < std::max<long long>(r, 1); ++a) {
            if (r > 1 && gcd_ll(a, r) != 1) continue;
            for (Side side : {Side::S, Side::SF}) {
                ModelCatalog c(ModelId::make(r, a, side));
                CHECK(c.point(PointId::P).stabilizer == r);
                CHECK(c.point(PointId::Q).stabilizer == r);
                CHECK(c.point(PointId::X).stabilizer == r * r);
                CHECK(c.point(PointId::Y).stabilizer == r * r);
                CHECK(c.point(PointId::ZPlus).stabilizer == r);
                CHECK(c.point(PointId::ZMinus).stabilizer == r);
            }
        }
    }
}

TEST_CASE("the smooth case has no isotropy") {
    ModelCatalog cat(ModelId::make(1, 0, Side::S));
    for (const auto& p : cat.fixed_points()) CHECK(p.stabilizer == 1);
    CHECK(cat.mu_x() == rat_of(0));
    CHECK(cat.mu_y() == rat_of(0));
}

TEST_CASE("chart action at a corner point reduces mod r") {
    ModelCatalog cat(ModelId::make(3, 2, Side::SF));
    CHECK(cat.point(PointId::ZPlus).chart.weights == std::vector<long long>{1, 2, 1});
}

TEST_CASE("divisor points require the compactified model") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S, false));
    CHECK_NOTHROW(cat.point(PointId::P));
    CHECK_THROWS_AS(cat.point(PointId::X), std::invalid_argument);
    CHECK(cat.invariant_curves().size() == 1);
}

TEST_CASE("exceptional-curve normal weights") {
    for (long long r : {1LL, 2LL, 3LL, 5LL}) {
        ModelCatalog cat(ModelId::make(r, 1 % std::max<long long>(r, 2), Side::S));
        const CurveRec& gamma = cat.curve(CurveId::Gamma);
        CHECK(cat.normal_weight(gamma.end0, 0) == wf(rat_of(0), rat_of(1)));          // trivial summand
        CHECK(cat.normal_weight(gamma.end1, 0) == wf(rat_of(0), rat_of(1)));
        CHECK(cat.normal_weight(gamma.end0, 1) == wf(rat_of(-1), rat_of(r)));
        CHECK(cat.normal_weight(gamma.end1, 1) == wf(rat_of(1), rat_of(r)));
        // The degree -2 summand: ends differ by 2 lambda and sum to 2ru.
        WeightForm diff = cat.normal_weight(gamma.end1, 1) - cat.normal_weight(gamma.end0, 1);
        WeightForm sum = cat.normal_weight(gamma.end1, 1) + cat.normal_weight(gamma.end0, 1);
        CHECK(diff == wf(rat_of(2), rat_of(0)));
        CHECK(sum == wf(rat_of(0), rat_of(2 * r)));
    }
}

TEST_CASE("linearized transition map reproduces the normal weights") {
    // Coordinates (u, z, y) at one end, (v, z, x) at the other, glued by
    // v = 1/u, z = z, x = -u^2 y + 2 u z^r.  Linearizing at the curve makes
    // x a multiple of u^2 y for r >= 2, so weight(x) = 2*weight(u) + weight(y).
    for (long long r = 2; r <= 6; ++r) {
        ModelCatalog cat(ModelId::make(r, 1, Side::S));
        const CurveRec& gamma = cat.curve(CurveId::Gamma);
        WeightForm wu = cat.tangent_weight(gamma.end0);
        WeightForm wy = cat.normal_weight(gamma.end0, 1);
        WeightForm wx = cat.normal_weight(gamma.end1, 1);
        CHECK(wx == wu * rat_of(2) + wy);
        // and the z-summand is untouched by the transition
        CHECK(cat.normal_weight(gamma.end0, 0) == cat.normal_weight(gamma.end1, 0));
    }
}

TEST_CASE("divisor-line endpoint tables per side") {
    ModelCatalog s(ModelId::make(3, 1, Side::S));
    ModelCatalog sf(ModelId::make(3, 1, Side::SF));
    CHECK(s.curve(CurveId::Lpz).end1.point == PointId::ZMinus);
    CHECK(s.curve(CurveId::Lqz).end1.point == PointId::ZPlus);
    CHECK(sf.curve(CurveId::Lpz).end1.point == PointId::ZPlus);
    CHECK(sf.curve(CurveId::Lqz).end1.point == PointId::ZMinus);
    CHECK(s.curve(CurveId::Lpy).end1.point == PointId::Y);
    CHECK(sf.curve(CurveId::Lpy).end1.point == PointId::Y);
}

TEST_CASE("shared lines carry identical data on the two sides") {
    for (long long r : {2LL, 3LL, 4LL}) {
        for (long long a = 1; a < r; ++a) {
            if (gcd_ll(a, r) != 1) continue;
            ModelCatalog s(ModelId::make(r, a, Side::S));
            ModelCatalog sf(ModelId::make(r, a, Side::SF));
            for (CurveId c : {CurveId::Lpy, CurveId::Lqx}) {
                const CurveRec& cs = s.curve(c);
                const CurveRec& csf = sf.curve(c);
                CHECK(cs.end0.point == csf.end0.point);
                CHECK(cs.end1.point == csf.end1.point);
                CHECK(s.tangent_weight(cs.end0) == sf.tangent_weight(csf.end0));
                CHECK(s.tangent_weight(cs.end1) == sf.tangent_weight(csf.end1));
                for (int j = 0; j < 2; ++j) {
                    CHECK(s.normal_weight(cs.end0, j) == sf.normal_weight(csf.end0, j));
                    CHECK(s.normal_weight(cs.end1, j) == sf.normal_weight(csf.end1, j));
                    CHECK(s.normal_character(cs.end0, j) == sf.normal_character(csf.end0, j));
                }
            }
        }
    }
}

TEST_CASE("flop is an involution exchanging the divisor lines") {
    ModelId m = ModelId::make(3, 2, Side::S);
    FlopCorrespondence f = flop(m);
    CHECK(f.image.side == Side::SF);
    CHECK(f.image.flopped() == m);
    CHECK(f.map_curve(CurveId::Lpy) == CurveId::Lpy);
    CHECK(f.map_curve(CurveId::Lqx) == CurveId::Lqx);
    CHECK(f.map_curve(CurveId::Lpz) == CurveId::Lqz);
    CHECK(f.map_curve(CurveId::Lqz) == CurveId::Lpz);
    CHECK(f.class_sign(CurveId::Gamma) == -1);
    CHECK(f.class_sign(CurveId::Lpy) == 1);
    FlopCorrespondence g = flop(f.image);
    CHECK(g.image == m);
    for (CurveId c : {CurveId::Gamma, CurveId::Lpy, CurveId::Lqx, CurveId::Lpz, CurveId::Lqz})
        CHECK(g.map_curve(f.map_curve(c)) == c);
}

TEST_CASE("sector shiftings at fixed points") {
    ModelCatalog c3(ModelId::make(3, 1, Side::S));
    CHECK(c3.sector_shifting_at(PointId::P, 2) == rat_of(5, 3));
    CHECK(c3.sector_shifting_at(PointId::Q, 0) == rat_of(0));
    ModelCatalog c2(ModelId::make(2, 1, Side::S));
    CHECK(c2.sector_shifting_at(PointId::ZPlus, 1) == rat_of(3, 2));
    CHECK_THROWS_AS(c2.sector_shifting_at(PointId::ZPlus, 2), std::out_of_range);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ModelId::make(4, 2, Side::S), std::invalid_argument);
    CHECK_THROWS_AS(ModelId::make(0, 1, Side::S), std::invalid_argument);
    CHECK_NOTHROW(ModelId::make(1, 0, Side::SF));
}

TEST_CASE("catalog export is keyed and carries canonical weight text") {
    ModelCatalog cat(ModelId::make(2, 1, Side::S));
    auto j = cat.to_json();
    CHECK(j["r"] == 2);
    CHECK(j["points"]["X"]["stabilizer"] == 4);
    CHECK(j["curves"]["Gamma"]["end0"]["point"] == "P");
    std::string w = j["curves"]["Gamma"]["end0"]["normal_weights"][1];
    CHECK(w == FactoredRat::from_weight(wf(-1, 2)).str());
}
