#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tat/eikonal.hpp"
#include "tat/speed.hpp"

using namespace tat;

TEST_CASE("constant speed gives the Euclidean boundary distance") {
    Grid2D g = Grid2D::square(201);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::constant(1.0), g);
    EikonalResult r = fast_sweep(c, om);

    const auto& b = om.box();
    double emax = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double d = std::min({g.x(i) - om.x_lo(), om.x_hi() - g.x(i),
                                       g.y(j) - om.y_lo(), om.y_hi() - g.y(j)});
            emax = std::max(emax, std::abs(r.traveltime.at(i, j) - d));
        }
    CHECK(emax < 2.0 * g.h);
    // center value ~ half-width of the snapped square
    const int ic = (g.nx - 1) / 2;
    CHECK(r.traveltime.at(ic, ic) == doctest::Approx(om.x_hi()).epsilon(0.02));
    CHECK(critical_time(r.traveltime, om) == doctest::Approx(om.x_hi()).epsilon(0.02));
}

TEST_CASE("doubling the speed exactly halves the solution") {
    Grid2D g = Grid2D::square(151);
    Region om = Region::omega(g);
    // bypass the collar blend so the scaling is exact everywhere
    SpeedModel m1 = SpeedModel::constant(1.0);
    SpeedModel m2 = SpeedModel::constant(2.0);
    ScalarField c1 = eval_speed(m1, g);
    ScalarField c2(g);
    for (std::size_t k = 0; k < c2.data.size(); ++k) c2.data[k] = 2.0 * c1.data[k];
    EikonalResult r1 = fast_sweep(c1, om);
    EikonalResult r2 = fast_sweep(c2, om);
    const auto& b = om.box();
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i)
            CHECK(r2.traveltime.at(i, j) ==
                  doctest::Approx(0.5 * r1.traveltime.at(i, j)).epsilon(1e-12));
}

TEST_CASE("paper critical times for the smooth speeds") {
    Grid2D g = Grid2D::square(301);
    Region om = Region::omega(g);

    SUBCASE("c1 full boundary: T0 ~ 1.1767") {
        ScalarField c = eval_speed(SpeedModel::make(SpeedKind::c1), g);
        EikonalResult r = fast_sweep(c, om);
        CHECK(critical_time(r.traveltime, om) == doctest::Approx(1.1767).epsilon(0.02));
        CHECK(r.sweeps <= 16);
    }
    SUBCASE("c2 full boundary: T0 ~ 2.1547") {
        ScalarField c = eval_speed(SpeedModel::make(SpeedKind::c2), g);
        EikonalResult r = fast_sweep(c, om);
        CHECK(critical_time(r.traveltime, om) == doctest::Approx(2.1547).epsilon(0.02));
    }
    SUBCASE("c1 two adjacent sides: T0 ~ 2.5") {
        ScalarField c = eval_speed(SpeedModel::make(SpeedKind::c1), g);
        EikonalResult r = fast_sweep(c, om, GammaSides::from_string("WN"));
        CHECK(critical_time(r.traveltime, om) == doctest::Approx(2.5).epsilon(0.04));
    }
}

TEST_CASE("monotonicity in gamma") {
    Grid2D g = Grid2D::square(151);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::make(SpeedKind::c1), g);
    EikonalResult sub = fast_sweep(c, om, GammaSides::from_string("WN"));
    EikonalResult all = fast_sweep(c, om, GammaSides::all());
    const auto& b = om.box();
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i)
            CHECK(all.traveltime.at(i, j) <= sub.traveltime.at(i, j) + 1e-12);
}

TEST_CASE("causality with respect to grid neighbors") {
    Grid2D g = Grid2D::square(101);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::make(SpeedKind::c3), g);
    double cmin = 1e300;
    for (double v : c.data) cmin = std::min(cmin, v);
    EikonalResult r = fast_sweep(c, om);
    const auto& b = om.box();
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i < b.i1; ++i) {
            CHECK(r.traveltime.at(i + 1, j) <= r.traveltime.at(i, j) + g.h / cmin + 1e-12);
            CHECK(r.traveltime.at(i, j) <= r.traveltime.at(i + 1, j) + g.h / cmin + 1e-12);
        }
}

TEST_CASE("sweep count: fast-sweeping settles in a few sweeps") {
    Grid2D g = Grid2D::square(201);
    Region om = Region::omega(g);
    // 8 directional sweeps for c1/c2 (the last round only verifies the fixed
    // point); the chaotic trapping c3 needs one more round.
    for (SpeedKind k : {SpeedKind::c1, SpeedKind::c2}) {
        EikonalResult r = fast_sweep(eval_speed(SpeedModel::make(k), g), om);
        CHECK(r.sweeps <= 8 + 4);
    }
    EikonalResult r3 = fast_sweep(eval_speed(SpeedModel::make(SpeedKind::c3), g), om);
    CHECK(r3.sweeps <= 16);
}

TEST_CASE("errors: empty gamma, bad speed") {
    Grid2D g = Grid2D::square(51);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::constant(1.0), g);
    std::vector<unsigned char> empty(static_cast<std::size_t>(om.ni()) * om.nj(), 0);
    CHECK_THROWS_AS(fast_sweep(c, om, empty), std::invalid_argument);
    ScalarField bad = c;
    bad.at(30, 30) = 0.0;
    CHECK_THROWS_AS(fast_sweep(bad, om), std::invalid_argument);
}
