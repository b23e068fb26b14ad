#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tat/grid.hpp"

using namespace tat;

namespace {

// Dumb reference for the link-based Dirichlet norm.
double hd_norm_oracle(const ScalarField& f, const Region& r) {
    const auto& b = r.box();
    const double h = f.grid.h;
    double s = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            if (i + 1 <= b.i1) {
                const double d = (f.at(i + 1, j) - f.at(i, j)) / h;
                s += d * d * h * h;
            }
            if (j + 1 <= b.j1) {
                const double d = (f.at(i, j + 1) - f.at(i, j)) / h;
                s += d * d * h * h;
            }
        }
    return std::sqrt(s);
}

double l2_oracle(const ScalarField& f, const Region& r) {
    const auto& b = r.box();
    double s = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) s += f.at(i, j) * f.at(i, j);
    return std::sqrt(s) * f.grid.h;
}

ScalarField random_field(const Grid2D& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.data) v = u(rng);
    return f;
}

}  // namespace

TEST_CASE("grid construction and invariants") {
    Grid2D g = Grid2D::square(301);
    CHECK(g.h == doctest::Approx(0.01));
    CHECK(g.x(0) == doctest::Approx(-1.5));
    CHECK(g.x(300) == doctest::Approx(1.5));
    CHECK_THROWS_AS(Grid2D::box(2, 5, 0, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Grid2D::box(11, 5, 0, 1, 0, 1), std::invalid_argument);  // non-square cells
}

TEST_CASE("omega region snaps to nodes and boundary walk is a simple cycle") {
    for (int n : {201, 301}) {
        Grid2D g = Grid2D::square(n);
        Region om = Region::omega(g);
        CHECK(om.x_hi() <= 1.28 + 1e-12);
        CHECK(om.x_hi() > 1.28 - g.h);
        CHECK(om.x_lo() == doctest::Approx(-om.x_hi()));
        const auto& nodes = om.boundary_nodes();
        CHECK(nodes.size() == static_cast<std::size_t>(2 * (om.ni() + om.nj()) - 4));
        for (const auto& [i, j] : nodes) CHECK(om.on_boundary(i, j));
        // neighbors in the walk are grid neighbors
        for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
            const int di = std::abs(nodes[k].first - nodes[k + 1].first);
            const int dj = std::abs(nodes[k].second - nodes[k + 1].second);
            CHECK(di + dj == 1);
        }
    }
    // 301-grid omega hits 1.28 exactly and has a multigrid-friendly 257^2 patch
    Region om = Region::omega(Grid2D::square(301));
    CHECK(om.x_hi() == doctest::Approx(1.28));
    CHECK(om.ni() == 257);
}

TEST_CASE("hd_norm: constants, linear field, oracle, homogeneity") {
    Grid2D g = Grid2D::square(201);
    Region full = Region::full(g);

    ScalarField c(g, 3.7);
    CHECK(hd_norm(c, full) == 0.0);

    // f = x over a unit-square region: integral of |grad f|^2 is the area
    Region unit = Region(g, IndexBox{100, 167, 100, 167});  // ~[0,1]^2 at h=0.015
    ScalarField fx(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) fx.at(i, j) = g.x(i);
    const double area = (unit.x_hi() - unit.x_lo()) * (unit.y_hi() - unit.y_lo());
    CHECK(hd_norm(fx, unit) == doctest::Approx(std::sqrt(area)).epsilon(0.02));

    ScalarField r = random_field(g, 7);
    CHECK(hd_norm(r, full) == doctest::Approx(hd_norm_oracle(r, full)).epsilon(1e-13));
    Region sub(g, IndexBox{20, 120, 35, 160});
    CHECK(hd_norm(r, sub) == doctest::Approx(hd_norm_oracle(r, sub)).epsilon(1e-13));

    // absolute homogeneity to machine precision
    ScalarField r2 = r;
    for (auto& v : r2.data) v *= -2.5;
    CHECK(hd_norm(r2, full) == doctest::Approx(2.5 * hd_norm(r, full)).epsilon(1e-14));
}

TEST_CASE("l2_rel_error: identity, scaling, oracle") {
    Grid2D g = Grid2D::square(101);
    Region full = Region::full(g);
    ScalarField a = random_field(g, 11);
    CHECK(l2_rel_error(a, a, full) == 0.0);

    ScalarField b = a;
    for (auto& v : b.data) v *= 1.1;
    CHECK(l2_rel_error(b, a, full) == doctest::Approx(0.1).epsilon(1e-12));

    ScalarField c = random_field(g, 12);
    double num = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        const double d = a.data[k] - c.data[k];
        num += d * d;
    }
    CHECK(l2_rel_error(a, c, full) ==
          doctest::Approx(std::sqrt(num) * g.h / l2_oracle(c, full)).epsilon(1e-13));

    ScalarField z(g, 0.0);
    CHECK_THROWS_AS(l2_rel_error(a, z, full), std::invalid_argument);
}
