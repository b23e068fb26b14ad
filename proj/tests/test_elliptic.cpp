#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tat/elliptic.hpp"
#include "tat/grid.hpp"
#include "tat/phantoms.hpp"

using namespace tat;

namespace {

std::vector<double> sample_boundary(const Region& r, double (*g)(double, double)) {
    const auto& nodes = r.boundary_nodes();
    std::vector<double> bv(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
        bv[k] = g(r.grid().x(nodes[k].first), r.grid().y(nodes[k].second));
    return bv;
}

double g_saddle(double x, double y) { return x * x - y * y; }
double g_xy(double x, double y) { return x * y; }
// Harmonic but NOT discrete-harmonic (5-point residual = 4 h^2), so the
// solver error really is O(h^2). Cubics vanish under the 5-point stencil.
double g_quartic(double x, double y) {
    return x * x * x * x - 6.0 * x * x * y * y + y * y * y * y;
}

}  // namespace

TEST_CASE("constant boundary data extends to the constant") {
    Grid2D g = Grid2D::square(101);
    Region om = Region::omega(g);
    std::vector<double> bv(om.n_boundary(), 4.25);
    ScalarField phi = harmonic_extend(om, bv);
    const auto& b = om.box();
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) CHECK(phi.at(i, j) == doctest::Approx(4.25).epsilon(1e-9));
}

TEST_CASE("discrete-harmonic polynomials reproduced to solver tolerance") {
    // x^2 - y^2 and xy have exactly zero 5-point Laplacian, so the discrete
    // solution coincides with them up to the residual tolerance.
    for (int n : {201, 301}) {
        Grid2D g = Grid2D::square(n);
        Region om = Region::omega(g);
        for (auto* fn : {&g_saddle, &g_xy}) {
            ScalarField phi = harmonic_extend(om, sample_boundary(om, *fn));
            const auto& b = om.box();
            double emax = 0.0;
            for (int j = b.j0; j <= b.j1; ++j)
                for (int i = b.i0; i <= b.i1; ++i)
                    emax = std::max(emax, std::abs(phi.at(i, j) - (*fn)(g.x(i), g.y(j))));
            CHECK(emax < 1e-6);
        }
    }
}

TEST_CASE("true O(h^2) convergence on a quartic harmonic") {
    double prev = 0.0;
    for (int n : {76, 151, 301}) {  // even patch sizes exercise the DST fallback too
        Grid2D g = Grid2D::square(n);
        Region om = Region::omega(g);
        ScalarField phi = harmonic_extend(om, sample_boundary(om, g_quartic));
        const auto& b = om.box();
        double emax = 0.0, dmax = 0.0;
        for (int j = b.j0; j <= b.j1; ++j)
            for (int i = b.i0; i <= b.i1; ++i) {
                emax = std::max(emax, std::abs(phi.at(i, j) - g_quartic(g.x(i), g.y(j))));
                dmax = std::max(dmax, std::abs(g_quartic(g.x(i), g.y(j))));
            }
        CHECK(emax < 4.0 * g.h * g.h * dmax);
        if (prev > 0.0) CHECK(emax < 0.35 * prev);  // ~4x per h halving
        prev = emax;
    }
}

TEST_CASE("discrete maximum principle") {
    Grid2D g = Grid2D::square(151);
    Region om = Region::omega(g);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 5.0);
    std::vector<double> bv(om.n_boundary());
    for (auto& v : bv) v = u(rng);
    const double lo = *std::min_element(bv.begin(), bv.end());
    const double hi = *std::max_element(bv.begin(), bv.end());
    ScalarField phi = harmonic_extend(om, bv);
    const auto& b = om.box();
    for (int j = b.j0 + 1; j < b.j1; ++j)
        for (int i = b.i0 + 1; i < b.i1; ++i) {
            CHECK(phi.at(i, j) >= lo - 1e-9);
            CHECK(phi.at(i, j) <= hi + 1e-9);
        }
}

TEST_CASE("V-cycle contracts the residual by 5x or better") {
    for (int n : {201, 301}) {
        Grid2D g = Grid2D::square(n);
        Region om = Region::omega(g);
        const int ni = om.ni(), nj = om.nj();
        std::vector<double> patch(static_cast<std::size_t>(ni) * nj, 0.0);
        const auto& nodes = om.boundary_nodes();
        const auto& b = om.box();
        for (const auto& [i, j] : nodes)
            patch[static_cast<std::size_t>(j - b.j0) * ni + (i - b.i0)] =
                g_saddle(g.x(i), g.y(j));
        MultigridStats st = solve_laplace_dirichlet(ni, nj, g.h, patch);
        REQUIRE(st.cycles >= 2);
        for (int k = 1; k <= st.cycles; ++k) CHECK(st.residuals[k] < st.residuals[k - 1] / 5.0);
    }
}

TEST_CASE("projection onto H_D(K)") {
    Grid2D g = Grid2D::square(201);
    Region om = Region::omega(g);
    Region K = Region::omega(g, 1.0);

    SUBCASE("annihilates harmonic fields") {
        ScalarField f(g, 0.0);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) f.at(i, j) = g_xy(g.x(i), g.y(j));
        ScalarField p = project_hd(f, K);
        CHECK(p.max_abs() < 1e-6);
    }

    SUBCASE("fixes fields with zero trace on dK") {
        ScalarField f = smooth_bump(g, 0.1, -0.2, 0.5);
        ScalarField p = project_hd(f, K);
        const auto& b = K.box();
        double emax = 0.0;
        for (int j = b.j0; j <= b.j1; ++j)
            for (int i = b.i0; i <= b.i1; ++i)
                emax = std::max(emax, std::abs(p.at(i, j) - f.at(i, j)));
        CHECK(emax < 1e-9);
    }

    SUBCASE("Pythagoras in the Dirichlet norm") {
        ScalarField f = random_smooth_field(g, 42, 8, 1.25);
        ScalarField p = project_hd(f, K);
        ScalarField r = f;
        for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] -= p.data[k];
        const double a2 = hd_norm(f, K) * hd_norm(f, K);
        const double b2 = hd_norm(p, K) * hd_norm(p, K);
        const double c2 = hd_norm(r, K) * hd_norm(r, K);
        CHECK(b2 + c2 == doctest::Approx(a2).epsilon(1e-6));
    }

    SUBCASE("idempotence") {
        ScalarField f = random_smooth_field(g, 5, 6, 1.25);
        ScalarField p1 = project_hd(f, K);
        ScalarField p2 = project_hd(p1, K);
        double emax = 0.0;
        for (std::size_t k = 0; k < p1.data.size(); ++k)
            emax = std::max(emax, std::abs(p1.data[k] - p2.data[k]));
        CHECK(emax < 2e-8 * std::max(1.0, f.max_abs()));
    }

    SUBCASE("region touching the grid edge rejected") {
        Region full = Region::full(g);
        ScalarField f(g, 1.0);
        CHECK_THROWS_AS(project_hd(f, full), std::invalid_argument);
    }
}

TEST_CASE("non-convergence reports the residual") {
    // boundary 1, interior 0: nonzero initial residual, zero cycle budget
    std::vector<double> patch(25, 1.0);
    patch[12] = 0.0;
    CHECK_THROWS_AS(solve_laplace_dirichlet(5, 5, 0.1, patch, 1e-30, 0), std::runtime_error);
}
