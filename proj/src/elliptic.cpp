#include "tat/elliptic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Level {
    int ni = 0, nj = 0;
    double h = 0.0;
    std::vector<double> u, rhs, res;
};

inline std::size_t id(const Level& L, int i, int j) {
    return static_cast<std::size_t>(j) * L.ni + i;
}

// Red-black Gauss-Seidel on the interior; frame values stay fixed.
void smooth(Level& L) {
    const double h2 = L.h * L.h;
    for (int color = 0; color < 2; ++color)
        for (int j = 1; j < L.nj - 1; ++j) {
            int i = 1 + ((j + 1 + color) & 1);
            for (; i < L.ni - 1; i += 2) {
                const std::size_t k = id(L, i, j);
                L.u[k] = 0.25 * (L.u[k - 1] + L.u[k + 1] + L.u[k - L.ni] + L.u[k + L.ni] -
                                 h2 * L.rhs[k]);
            }
        }
}

// res = rhs - Lap_h u on the interior, zero on the frame.
double residual(Level& L) {
    const double inv_h2 = 1.0 / (L.h * L.h);
    double rmax = 0.0;
    std::fill(L.res.begin(), L.res.end(), 0.0);
    for (int j = 1; j < L.nj - 1; ++j)
        for (int i = 1; i < L.ni - 1; ++i) {
            const std::size_t k = id(L, i, j);
            const double lap =
                (L.u[k - 1] + L.u[k + 1] + L.u[k - L.ni] + L.u[k + L.ni] - 4.0 * L.u[k]) * inv_h2;
            const double r = L.rhs[k] - lap;
            L.res[k] = r;
            rmax = std::max(rmax, std::abs(r));
        }
    return rmax;
}

// Full weighting of fine.res into coarse.rhs (coarse node (I,J) <-> fine (2I,2J)).
void restrict_fw(const Level& fine, Level& coarse) {
    for (int J = 1; J < coarse.nj - 1; ++J)
        for (int I = 1; I < coarse.ni - 1; ++I) {
            const int i = 2 * I, j = 2 * J;
            const std::size_t k = id(fine, i, j);
            const double v = 4.0 * fine.res[k] +
                             2.0 * (fine.res[k - 1] + fine.res[k + 1] + fine.res[k - fine.ni] +
                                    fine.res[k + fine.ni]) +
                             fine.res[k - fine.ni - 1] + fine.res[k - fine.ni + 1] +
                             fine.res[k + fine.ni - 1] + fine.res[k + fine.ni + 1];
            coarse.rhs[id(coarse, I, J)] = v / 16.0;
        }
}

// Bilinear prolongation of coarse.u (zero frame) added into fine.u interior.
void prolong_add(const Level& coarse, Level& fine) {
    auto cu = [&](int I, int J) { return coarse.u[id(coarse, I, J)]; };
    for (int j = 1; j < fine.nj - 1; ++j)
        for (int i = 1; i < fine.ni - 1; ++i) {
            const int I = i / 2, J = j / 2;
            double v;
            if ((i & 1) == 0 && (j & 1) == 0)
                v = cu(I, J);
            else if ((i & 1) == 1 && (j & 1) == 0)
                v = 0.5 * (cu(I, J) + cu(I + 1, J));
            else if ((i & 1) == 0)
                v = 0.5 * (cu(I, J) + cu(I, J + 1));
            else
                v = 0.25 * (cu(I, J) + cu(I + 1, J) + cu(I, J + 1) + cu(I + 1, J + 1));
            fine.u[id(fine, i, j)] += v;
        }
}

// Direct solve at the coarsest level (where the patch no longer halves
// cleanly): a zero-Dirichlet correction Lap e = res via a (naive) discrete
// sine transform, added into the current iterate. Exact at this level, so
// nonzero frame data on the top level is handled through the residual.
void dst_solve(Level& L) {
    const int mx = L.ni - 2, my = L.nj - 2;
    if (mx <= 0 || my <= 0) return;
    residual(L);
    const int Nx = L.ni - 1, Ny = L.nj - 1;
    std::vector<double> Sx(static_cast<std::size_t>(mx) * mx), Sy(static_cast<std::size_t>(my) * my);
    for (int p = 0; p < mx; ++p)
        for (int i = 0; i < mx; ++i)
            Sx[static_cast<std::size_t>(p) * mx + i] = std::sin(kPi * (p + 1) * (i + 1) / Nx);
    for (int q = 0; q < my; ++q)
        for (int j = 0; j < my; ++j)
            Sy[static_cast<std::size_t>(q) * my + j] = std::sin(kPi * (q + 1) * (j + 1) / Ny);

    // rhat = Sx * R * Sy^T (R = interior residual), row-major [j][i] layout
    std::vector<double> tmp(static_cast<std::size_t>(my) * mx, 0.0);
    for (int j = 0; j < my; ++j)
        for (int p = 0; p < mx; ++p) {
            double s = 0.0;
            for (int i = 0; i < mx; ++i)
                s += Sx[static_cast<std::size_t>(p) * mx + i] * L.res[id(L, i + 1, j + 1)];
            tmp[static_cast<std::size_t>(j) * mx + p] = s;
        }
    std::vector<double> rhat(static_cast<std::size_t>(my) * mx, 0.0);
    for (int q = 0; q < my; ++q)
        for (int p = 0; p < mx; ++p) {
            double s = 0.0;
            for (int j = 0; j < my; ++j)
                s += Sy[static_cast<std::size_t>(q) * my + j] * tmp[static_cast<std::size_t>(j) * mx + p];
            rhat[static_cast<std::size_t>(q) * mx + p] = s;
        }

    const double inv_h2 = 1.0 / (L.h * L.h);
    for (int q = 0; q < my; ++q)
        for (int p = 0; p < mx; ++p) {
            const double lam = (2.0 * std::cos(kPi * (p + 1) / Nx) - 2.0 +
                                2.0 * std::cos(kPi * (q + 1) / Ny) - 2.0) *
                               inv_h2;
            rhat[static_cast<std::size_t>(q) * mx + p] /= lam;
        }

    // u = (2/Nx)(2/Ny) Sx^T * rhat * Sy
    for (int q = 0; q < my; ++q)
        for (int i = 0; i < mx; ++i) {
            double s = 0.0;
            for (int p = 0; p < mx; ++p)
                s += Sx[static_cast<std::size_t>(p) * mx + i] * rhat[static_cast<std::size_t>(q) * mx + p];
            tmp[static_cast<std::size_t>(q) * mx + i] = s;
        }
    const double scale = 4.0 / (static_cast<double>(Nx) * Ny);
    for (int j = 0; j < my; ++j)
        for (int i = 0; i < mx; ++i) {
            double s = 0.0;
            for (int q = 0; q < my; ++q)
                s += Sy[static_cast<std::size_t>(q) * my + j] * tmp[static_cast<std::size_t>(q) * mx + i];
            L.u[id(L, i + 1, j + 1)] += scale * s;
        }
}

bool can_coarsen(int ni, int nj) {
    return (ni - 1) % 2 == 0 && (nj - 1) % 2 == 0 && ni > 33 && nj > 33;
}

void vcycle(std::vector<Level>& levels, std::size_t d) {
    Level& L = levels[d];
    if (d + 1 == levels.size()) {
        dst_solve(L);
        return;
    }
    smooth(L);
    smooth(L);
    residual(L);
    Level& C = levels[d + 1];
    std::fill(C.u.begin(), C.u.end(), 0.0);
    restrict_fw(L, C);
    vcycle(levels, d + 1);
    prolong_add(C, L);
    smooth(L);
    smooth(L);
}

}  // namespace

MultigridStats solve_laplace_dirichlet(int ni, int nj, double h, std::vector<double>& field,
                                       double tol, int max_cycles) {
    if (ni < 3 || nj < 3) throw std::invalid_argument("solve_laplace_dirichlet: patch too small");
    if (field.size() != static_cast<std::size_t>(ni) * nj)
        throw std::invalid_argument("solve_laplace_dirichlet: field size mismatch");

    std::vector<Level> levels;
    {
        int a = ni, b = nj;
        double hh = h;
        while (true) {
            Level L;
            L.ni = a;
            L.nj = b;
            L.h = hh;
            L.u.assign(static_cast<std::size_t>(a) * b, 0.0);
            L.rhs.assign(L.u.size(), 0.0);
            L.res.assign(L.u.size(), 0.0);
            levels.push_back(std::move(L));
            if (!can_coarsen(a, b)) break;
            a = (a + 1) / 2;
            b = (b + 1) / 2;
            hh *= 2.0;
        }
    }

    Level& top = levels[0];
    top.u = field;
    double data_max = 0.0;
    for (int i = 0; i < ni; ++i) {
        data_max = std::max({data_max, std::abs(field[i]),
                             std::abs(field[static_cast<std::size_t>(nj - 1) * ni + i])});
    }
    for (int j = 0; j < nj; ++j) {
        data_max = std::max({data_max, std::abs(field[static_cast<std::size_t>(j) * ni]),
                             std::abs(field[static_cast<std::size_t>(j) * ni + ni - 1])});
    }

    MultigridStats stats;
    double r = residual(top);
    stats.residuals.push_back(r);
    const double target = tol * data_max;
    while (r > target) {
        if (stats.cycles >= max_cycles)
            throw std::runtime_error("solve_laplace_dirichlet: no convergence in " +
                                     std::to_string(max_cycles) +
                                     " V-cycles, residual = " + std::to_string(r));
        vcycle(levels, 0);
        ++stats.cycles;
        r = residual(top);
        stats.residuals.push_back(r);
    }
    field = top.u;
    return stats;
}

ScalarField harmonic_extend(const Region& region, const std::vector<double>& boundary_values,
                            double tol) {
    const auto& nodes = region.boundary_nodes();
    if (boundary_values.size() != nodes.size())
        throw std::invalid_argument("harmonic_extend: boundary value count mismatch");
    for (double v : boundary_values)
        if (!std::isfinite(v)) throw std::invalid_argument("harmonic_extend: non-finite data");

    const int ni = region.ni(), nj = region.nj();
    const auto& b = region.box();
    std::vector<double> patch(static_cast<std::size_t>(ni) * nj, 0.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto [i, j] = nodes[k];
        patch[static_cast<std::size_t>(j - b.j0) * ni + (i - b.i0)] = boundary_values[k];
    }
    solve_laplace_dirichlet(ni, nj, region.grid().h, patch, tol);

    ScalarField out(region.grid(), 0.0);
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i)
            out.at(i, j) = patch[static_cast<std::size_t>(j - b.j0) * ni + (i - b.i0)];
    return out;
}

ScalarField project_hd(const ScalarField& f, const Region& region_K, double tol) {
    if (!f.grid.same_as(region_K.grid())) throw std::invalid_argument("project_hd: grid mismatch");
    const auto& b = region_K.box();
    if (b.i0 <= 0 || b.j0 <= 0 || b.i1 >= f.grid.nx - 1 || b.j1 >= f.grid.ny - 1)
        throw std::invalid_argument("project_hd: region touches the grid edge");

    const auto& nodes = region_K.boundary_nodes();
    std::vector<double> bv(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) bv[k] = f.at(nodes[k].first, nodes[k].second);
    ScalarField ext = harmonic_extend(region_K, bv, tol);

    ScalarField out(f.grid, 0.0);
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) out.at(i, j) = f.at(i, j) - ext.at(i, j);
    return out;
}

}  // namespace tat
