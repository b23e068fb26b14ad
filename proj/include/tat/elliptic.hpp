#pragma once
// Harmonic extension (5-point Dirichlet-Laplace solve) by V-cycle multigrid,
// and the orthogonal projection onto H_D(K).

#include <vector>

#include "tat/grid.hpp"

namespace tat {

struct MultigridStats {
    int cycles = 0;
    std::vector<double> residuals;  // inf-norm of the discrete Laplacian, residuals[0] = initial
};

// In-place solve on an ni x nj patch (row-major, index j*ni+i): the frame of
// `field` holds the Dirichlet data, the interior is overwritten with the
// discrete harmonic extension. Converged when ||Lap_h field||_inf <=
// tol * ||data||_inf on the frame; throws on non-convergence.
MultigridStats solve_laplace_dirichlet(int ni, int nj, double h, std::vector<double>& field,
                                       double tol = 1e-8, int max_cycles = 60);

// Harmonic extension into `region` from boundary values given in the
// region's perimeter-walk order. The result is zero outside the region box.
ScalarField harmonic_extend(const Region& region, const std::vector<double>& boundary_values,
                            double tol = 1e-8);

// Pi_K f = f - P_K(f|dK) on K, zero outside K (zero trace on dK).
// region_K must not touch the boundary of f's grid... callers pass K strictly
// inside Omega; throws when K's frame meets the grid edge.
ScalarField project_hd(const ScalarField& f, const Region& region_K, double tol = 1e-8);

}  // namespace tat
