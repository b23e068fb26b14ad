#include "tat/time_reversal.hpp"

#include <cmath>
#include <stdexcept>

#include "tat/elliptic.hpp"

namespace tat {

ScalarField time_reverse(const BoundaryTrace& trace, const ScalarField& c, double T) {
    const Region& omega = trace.region;
    if (!c.grid.same_as(omega.grid())) throw std::invalid_argument("time_reverse: grid mismatch");
    if (T > trace.duration() + trace.dt * (1.0 + 1e-9))
        throw std::invalid_argument("time_reverse: T exceeds trace duration");
    if (std::abs(T - trace.duration()) > trace.dt * (1.0 + 1e-9))
        throw std::invalid_argument("time_reverse: trace was not recorded up to T");

    const auto& b = omega.box();
    const int ni = omega.ni(), nj = omega.nj();
    const double h = omega.grid().h, dt = trace.dt;
    const int N = trace.n_steps;
    const auto& nodes = omega.boundary_nodes();
    const std::size_t nb = nodes.size();

    auto pid = [&](int i, int j) { return static_cast<std::size_t>(j) * ni + i; };

    // Terminal pressure: harmonic extension of h(T, .).
    std::vector<double> u(static_cast<std::size_t>(ni) * nj, 0.0);
    for (std::size_t p = 0; p < nb; ++p)
        u[pid(nodes[p].first - b.i0, nodes[p].second - b.j0)] =
            trace.values[static_cast<std::size_t>(N) * nb + p];
    solve_laplace_dirichlet(ni, nj, h, u);

    std::vector<double> c2(u.size());
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i) {
            const double cv = c.at(b.i0 + i, b.j0 + j);
            c2[pid(i, j)] = cv * cv;
        }

    // Reversed time s = T - t; terminal velocity 0 becomes the standard
    // staggered start v(-ds/2) = (ds/2) grad u.
    std::vector<double> vx(static_cast<std::size_t>(ni - 1) * nj);
    std::vector<double> vy(static_cast<std::size_t>(ni) * (nj - 1));
    const double q0 = 0.5 * dt / h;
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i + 1 < ni; ++i)
            vx[static_cast<std::size_t>(j) * (ni - 1) + i] = q0 * (u[pid(i + 1, j)] - u[pid(i, j)]);
    for (int j = 0; j + 1 < nj; ++j)
        for (int i = 0; i < ni; ++i)
            vy[static_cast<std::size_t>(j) * ni + i] = q0 * (u[pid(i, j + 1)] - u[pid(i, j)]);

    const double r = dt / h;
    for (int m = 0; m < N; ++m) {
        for (int j = 0; j < nj; ++j)
            for (int i = 0; i + 1 < ni; ++i)
                vx[static_cast<std::size_t>(j) * (ni - 1) + i] -=
                    r * (u[pid(i + 1, j)] - u[pid(i, j)]);
        for (int j = 0; j + 1 < nj; ++j)
            for (int i = 0; i < ni; ++i)
                vy[static_cast<std::size_t>(j) * ni + i] -= r * (u[pid(i, j + 1)] - u[pid(i, j)]);
        for (int j = 1; j + 1 < nj; ++j)
            for (int i = 1; i + 1 < ni; ++i) {
                const std::size_t k = pid(i, j);
                const double divx = vx[static_cast<std::size_t>(j) * (ni - 1) + i] -
                                    vx[static_cast<std::size_t>(j) * (ni - 1) + i - 1];
                const double divy = vy[static_cast<std::size_t>(j) * ni + i] -
                                    vy[static_cast<std::size_t>(j - 1) * ni + i];
                u[k] -= r * c2[k] * (divx + divy);
            }
        // Dirichlet data at t = T - (m+1) dt (corners included).
        const std::size_t k = static_cast<std::size_t>(N - m - 1) * nb;
        for (std::size_t p = 0; p < nb; ++p)
            u[pid(nodes[p].first - b.i0, nodes[p].second - b.j0)] = trace.values[k + p];
    }

    ScalarField out(c.grid, 0.0);
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i) out.at(b.i0 + i, b.j0 + j) = u[pid(i, j)];
    return out;
}

ScalarField apply_error_operator(const ScalarField& f, const ScalarField& c, double T,
                                 const PMLProfile& pml, const Region& omega,
                                 const std::vector<double>& mask) {
    BoundaryTrace trace = forward_measure(f, c, T, pml, omega);
    if (!mask.empty()) trace = apply_mask(trace, mask);
    ScalarField a = time_reverse(trace, c, T);
    ScalarField out(f.grid, 0.0);
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = f.data[k] - a.data[k];
    return out;
}

}  // namespace tat
