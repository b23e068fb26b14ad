#include "tat/wave.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

double pml_loss(double s, double sigma, double b) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("pml_loss: s outside [0,1]");
    if (!(sigma > 0.0) || sigma >= 0.5) throw std::invalid_argument("pml_loss: sigma outside (0,1/2)");
    if (b < 0.0) throw std::invalid_argument("pml_loss: negative amplitude");
    if (s < sigma) {
        const double q = (s - sigma) / sigma;
        return (b / sigma) * q * q;
    }
    if (s > 1.0 - sigma) {
        const double q = (s - 1.0 + sigma) / sigma;
        return (b / sigma) * q * q;
    }
    return 0.0;
}

PMLProfile PMLProfile::build(const Grid2D& g, double sigma, double b) {
    PMLProfile p;
    p.sigma = sigma;
    p.b = b;
    const double lx = g.x_max - g.x_min, ly = g.y_max - g.y_min;
    p.omega_x_node.resize(g.nx);
    p.omega_x_half.resize(g.nx - 1);
    p.omega_y_node.resize(g.ny);
    p.omega_y_half.resize(g.ny - 1);
    for (int i = 0; i < g.nx; ++i) p.omega_x_node[i] = pml_loss((g.x(i) - g.x_min) / lx, sigma, b);
    for (int i = 0; i + 1 < g.nx; ++i)
        p.omega_x_half[i] = pml_loss((g.x(i) + 0.5 * g.h - g.x_min) / lx, sigma, b);
    for (int j = 0; j < g.ny; ++j) p.omega_y_node[j] = pml_loss((g.y(j) - g.y_min) / ly, sigma, b);
    for (int j = 0; j + 1 < g.ny; ++j)
        p.omega_y_half[j] = pml_loss((g.y(j) + 0.5 * g.h - g.y_min) / ly, sigma, b);
    return p;
}

std::vector<double> WaveState::pressure(const Grid2D& g) const {
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = u_x[k] + u_y[k];
    return u;
}

WaveSolver::WaveSolver(const ScalarField& c, const PMLProfile& pml, double dt) : grid_(c.grid) {
    double cmax = 0.0;
    for (double v : c.data) cmax = std::max(cmax, v);
    if (!(dt > 0.0)) throw std::invalid_argument("WaveSolver: dt must be positive");
    if (cmax * dt / grid_.h > 1.0 / std::sqrt(2.0) * (1.0 + 1e-12))
        throw std::invalid_argument("WaveSolver: CFL violation, need max(c) dt/h <= 1/sqrt(2)");

    c2_.resize(c.data.size());
    for (std::size_t k = 0; k < c2_.size(); ++k) c2_[k] = c.data[k] * c.data[k];

    const double h = grid_.h;
    auto coeffs = [&](const std::vector<double>& om, std::vector<double>& a,
                      std::vector<double>& bq) {
        a.resize(om.size());
        bq.resize(om.size());
        for (std::size_t k = 0; k < om.size(); ++k) {
            const double q = 0.5 * om[k] * dt;
            a[k] = (1.0 - q) / (1.0 + q);
            bq[k] = dt / (h * (1.0 + q));
        }
    };
    coeffs(pml.omega_x_half, va_x_, vb_x_);
    coeffs(pml.omega_y_half, va_y_, vb_y_);
    coeffs(pml.omega_x_node, ua_x_, ub_x_);
    coeffs(pml.omega_y_node, ua_y_, ub_y_);

    state_.u_x.assign(grid_.size(), 0.0);
    state_.u_y.assign(grid_.size(), 0.0);
    state_.v_x.assign(static_cast<std::size_t>(grid_.nx - 1) * grid_.ny, 0.0);
    state_.v_y.assign(static_cast<std::size_t>(grid_.nx) * (grid_.ny - 1), 0.0);
    state_.dt = dt;
}

void WaveSolver::set_initial_source(const ScalarField& f) {
    if (!f.grid.same_as(grid_)) throw std::invalid_argument("WaveSolver: source grid mismatch");
    const int nx = grid_.nx, ny = grid_.ny;
    const double q = 0.5 * state_.dt / grid_.h;  // v(-dt/2) = (dt/2) grad u(0)
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        state_.u_x[k] = 0.5 * f.data[k];
        state_.u_y[k] = 0.5 * f.data[k];
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i)
            state_.v_x[static_cast<std::size_t>(j) * (nx - 1) + i] =
                q * (f.at(i + 1, j) - f.at(i, j));
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i < nx; ++i)
            state_.v_y[static_cast<std::size_t>(j) * nx + i] = q * (f.at(i, j + 1) - f.at(i, j));
    state_.t = 0.0;
}

void WaveSolver::step() {
    const int nx = grid_.nx, ny = grid_.ny;
    auto& ux = state_.u_x;
    auto& uy = state_.u_y;
    auto& vx = state_.v_x;
    auto& vy = state_.v_y;

    for (int j = 0; j < ny; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * nx;
        const std::size_t vrow = static_cast<std::size_t>(j) * (nx - 1);
        for (int i = 0; i + 1 < nx; ++i) {
            const double du = (ux[row + i + 1] + uy[row + i + 1]) - (ux[row + i] + uy[row + i]);
            vx[vrow + i] = va_x_[i] * vx[vrow + i] - vb_x_[i] * du;
        }
    }
    for (int j = 0; j + 1 < ny; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double du = (ux[row + nx + i] + uy[row + nx + i]) - (ux[row + i] + uy[row + i]);
            vy[row + i] = va_y_[j] * vy[row + i] - vb_y_[j] * du;
        }
    }
    for (int j = 0; j < ny; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * nx;
        const std::size_t vrow = static_cast<std::size_t>(j) * (nx - 1);
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = row + i;
            const double divx = (i + 1 < nx ? vx[vrow + i] : 0.0) - (i > 0 ? vx[vrow + i - 1] : 0.0);
            const double divy = (j + 1 < ny ? vy[k] : 0.0) - (j > 0 ? vy[k - nx] : 0.0);
            ux[k] = ua_x_[i] * ux[k] - ub_x_[i] * c2_[k] * divx;
            uy[k] = ua_y_[j] * uy[k] - ub_y_[j] * c2_[k] * divy;
        }
    }
    state_.t += state_.dt;
}

bool BoundaryTrace::mask_is_full() const {
    for (double v : mask)
        if (v != 1.0) return false;
    return true;
}

BoundaryTrace apply_mask(const BoundaryTrace& trace, const std::vector<double>& mask) {
    if (mask.size() != trace.n_nodes()) throw std::invalid_argument("apply_mask: size mismatch");
    BoundaryTrace out = trace;
    const std::size_t nb = trace.n_nodes();
    for (int k = 0; k <= trace.n_steps; ++k)
        for (std::size_t p = 0; p < nb; ++p) out.values[static_cast<std::size_t>(k) * nb + p] *= mask[p];
    out.mask = mask;
    return out;
}

BoundaryTrace forward_measure(const ScalarField& f, const ScalarField& c, double T,
                              const PMLProfile& pml, const Region& omega, double cfl) {
    if (!(T > 0.0)) throw std::invalid_argument("forward_measure: T must be positive");
    if (!f.grid.same_as(c.grid) || !f.grid.same_as(omega.grid()))
        throw std::invalid_argument("forward_measure: grid mismatch");
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i)
            if (!omega.contains(i, j) && f.at(i, j) != 0.0)
                throw std::invalid_argument("forward_measure: source not supported in Omega");

    double cmax = 0.0;
    for (double v : c.data) cmax = std::max(cmax, v);
    const int n_steps = static_cast<int>(std::ceil(T / (cfl * f.grid.h / cmax) - 1e-12));
    const double dt = T / n_steps;

    WaveSolver solver(c, pml, dt);
    solver.set_initial_source(f);

    const auto& nodes = omega.boundary_nodes();
    const std::size_t nb = nodes.size();
    BoundaryTrace trace;
    trace.region = omega;
    trace.n_steps = n_steps;
    trace.dt = dt;
    trace.values.resize(static_cast<std::size_t>(n_steps + 1) * nb);
    trace.mask.assign(nb, 1.0);

    auto record = [&](int k) {
        const auto& s = solver.state();
        for (std::size_t p = 0; p < nb; ++p) {
            const std::size_t g = f.grid.idx(nodes[p].first, nodes[p].second);
            trace.values[static_cast<std::size_t>(k) * nb + p] = s.u_x[g] + s.u_y[g];
        }
    };
    record(0);
    for (int k = 1; k <= n_steps; ++k) {
        solver.step();
        record(k);
    }
    return trace;
}

double energy(const WaveState& s, const ScalarField& c, const Region& region) {
    const Grid2D& g = c.grid;
    if (s.u_x.size() != g.size()) throw std::invalid_argument("energy: state/grid mismatch");
    const auto& b = region.box();
    const int nx = g.nx, ny = g.ny;
    const double h = g.h, dt = s.dt;

    double grad_sum = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i < b.i1; ++i) {
            const std::size_t k = g.idx(i, j);
            const double d = (s.u_x[k + 1] + s.u_y[k + 1]) - (s.u_x[k] + s.u_y[k]);
            grad_sum += d * d;
        }
    for (int j = b.j0; j < b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const std::size_t k = g.idx(i, j);
            const double d = (s.u_x[k + nx] + s.u_y[k + nx]) - (s.u_x[k] + s.u_y[k]);
            grad_sum += d * d;
        }

    // u_t = -c^2 (div v^{n-1/2} + div v^{n+1/2}) / (2h); the forward half step
    // uses the undamped update (valid where the region avoids the collar).
    auto u_at = [&](int i, int j) { return s.u_x[g.idx(i, j)] + s.u_y[g.idx(i, j)]; };
    auto vx_at = [&](int i, int j) -> double {  // link (i+1/2, j)
        if (i < 0 || i + 1 >= nx) return 0.0;
        return s.v_x[static_cast<std::size_t>(j) * (nx - 1) + i];
    };
    auto vy_at = [&](int i, int j) -> double {  // link (i, j+1/2)
        if (j < 0 || j + 1 >= ny) return 0.0;
        return s.v_y[static_cast<std::size_t>(j) * nx + i];
    };
    auto vx_next = [&](int i, int j) -> double {
        if (i < 0 || i + 1 >= nx) return 0.0;
        return vx_at(i, j) - (dt / h) * (u_at(i + 1, j) - u_at(i, j));
    };
    auto vy_next = [&](int i, int j) -> double {
        if (j < 0 || j + 1 >= ny) return 0.0;
        return vy_at(i, j) - (dt / h) * (u_at(i, j + 1) - u_at(i, j));
    };

    double ut_sum = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double div_prev = (vx_at(i, j) - vx_at(i - 1, j)) + (vy_at(i, j) - vy_at(i, j - 1));
            const double div_next =
                (vx_next(i, j) - vx_next(i - 1, j)) + (vy_next(i, j) - vy_next(i, j - 1));
            const double c2 = c.at(i, j) * c.at(i, j);
            const double ut = -c2 * (div_prev + div_next) / (2.0 * h);
            ut_sum += ut * ut / c2;
        }
    return grad_sum + ut_sum * h * h;
}

}  // namespace tat
