#pragma once
// Forward acoustic solver: first-order velocity-pressure system with split
// pressure and perfectly matched layers on a staggered grid. Realizes the
// measurement operator: f -> pressure trace on the Omega frame over [0, T].

#include <vector>

#include "tat/grid.hpp"

namespace tat {

// PML loss profile omega(s) on the rescaled coordinate s in [0,1]:
// (b/sigma)((s-sigma)/sigma)^2 on [0,sigma], zero on [sigma,1-sigma],
// mirrored on [1-sigma,1]. Throws for s outside [0,1].
double pml_loss(double s, double sigma, double b);

struct PMLProfile {
    double sigma = 0.22 / 3.0;  // collar fraction of the box width
    double b = 100.0;           // loss amplitude
    // Per-node / per-half-node loss values, filled by build().
    std::vector<double> omega_x_node, omega_x_half;
    std::vector<double> omega_y_node, omega_y_half;

    static PMLProfile build(const Grid2D& g, double sigma = 0.22 / 3.0, double b = 100.0);
    static PMLProfile none(const Grid2D& g) { return build(g, 0.25, 0.0); }
};

struct WaveState {
    // Split pressure u = u_x + u_y at integer nodes (time t); velocities at
    // half nodes, staggered to t - dt/2: v_x at (i+1/2, j), v_y at (i, j+1/2).
    std::vector<double> u_x, u_y;  // nx * ny
    std::vector<double> v_x;       // (nx-1) * ny
    std::vector<double> v_y;       // nx * (ny-1)
    double t = 0.0;
    double dt = 0.0;

    std::vector<double> pressure(const Grid2D& g) const;  // u_x + u_y
};

class WaveSolver {
  public:
    // Throws when dt violates the CFL bound max(c) dt / h <= 1/sqrt(2).
    WaveSolver(const ScalarField& c, const PMLProfile& pml, double dt);

    // Initial data (f, 0): even pressure split, velocities at -dt/2.
    void set_initial_source(const ScalarField& f);
    void set_state(WaveState s) { state_ = std::move(s); }

    void step();
    const WaveState& state() const { return state_; }
    const Grid2D& grid() const { return grid_; }
    double dt() const { return state_.dt; }

  private:
    Grid2D grid_;
    std::vector<double> c2_;
    // Damping factors folded into the update coefficients, per line index.
    std::vector<double> va_x_, vb_x_, va_y_, vb_y_;  // velocity updates (half nodes)
    std::vector<double> ua_x_, ub_x_, ua_y_, ub_y_;  // pressure updates (nodes)
    WaveState state_;
};

// Measurement trace h(t_k, p) on the frame of a Region, every time step,
// k = 0..n_steps, plus the observation mask chi(p) in [0,1] per frame node
// (walk order, all ones by default).
struct BoundaryTrace {
    Region region;
    int n_steps = 0;  // samples = n_steps + 1, n_steps * dt = T
    double dt = 0.0;
    std::vector<double> values;  // time-major: values[k * nb + p]
    std::vector<double> mask;

    std::size_t n_nodes() const { return region.n_boundary(); }
    double duration() const { return n_steps * dt; }
    double at(int k, std::size_t p) const { return values[static_cast<std::size_t>(k) * n_nodes() + p]; }
    bool mask_is_full() const;
};

// Multiply the trace by a per-node mask (chi as a function of x only).
BoundaryTrace apply_mask(const BoundaryTrace& trace, const std::vector<double>& mask);

// Solve (1) from (f, 0) and record u on the Omega frame at every step up to
// T. f must vanish outside the closure of omega. dt = cfl h / max(c),
// shrunk so that T is an integer number of steps.
BoundaryTrace forward_measure(const ScalarField& f, const ScalarField& c, double T,
                              const PMLProfile& pml, const Region& omega, double cfl = 0.5);

// Discrete energy over a region: sum of |grad u|^2 on region links plus
// c^-2 |u_t|^2 at region nodes (times h^2), with u_t = -c^2 div v averaged
// between the state's staggered velocities and the next half step (undamped
// links assumed within the region).
double energy(const WaveState& s, const ScalarField& c, const Region& region);

}  // namespace tat
