#pragma once
// Unit-speed geodesics of the metric c^-2 dx^2, broken rays across the
// square interface of the discontinuous speeds (Snell's law / full internal
// reflection), exit times, T1 estimation, visibility maps and the principal
// symbol of the error operator.

#include <array>
#include <string>
#include <vector>

#include "tat/grid.hpp"
#include "tat/mask.hpp"
#include "tat/speed.hpp"

namespace tat {

struct RayState {
    std::array<double, 2> x{};  // position
    std::array<double, 2> p{};  // momentum covector, c|p| = 1 along trajectories
    double t = 0.0;
};

enum class RayEventKind {
    exit_boundary,
    reflect,
    transmit,
    total_internal_reflection,
    trapped_cap,
    tangent_rejected,
};

std::string to_string(RayEventKind k);

struct RayEvent {
    RayEventKind kind{};
    std::array<double, 2> location{};
    double time = 0.0;
    // Snell bookkeeping for interface events.
    double sin_in = 0.0, sin_out = 0.0, c_in = 0.0, c_out = 0.0;
};

struct GeodesicResult {
    std::vector<RayState> path;  // sampled when keep_path is set
    bool exited = false;
    std::array<double, 2> exit_point{};
    std::array<double, 2> exit_dir{};
    double exit_time = 0.0;           // equals t_max when trapped
    double hamiltonian_drift = 0.0;   // max |c(x)|p| - 1| along the ray
};

// RK4 integration of H = c^2|p|^2/2 from x0 in direction theta (radians),
// until the first Omega exit or t_max. Smooth speed kinds only.
GeodesicResult trace_geodesic(std::array<double, 2> x0, double theta, const SpeedModel& c,
                              double t_max, double dt = 0.0025, bool keep_path = false);

enum class BranchPolicy { strongest, tree };

struct BrokenRayResult {
    std::vector<RayEvent> events;
    bool exited = false;
    std::array<double, 2> exit_point{};
    double exit_time = 0.0;
    bool tangent_hit = false;
};

// Ray tracing for the discontinuous speeds (c4/c5): straight RK4 segments
// between hits of the interface square S; at each hit either full internal
// reflection (toward faster side, angle beyond critical) or a Snell split.
// `strongest` follows the transmitted branch (reflected when none exists);
// `tree` searches all branches up to depth_cap and reports the earliest exit.
BrokenRayResult trace_broken_ray(std::array<double, 2> x0, double theta, const SpeedModel& c,
                                 double t_max, BranchPolicy policy = BranchPolicy::strongest,
                                 int depth_cap = 12, double dt = 0.0025);

// sin(alpha_0): full internal reflection occurs beyond alpha_0 = asin(c_in/c_out).
double critical_angle(double c_in, double c_out);

// Fraction of directions visible from each sampled node: a direction is
// visible when one of the two rays through (x, theta) reaches the boundary
// (chi >= 1/2 at the exit when a mask is given) within time T. Sampled on a
// stride sub-lattice; blocks are filled with their sample's value.
ScalarField visibility_classify(const Region& k_region, const SpeedModel& c, double T,
                                int n_dirs, const BoundaryMask* chi = nullptr, int stride = 0,
                                double dt = 0.005);

struct T1Estimate {
    double value = 0.0;
    bool exceeds_cap = false;
};

// Max over stratified positions x directions of tau+ + tau- (total geodesic
// time through the point), capped per leg.
T1Estimate estimate_T1(const SpeedModel& c, const Region& region, int positions_per_axis,
                       double cap, int n_dirs = 64, double dt = 0.0025);

// Principal symbol of K at (x, xi): 1 - chi(exit+)/2 - chi(exit-)/2.
// Throws when either geodesic fails to exit within the cap.
double symbol_of_K(std::array<double, 2> x, std::array<double, 2> xi, const BoundaryMask& chi,
                   const SpeedModel& c, double cap = 50.0, double dt = 0.0025);

}  // namespace tat
