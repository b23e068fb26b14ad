#pragma once
// Sound speed models c(x). Five paper speeds plus constant and custom kinds.
// All models equal 1 outside Omega = [-1.28, 1.28]^2; the smooth kinds blend
// to 1 over a collar of width cutoff_width ending at the Omega edge.

#include <array>
#include <functional>
#include <vector>

#include "tat/grid.hpp"

namespace tat {

enum class SpeedKind { c1, c2, c3, c4, c5, constant, custom };

struct SpeedModel {
    SpeedKind kind = SpeedKind::constant;
    std::vector<double> params;   // constant: {value}; other kinds ignore it
    double cutoff_width = 0.3;    // smooth-transition collar, ends at the Omega edge
    double omega_half_width = 1.28;

    // Custom evaluator/gradient of the raw (pre-cutoff) speed.
    std::function<double(double, double)> custom_eval;
    std::function<std::array<double, 2>(double, double)> custom_grad;

    static SpeedModel make(SpeedKind k, std::vector<double> params = {});
    static SpeedModel constant(double value) { return make(SpeedKind::constant, {value}); }

    // Speed (cutoff applied) and its gradient at a point.
    double operator()(double x, double y) const;
    std::array<double, 2> grad(double x, double y) const;

    // c4/c5 are discontinuous across the square interface S = d[-1,1]^2.
    bool smooth() const { return kind != SpeedKind::c4 && kind != SpeedKind::c5; }

    // Half-width of S (c4/c5 only) and the one-sided limits across it.
    double interface_half_width() const { return 1.0; }
    double inner_limit(double x, double y) const;  // limit from inside S
    double outer_limit(double x, double y) const;  // limit from outside S
    // One-sided speed/gradient for integrating segments that hug S.
    double side_eval(double x, double y, bool inside) const;
    std::array<double, 2> side_grad(double x, double y, bool inside) const;

    // Max of c over the computational box (dense sampling; >= 1 by the collar).
    double max_speed() const;
};

// Sample c at grid nodes. Throws if any evaluated value is <= 0.
ScalarField eval_speed(const SpeedModel& model, const Grid2D& grid);

// Quintic smoothstep, clamped: 0 for t<=0, 1 for t>=1, C^2 at both ends.
double smoothstep(double t);

// p=16 power mean of |x|,|y|: a smooth stand-in for max(|x|,|y|), >= it.
double smooth_max_norm(double x, double y);

}  // namespace tat
