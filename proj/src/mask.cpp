#include "tat/mask.hpp"

#include <algorithm>
#include <cmath>

namespace tat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cos_ramp(double d, double ramp) {  // 0 at d=0, 1 at d>=ramp
    if (ramp <= 0.0) return d > 0.0 ? 1.0 : 0.0;
    const double t = std::clamp(d / ramp, 0.0, 1.0);
    return 0.5 * (1.0 - std::cos(kPi * t));
}

}  // namespace

BoundaryMask BoundaryMask::of_sides(const std::string& s, double ramp) {
    BoundaryMask m;
    m.sides = GammaSides::from_string(s);
    m.ramp = ramp;
    return m;
}

double BoundaryMask::value(double x, double y) const {
    const double hw = omega_half_width;
    // Distance along each side to a corner shared with an unobserved side;
    // chi ramps down to zero into that corner. Take the best observed side.
    struct Side {
        bool observed;
        double along;            // coordinate along the side, in [-hw, hw]
        bool lo_open, hi_open;   // neighbor side at along=-hw / +hw unobserved?
        double dist_to_side;
    };
    const Side sides_arr[4] = {
        {sides.south, x, !sides.west, !sides.east, std::abs(y + hw)},
        {sides.north, x, !sides.west, !sides.east, std::abs(y - hw)},
        {sides.west, y, !sides.south, !sides.north, std::abs(x + hw)},
        {sides.east, y, !sides.south, !sides.north, std::abs(x - hw)},
    };
    double best = 0.0;
    double best_dist = 1e300;
    for (const auto& s : sides_arr) {
        if (!s.observed) {
            if (s.dist_to_side < best_dist - 1e-12) {
                best_dist = s.dist_to_side;
                best = 0.0;
            }
            continue;
        }
        double v = 1.0;
        if (s.lo_open) v = std::min(v, cos_ramp(s.along + hw, ramp));
        if (s.hi_open) v = std::min(v, cos_ramp(hw - s.along, ramp));
        if (s.dist_to_side < best_dist - 1e-12) {
            best_dist = s.dist_to_side;
            best = v;
        } else if (s.dist_to_side < best_dist + 1e-12) {
            best = std::max(best, v);  // corners belong to both sides
        }
    }
    return best;
}

std::vector<double> BoundaryMask::sample(const Region& region) const {
    const auto& nodes = region.boundary_nodes();
    std::vector<double> chi(nodes.size());
    BoundaryMask m = *this;
    m.omega_half_width = 0.5 * (region.x_hi() - region.x_lo());
    const double cx = 0.5 * (region.x_hi() + region.x_lo());
    const double cy = 0.5 * (region.y_hi() + region.y_lo());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double x = region.grid().x(nodes[k].first) - cx;
        const double y = region.grid().y(nodes[k].second) - cy;
        chi[k] = m.value(x, y);
    }
    return chi;
}

}  // namespace tat
