#pragma once
// Partial-data observation cutoff chi: a function of the boundary point only,
// 1 on observed sides, 0 on unobserved ones, cosine ramp near mask edges.

#include <string>
#include <vector>

#include "tat/eikonal.hpp"
#include "tat/grid.hpp"

namespace tat {

struct BoundaryMask {
    GammaSides sides;  // observed sides
    double ramp = 0.2;
    double omega_half_width = 1.28;

    static BoundaryMask full() { return {}; }
    static BoundaryMask of_sides(const std::string& s, double ramp = 0.2);

    bool is_full() const { return sides.south && sides.east && sides.north && sides.west; }

    // chi at a point of the square boundary (snapped to the nearest side).
    double value(double x, double y) const;

    // chi sampled at the region's frame nodes, perimeter-walk order.
    std::vector<double> sample(const Region& region) const;
};

}  // namespace tat
