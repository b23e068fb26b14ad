#pragma once
// Fast-sweeping solver for c|grad T| = 1 with T = 0 on a boundary subset
// Gamma, and the critical time T0 = max T over the region.

#include <string>
#include <vector>

#include "tat/grid.hpp"

namespace tat {

// Which sides of the region frame belong to Gamma.
struct GammaSides {
    bool south = true, east = true, north = true, west = true;

    static GammaSides all() { return {}; }
    static GammaSides from_string(const std::string& s);  // e.g. "WN", "NSEW"
    bool any() const { return south || east || north || west; }
};

struct EikonalResult {
    ScalarField traveltime;  // T on the region closure; +inf outside the region box
    int sweeps = 0;          // directional sweeps until the fixed point
};

// Godunov upwind fast sweeping over 4 alternating orderings, iterated until
// the max update drops below 1e-10. gamma_mask must be true on at least one
// region node; T = 0 there.
EikonalResult fast_sweep(const ScalarField& c, const Region& region,
                         const std::vector<unsigned char>& gamma_mask);

// Convenience: Gamma = whole frame or a subset of its sides.
EikonalResult fast_sweep(const ScalarField& c, const Region& region,
                         const GammaSides& sides = GammaSides::all());

// Max of the travel time over the region closure.
double critical_time(const ScalarField& traveltime, const Region& region);

}  // namespace tat
