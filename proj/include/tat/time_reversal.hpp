#pragma once
// The modified back projection A (backward mixed problem on Omega with
// harmonic-extension terminal data) and the error operator K = Id - A Lambda.

#include "tat/grid.hpp"
#include "tat/wave.hpp"

namespace tat {

// A h: solve the wave equation on Omega backward from t = T with terminal
// pressure = harmonic extension of h(T, .), terminal velocity 0, and the
// trace enforced as Dirichlet data at every step; returns v(0, .) on the
// closure of Omega (zero outside). The trace's own dt/step count are used;
// T must match the trace duration to within one dt.
ScalarField time_reverse(const BoundaryTrace& trace, const ScalarField& c, double T);

// K f = f - time_reverse(mask . forward_measure(f)). With the full mask this
// is the discrete error operator of the Neumann series.
ScalarField apply_error_operator(const ScalarField& f, const ScalarField& c, double T,
                                 const PMLProfile& pml, const Region& omega,
                                 const std::vector<double>& mask);

}  // namespace tat
