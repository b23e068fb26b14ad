#pragma once
// Neumann-series reconstruction driver f = sum_m K^m A h for full data,
// partial data (masked trace, norm-increase safeguard) and discontinuous
// speeds (projection onto H_D(K) after each back projection), plus the
// plain time-reversal baseline (the zeroth iterate).

#include <optional>
#include <string>
#include <vector>

#include "tat/grid.hpp"
#include "tat/wave.hpp"

namespace tat {

enum class StopReason { tolerance, max_terms, norm_increase };
std::string to_string(StopReason r);

enum class StopDecision { keep_going, tolerance, max_terms, norm_increase };

// The paper's stop rule on the sequence of term norms: norm increase (only
// under a partial mask), then tolerance (norm / first norm < tol), then
// term budget.
StopDecision stop_decision(const std::vector<double>& term_norms, double tol, int max_terms,
                           bool partial_mask);

struct NeumannOptions {
    int max_terms = 21;
    double tol = 0.05;                  // relative term-norm tolerance; 0 disables
    std::optional<Region> region_K;     // discontinuous-speed mode: project onto H_D(K)
    const ScalarField* ground_truth = nullptr;  // fills rel_errors when given
    double cfl = 0.5;
};

struct ReconstructionReport {
    std::vector<ScalarField> iterates;  // partial sums g_0..g_k
    std::vector<double> term_norms;     // hd_norm of each accumulated-or-rejected term
    std::vector<double> rel_errors;     // per accumulated iterate, when truth given
    StopReason stop_reason = StopReason::max_terms;
    int k_used = 0;

    const ScalarField& final_field() const { return iterates.back(); }
    double final_error() const { return rel_errors.back(); }
    std::string to_json() const;
};

// Neumann series from a recorded trace. The trace's mask is honored: the
// driver applies chi to the data and to every re-measured iterate, and uses
// the norm-increase stop rule when the mask is partial.
ReconstructionReport reconstruct_ns(const BoundaryTrace& trace, const ScalarField& c, double T,
                                    const PMLProfile& pml, const NeumannOptions& opts = {});

// Classical time reversal: the zeroth iterate of the same pipeline.
ScalarField reconstruct_tr(const BoundaryTrace& trace, const ScalarField& c, double T,
                           const PMLProfile& pml, const NeumannOptions& opts = {});

}  // namespace tat
