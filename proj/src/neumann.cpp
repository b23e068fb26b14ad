#include "tat/neumann.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "tat/elliptic.hpp"
#include "tat/time_reversal.hpp"

namespace tat {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::tolerance: return "tolerance";
        case StopReason::max_terms: return "max_terms";
        case StopReason::norm_increase: return "norm_increase";
    }
    return "?";
}

StopDecision stop_decision(const std::vector<double>& term_norms, double tol, int max_terms,
                           bool partial_mask) {
    if (term_norms.empty()) throw std::invalid_argument("stop_decision: no term norms");
    const std::size_t m = term_norms.size();
    if (partial_mask && m >= 2 && term_norms[m - 1] > term_norms[m - 2])
        return StopDecision::norm_increase;
    if (tol > 0.0 && term_norms[m - 1] < tol * term_norms[0]) return StopDecision::tolerance;
    if (static_cast<int>(m) >= max_terms) return StopDecision::max_terms;
    return StopDecision::keep_going;
}

namespace {

// Zero the field outside the closure of Omega (H_D membership for re-entry
// into the forward solver).
void clamp_outside(ScalarField& f, const Region& omega) {
    const auto& b = omega.box();
    const Grid2D& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!b.contains(i, j)) f.at(i, j) = 0.0;
}

}  // namespace

ReconstructionReport reconstruct_ns(const BoundaryTrace& trace, const ScalarField& c, double T,
                                    const PMLProfile& pml, const NeumannOptions& opts) {
    if (opts.max_terms < 1) throw std::invalid_argument("reconstruct_ns: max_terms < 1");
    const Region& omega = trace.region;
    if (opts.region_K) {
        const auto& kb = opts.region_K->box();
        const auto& ob = omega.box();
        if (kb.i0 <= ob.i0 || kb.j0 <= ob.j0 || kb.i1 >= ob.i1 || kb.j1 >= ob.j1)
            throw std::invalid_argument("reconstruct_ns: region_K must be strictly inside Omega");
    }
    const bool partial = !trace.mask_is_full();

    // chi is baked into the data once; re-measured iterates get it per term.
    BoundaryTrace data = apply_mask(trace, trace.mask);

    auto back_project = [&](const BoundaryTrace& tr) {
        ScalarField a = time_reverse(tr, c, T);
        if (opts.region_K) a = project_hd(a, *opts.region_K);
        clamp_outside(a, omega);
        return a;
    };

    ReconstructionReport rep;
    ScalarField term = back_project(data);  // A chi h
    ScalarField g = term;
    rep.term_norms.push_back(hd_norm(term, omega));
    rep.iterates.push_back(g);
    if (opts.ground_truth) rep.rel_errors.push_back(l2_rel_error(g, *opts.ground_truth, omega));
    rep.k_used = 0;

    StopDecision d = stop_decision(rep.term_norms, opts.tol, opts.max_terms, partial);
    while (d == StopDecision::keep_going) {
        // K term = term - A chi Lambda term
        BoundaryTrace re = forward_measure(term, c, T, pml, omega, opts.cfl);
        re = apply_mask(re, trace.mask);
        ScalarField a = back_project(re);
        for (std::size_t k = 0; k < term.data.size(); ++k) term.data[k] -= a.data[k];

        rep.term_norms.push_back(hd_norm(term, omega));
        d = stop_decision(rep.term_norms, opts.tol, opts.max_terms, partial);
        if (d == StopDecision::norm_increase) break;  // increasing term is not accumulated

        for (std::size_t k = 0; k < g.data.size(); ++k) g.data[k] += term.data[k];
        rep.iterates.push_back(g);
        if (opts.ground_truth) rep.rel_errors.push_back(l2_rel_error(g, *opts.ground_truth, omega));
        rep.k_used = static_cast<int>(rep.iterates.size()) - 1;
    }

    switch (d) {
        case StopDecision::tolerance: rep.stop_reason = StopReason::tolerance; break;
        case StopDecision::norm_increase: rep.stop_reason = StopReason::norm_increase; break;
        default: rep.stop_reason = StopReason::max_terms; break;
    }
    return rep;
}

ScalarField reconstruct_tr(const BoundaryTrace& trace, const ScalarField& c, double T,
                           const PMLProfile& pml, const NeumannOptions& opts) {
    NeumannOptions one = opts;
    one.max_terms = 1;
    return reconstruct_ns(trace, c, T, pml, one).final_field();
}

std::string ReconstructionReport::to_json() const {
    nlohmann::json j;
    j["k_used"] = k_used;
    j["stop_reason"] = to_string(stop_reason);
    j["term_norms"] = term_norms;
    j["rel_errors"] = rel_errors;
    return j.dump(2);
}

}  // namespace tat
