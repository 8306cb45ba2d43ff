#ifndef CLR_OPTIMIZE_HPP
#define CLR_OPTIMIZE_HPP

#include "clr/errors.hpp"
#include "clr/numerics.hpp"
#include "clr/trial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace clr {

struct Optimum {
    TrialParams params;
    ObjectiveBreakdown breakdown;
    double c_gamma;
    bool converged;
    long evaluations;
};

// Raised when no (p, q) cell converges; carries the best point seen.
class OptimizeFailure : public ConvergenceFailure {
public:
    OptimizeFailure(const std::string& msg, Optimum best)
        : ConvergenceFailure(msg, best.breakdown.objective), best_(std::move(best)) {}
    const Optimum& best() const { return best_; }

private:
    Optimum best_;
};

// default cell sweep (p, q) in {1..4} x {1..4}
std::vector<std::pair<int, int>> default_cells();

// the cells used for the published per-dimension values:
// (2, 3) for gamma < 5, (3, 2) for gamma >= 5
std::vector<std::pair<int, int>> paper_cells(double gamma);

// default (alpha, beta) range (1 + 1e-6, 60]
std::pair<double, double> default_param_range();

// Minimize the trial objective over the given cells and (alpha, beta) box.
// The search runs in (log(alpha-1), log(beta-1)) coordinates and is
// deterministic for a fixed seed. Ties within f_tol go to the smallest p,
// then the smallest q.
Optimum optimize_trial(double gamma, const std::vector<std::pair<int, int>>& pq_cells,
                       std::pair<double, double> alpha_range,
                       std::pair<double, double> beta_range, const SearchSpec& spec,
                       const QuadratureSpec& quad = {});

// Best known upper bound on M_gamma: the optimized trial value capped by the
// closed-form bound 8/(gamma (gamma-2) (gamma+2)). Falls back to the closed
// form if the optimizer fails.
double mgamma_upper(double gamma, const SearchSpec& spec, const QuadratureSpec& quad = {});

} // namespace clr

#endif
