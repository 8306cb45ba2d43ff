#include "clr/optimize.hpp"
#include "clr/constants.hpp"
#include "clr/errors.hpp"

#include <cmath>
#include <limits>

namespace clr {

std::vector<std::pair<int, int>> default_cells() {
    std::vector<std::pair<int, int>> cells;
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) cells.push_back({p, q});
    return cells;
}

std::vector<std::pair<int, int>> paper_cells(double gamma) {
    if (gamma < 5.0) return {{2, 3}};
    return {{3, 2}};
}

std::pair<double, double> default_param_range() { return {1.0 + 1e-6, 60.0}; }

Optimum optimize_trial(double gamma, const std::vector<std::pair<int, int>>& pq_cells,
                       std::pair<double, double> alpha_range,
                       std::pair<double, double> beta_range, const SearchSpec& spec,
                       const QuadratureSpec& quad) {
    if (!(gamma > 2.0))
        throw InvalidInput("optimize_trial: gamma must exceed 2");
    if (pq_cells.empty())
        throw InvalidInput("optimize_trial: no cells given");
    if (!(alpha_range.first > 1.0) || !(beta_range.first > 1.0))
        throw InvalidInput("optimize_trial: the (alpha, beta) box must lie in (1, inf)^2");

    Optimum best;
    best.breakdown.objective = std::numeric_limits<double>::infinity();
    best.converged = false;
    best.evaluations = 0;
    bool any_converged = false;
    bool have = false;

    SearchSpec cell_spec = spec;
    cell_spec.box = {{std::log(alpha_range.first - 1.0), std::log(alpha_range.second - 1.0)},
                     {std::log(beta_range.first - 1.0), std::log(beta_range.second - 1.0)}};

    for (const auto& [p, q] : pq_cells) {
        TrialParams tp;
        tp.p = p;
        tp.q = q;
        auto objective = [&](const std::vector<double>& z) {
            TrialParams t = tp;
            t.alpha = 1.0 + std::exp(z[0]);
            t.beta = 1.0 + std::exp(z[1]);
            return trial_objective(t, gamma, quad).objective;
        };
        SimplexResult r = minimize_simplex(objective, cell_spec);
        best.evaluations += r.evaluations;
        any_converged = any_converged || r.converged;

        TrialParams opt = tp;
        opt.alpha = 1.0 + std::exp(r.argmin[0]);
        opt.beta = 1.0 + std::exp(r.argmin[1]);
        ObjectiveBreakdown bd = trial_objective(opt, gamma, quad);

        bool better;
        if (!have)
            better = true;
        else if (bd.objective < best.breakdown.objective - spec.f_tol)
            better = true;
        else if (bd.objective <= best.breakdown.objective + spec.f_tol &&
                 (opt.p < best.params.p ||
                  (opt.p == best.params.p && opt.q < best.params.q)))
            better = true;
        else
            better = false;
        if (better) {
            best.params = opt;
            best.breakdown = bd;
            best.c_gamma = bd.c_gamma;
            best.converged = r.converged;
            have = true;
        }
    }

    if (!any_converged)
        throw OptimizeFailure("optimize_trial: no cell converged", best);
    return best;
}

double mgamma_upper(double gamma, const SearchSpec& spec, const QuadratureSpec& quad) {
    if (!(gamma > 2.0))
        throw InvalidInput("mgamma_upper: gamma must exceed 2");
    const double closed = 8.0 / (gamma * (gamma - 2.0) * (gamma + 2.0));
    try {
        Optimum opt = optimize_trial(gamma, default_cells(), default_param_range(),
                                     default_param_range(), spec, quad);
        return std::min(opt.breakdown.objective, closed);
    } catch (const OptimizeFailure& e) {
        return std::min(e.best().breakdown.objective, closed);
    } catch (const ConvergenceFailure&) {
        return closed;
    }
}

} // namespace clr
