#ifndef CLR_NUMERICS_HPP
#define CLR_NUMERICS_HPP

#include <functional>
#include <utility>
#include <vector>

namespace clr {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class QuadMethod { AdaptiveInterval, DoubleExponential };

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    QuadMethod method = QuadMethod::AdaptiveInterval;

    void validate() const;
};

struct QuadratureResult {
    double value;
    double err_estimate;
};

// Integrate f over (a, b). Either endpoint may be infinite; a = 0 is treated
// as an open endpoint (f is never evaluated at the endpoints themselves).
// Infinite ranges are mapped to finite ones by rational substitutions before
// the adaptive Gauss-Kronrod (or double-exponential) rule is applied.
//
// Throws InvalidInput on NaN from the integrand, ConvergenceFailure (carrying
// the partial value) when max_subdivisions is exhausted.
QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double a, double b,
                              const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

struct SearchSpec {
    int restarts = 16;
    unsigned long long seed = 42;
    int max_iterations = 4000;
    double x_tol = 1e-9;
    double f_tol = 1e-12;
    std::vector<std::pair<double, double>> box; // per-coordinate (lo, hi)

    void validate() const;
};

struct ScalarMin {
    double argmin;
    double min;
};

// Brent minimization of a continuous unimodal f on (lo, hi).
// Throws BracketFailure when the minimum sits at the bracket edge.
ScalarMin minimize_scalar(const std::function<double(double)>& f,
                          double lo, double hi,
                          const SearchSpec& spec = {});

struct SimplexTracePoint {
    int iteration;
    double best_f;
};

struct SimplexResult {
    std::vector<double> argmin;
    double min;
    long evaluations;
    bool converged;
    std::vector<SimplexTracePoint> trace;
};

// Nelder-Mead over spec.box with deterministic low-discrepancy restarts
// derived from spec.seed. Out-of-box trial points are penalized by
// 1e6 * squared distance to the box. Bitwise deterministic for a fixed spec.
SimplexResult minimize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const SearchSpec& spec);

// Deterministic sum with pairwise reduction (order-independent grouping).
double pairwise_sum(const std::vector<double>& xs);

} // namespace clr

#endif
