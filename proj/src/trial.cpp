#include "clr/trial.hpp"
#include "clr/constants.hpp"
#include "clr/errors.hpp"
#include "clr/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace clr {

void TrialParams::validate() const {
    if (p < 1 || p > kMaxShape || q < 1 || q > kMaxShape)
        throw UnsupportedOrder("TrialParams: shapes must be integers in [1, " +
                               std::to_string(kMaxShape) + "]");
    if (!(alpha > 1.0) || !(beta > 1.0))
        throw InvalidInput("TrialParams: rates must exceed 1");
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

double k_closed(double alpha1, double alpha2) {
    if (!(alpha1 + alpha2 > 2.0))
        throw InvalidInput("k_closed: need alpha1 + alpha2 > 2 (divergent otherwise)");
    return (alpha1 + alpha2) / (alpha1 * alpha2 * (alpha1 + alpha2 - 2.0));
}

namespace {

// Terms coef * a1^{-i} a2^{-j} S^{-k} with S = a1 + a2 - 2 are closed under
// d/d a1 and d/d a2; K itself is 1/(a1 a2) + 2/(a1 a2 S). Coefficients stay
// integral, all of one sign, and fit __int128 comfortably for p <= 8.
using KTerms = std::map<std::tuple<int, int, int>, __int128>;

KTerms diff_a1(const KTerms& in) {
    KTerms out;
    for (const auto& [key, c] : in) {
        auto [i, j, k] = key;
        out[{i + 1, j, k}] -= c * i;
        if (k > 0) out[{i, j, k + 1}] -= c * k;
    }
    return out;
}

KTerms diff_a2(const KTerms& in) {
    KTerms out;
    for (const auto& [key, c] : in) {
        auto [i, j, k] = key;
        out[{i, j + 1, k}] -= c * j;
        if (k > 0) out[{i, j, k + 1}] -= c * k;
    }
    return out;
}

} // namespace

double m1_norm_sq(int p, double alpha) {
    if (p < 1 || p > kMaxShape)
        throw UnsupportedOrder("m1_norm_sq: p must be in [1, " +
                               std::to_string(kMaxShape) + "]");
    if (!(alpha > 1.0))
        throw InvalidInput("m1_norm_sq: alpha must exceed 1");
    KTerms terms{{{1, 1, 0}, 1}, {{1, 1, 1}, 2}};
    for (int r = 1; r < p; ++r) {
        terms = diff_a1(terms);
        terms = diff_a2(terms);
    }
    const double s = 2.0 * (alpha - 1.0);
    double acc = 0.0;
    for (const auto& [key, c] : terms) {
        auto [i, j, k] = key;
        acc += static_cast<double>(static_cast<long double>(c)) *
               std::pow(alpha, -(i + j)) * std::pow(s, -k);
    }
    return 0.5 * std::exp(2.0 * p * std::log(alpha) - 2.0 * log_gamma(p)) * acc;
}

double m2_norm_sq(int q, double beta) {
    if (q < 1 || q > kMaxShape)
        throw UnsupportedOrder("m2_norm_sq: q must be in [1, " +
                               std::to_string(kMaxShape) + "]");
    if (!(beta > 1.0))
        throw InvalidInput("m2_norm_sq: beta must exceed 1");
    return std::exp(2.0 * q * std::log(beta) - (2.0 * q - 1.0) * std::log(2.0 * (beta - 1.0)) +
                    log_gamma(2.0 * q - 1.0) - 2.0 * log_gamma(q));
}

// ---------------------------------------------------------------------------
// trial functions on a grid
// ---------------------------------------------------------------------------

std::pair<ScaleFn, ScaleFn> make_trial(const TrialParams& params, const LogGridLayout& grid) {
    params.validate();
    std::vector<double> nodes = ScaleFn::layout_nodes(grid);
    const double xhi = std::log(nodes.back());
    if (xhi <= 0.0 || gamma_q(params.p, params.alpha * xhi) > 1e-10 ||
        gamma_q(params.q, params.beta * xhi) > 1e-10)
        throw ResolutionError("make_trial: grid too narrow to hold 1 - 1e-10 of the mass");

    // normalization of the log-variable densities (the paper's dr/r integrals)
    QuadratureSpec qs;
    qs.rel_tol = 1e-12;
    for (int which = 0; which < 2; ++which) {
        const int k = which == 0 ? params.p : params.q;
        const double r = which == 0 ? params.alpha : params.beta;
        auto dens = [&](double x) {
            return std::exp(k * std::log(r) + (k - 1) * std::log(x) - r * x - log_gamma(k));
        };
        double total = integrate_1d(dens, 0.0, std::numeric_limits<double>::infinity(), qs).value;
        if (std::fabs(total - 1.0) > 1e-10)
            throw ResolutionError("make_trial: normalization check failed");
    }

    std::vector<double> v1(nodes.size()), v2(nodes.size());
    const double lpsi = params.q * std::log(params.beta) - log_gamma(params.q);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double s = nodes[i];
        const double x = std::log(s);
        if (x <= 0.0) {
            v1[i] = s;
            v2[i] = 0.0;
        } else {
            v1[i] = s * gamma_q(params.p, params.alpha * x);
            v2[i] = std::exp(lpsi + (params.q - 1) * std::log(x) + (1.0 - params.beta) * x);
        }
    }
    return {ScaleFn::log_grid(nodes, std::move(v1)), ScaleFn::log_grid(nodes, std::move(v2))};
}

// ---------------------------------------------------------------------------
// the two-rate Gamma sum U = X + Y
// ---------------------------------------------------------------------------

namespace {

// Density and distribution function of the sum of independent Gamma(pa, a)
// and Gamma(pb, b) variables, arranged so that a >= b. Evaluated through
// positive-term confluent series (no cancellation for any rate ratio); the
// near-coincident case is merged into a single Gamma(pa+pb, (a+b)/2).
struct GammaSum {
    int pa, pb;
    double a, b;
    bool merged;
    double rate; // merged rate

    GammaSum(const TrialParams& t) {
        if (t.alpha >= t.beta) {
            pa = t.p; a = t.alpha; pb = t.q; b = t.beta;
        } else {
            pa = t.q; a = t.beta; pb = t.p; b = t.alpha;
        }
        merged = std::fabs(t.alpha - t.beta) < 1e-6;
        rate = 0.5 * (t.alpha + t.beta);
    }

    double density(double u) const {
        if (!(u > 0.0)) return 0.0;
        const int n = pa + pb;
        if (merged)
            return std::exp(n * std::log(rate) + (n - 1) * std::log(u) - rate * u -
                            log_gamma(n));
        const double w = (a - b) * u;
        const double logu = std::log(u);
        // crude underflow guard: f <= pref u^{n-1} e^{-b u} / Gamma(n)
        double logpref = pa * std::log(a) + pb * std::log(b) + (n - 1) * logu;
        if (logpref - b * u - log_gamma(n) < -745.0) return 0.0;
        if (w <= 50.0) {
            // 1F1(pb; n; w), all terms positive
            double term = 1.0, s = 1.0;
            for (int j = 0; j < 4000; ++j) {
                term *= w * (pb + j) / ((n + j) * (j + 1.0));
                s += term;
                if (term < 1e-17 * s && j + 1 > w) break;
            }
            return std::exp(logpref - a * u - log_gamma(n) + std::log(s));
        }
        // large-w branch: J = int_0^1 t^{pa-1}(1-t)^{pb-1} e^{-wt} dt expanded
        // through incomplete gammas; few terms, rapidly decreasing for w > 50
        double J = 0.0, binom = 1.0;
        for (int k = 0; k < pb; ++k) {
            double term = binom * std::exp(log_gamma(pa + k) - (pa + k) * std::log(w)) *
                          gamma_p(pa + k, w);
            J += (k % 2 == 0) ? term : -term;
            binom *= static_cast<double>(pb - 1 - k) / (k + 1.0);
        }
        if (J <= 0.0) return 0.0;
        return std::exp(logpref - b * u - log_gamma(pa) - log_gamma(pb) + std::log(J));
    }

    double cdf(double u) const {
        if (!(u > 0.0)) return 0.0;
        const int n = pa + pb;
        if (merged) return gamma_p(n, rate * u);
        const double x = (a - b) / a;
        const double z = a * u;
        double P = gamma_p(n, z);
        double pois = poisson_weight(n, z);
        double coef = 1.0;
        double s = P;
        for (int j = 1; j < 200000; ++j) {
            coef *= x * (pb + j - 1.0) / j;
            P -= pois;
            if (P < 0.0) P = 0.0;
            pois *= z / (n + j);
            double term = coef * P;
            s += term;
            if ((term <= 1e-17 * s && j >= 4) || P == 0.0) break;
        }
        double F = std::exp(pb * std::log(b / a)) * s;
        return std::clamp(F, 0.0, 1.0);
    }
};

} // namespace

double i_gamma_reduced(const TrialParams& params, double gamma, const QuadratureSpec& spec) {
    params.validate();
    if (!(gamma > 2.0))
        throw InvalidInput("i_gamma_reduced: gamma must exceed 2");
    const double c = gamma - 2.0;
    GammaSum U(params);
    auto integrand = [&](double u) {
        double f = U.density(u);
        if (f == 0.0) return 0.0;
        return std::exp(-c * u) * f * U.cdf(u);
    };
    double val =
        integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), spec).value;
    return 2.0 / c * val;
}

double i_gamma_brute(const TrialParams& params, double gamma, const QuadratureSpec& spec) {
    params.validate();
    if (!(gamma > 2.0))
        throw InvalidInput("i_gamma_brute: gamma must exceed 2");
    const double c = gamma - 2.0;
    const double inf = std::numeric_limits<double>::infinity();

    auto dxi = [&](double x) {
        return x > 0.0 ? std::exp(params.p * std::log(params.alpha) +
                                  (params.p - 1) * std::log(x) - params.alpha * x -
                                  log_gamma(params.p))
                       : 0.0;
    };
    auto dpsi = [&](double y) {
        return y > 0.0 ? std::exp(params.q * std::log(params.beta) +
                                  (params.q - 1) * std::log(y) - params.beta * y -
                                  log_gamma(params.q))
                       : 0.0;
    };

    // innermost: int dpsi(y2) exp(-c max(A, x2+y2)) dy2, split at the kink
    auto level4 = [&](double A, double x2) {
        double ystar = A - x2;
        double acc = 0.0;
        if (ystar > 0.0) {
            acc += std::exp(-c * A) *
                   integrate_1d([&](double y) { return dpsi(y); }, 0.0, ystar, spec).value;
            acc += integrate_1d(
                       [&](double y) { return dpsi(y) * std::exp(-c * (x2 + y)); },
                       ystar, inf, spec)
                       .value;
        } else {
            acc += integrate_1d(
                       [&](double y) { return dpsi(y) * std::exp(-c * (x2 + y)); },
                       0.0, inf, spec)
                       .value;
        }
        return acc;
    };
    auto level3 = [&](double A) {
        auto f = [&](double x2) { return dxi(x2) * level4(A, x2); };
        if (A > 0.0)
            return integrate_1d(f, 0.0, A, spec).value + integrate_1d(f, A, inf, spec).value;
        return integrate_1d(f, 0.0, inf, spec).value;
    };
    auto level2 = [&](double x1) {
        auto f = [&](double y1) { return dpsi(y1) * level3(x1 + y1); };
        return integrate_1d(f, 0.0, inf, spec).value;
    };
    double quad =
        integrate_1d([&](double x1) { return dxi(x1) * level2(x1); }, 0.0, inf, spec).value;
    return quad / c;
}

ObjectiveBreakdown trial_objective(const TrialParams& params, double gamma,
                                   const QuadratureSpec& spec) {
    params.validate();
    if (!(gamma > 2.0))
        throw InvalidInput("trial_objective: gamma must exceed 2");
    ObjectiveBreakdown b;
    b.norm1 = std::sqrt(m1_norm_sq(params.p, params.alpha));
    b.norm2 = std::sqrt(m2_norm_sq(params.q, params.beta));
    b.mu = b.norm1 * b.norm2;
    b.tail = i_gamma_reduced(params, gamma, spec);
    b.objective = std::exp((gamma - 2.0) * std::log(b.mu)) * b.tail;
    b.c_gamma = c_gamma(gamma, b.objective);
    return b;
}

} // namespace clr
