#ifndef CLR_TRIAL_HPP
#define CLR_TRIAL_HPP

#include "clr/numerics.hpp"
#include "clr/scalefn.hpp"

#include <utility>

namespace clr {

// Shape order limit for the symbolic differentiation of K.
constexpr int kMaxShape = 8;

// Parameters of the Gamma-family trial pair: xi has shape p and rate alpha,
// psi has shape q and rate beta (densities in log s against ds/s).
struct TrialParams {
    int p = 1;
    int q = 1;
    double alpha = 2.0;
    double beta = 2.0;

    void validate() const; // p,q in [1, kMaxShape], alpha,beta > 1
};

struct ObjectiveBreakdown {
    double norm1;     // ||m1||_{L^2(ds/s)}
    double norm2;     // ||m2||
    double mu;        // norm1 * norm2
    double tail;      // R_gamma(m1*m2) = I_gamma[xi, psi]
    double objective; // mu^{gamma-2} * tail
    double c_gamma;   // assembled constant, for convenience
};

// Log-grid realizations of m1(s) = s * int_s^inf xi(r) dr/r and
// m2(s) = s * psi(s). Throws ResolutionError when the grid cannot hold
// 1 - 1e-10 of the xi/psi mass.
std::pair<ScaleFn, ScaleFn> make_trial(const TrialParams& params,
                                       const LogGridLayout& grid = {});

// K(a1, a2) = (a1+a2) / (a1 a2 (a1+a2-2)), the min-kernel integral.
double k_closed(double alpha1, double alpha2);

// ||m1||^2 = (1/2) (alpha^{2p}/Gamma(p)^2) (d_{a1} d_{a2})^{p-1} K |_{a1=a2=alpha},
// the mixed partial evaluated by exact symbolic differentiation.
double m1_norm_sq(int p, double alpha);

// ||m2||^2 = beta^{2q} / (2^{2q-1} (beta-1)^{2q-1}) * Gamma(2q-1)/Gamma(q)^2.
double m2_norm_sq(int q, double beta);

// I_gamma[xi, psi] via the probabilistic reduction: with U the sum of
// independent Gamma(p, rate alpha) and Gamma(q, rate beta) variables,
//   I_gamma = (1/(gamma-2)) E[exp((2-gamma) max(U1, U2))]
//           = (2/(gamma-2)) int_0^inf e^{(2-gamma)u} f_U(u) F_U(u) du,
// a single 1-D integral over the closed-form density/CDF of U.
double i_gamma_reduced(const TrialParams& params, double gamma,
                       const QuadratureSpec& spec = {});

// Independent oracle: direct iterated 4-D quadrature of the quadruple
// integral after log substitution of all four variables.
double i_gamma_brute(const TrialParams& params, double gamma,
                     const QuadratureSpec& spec = {});

// Full objective mu^{gamma-2} I_gamma with its breakdown.
ObjectiveBreakdown trial_objective(const TrialParams& params, double gamma,
                                   const QuadratureSpec& spec = {});

} // namespace clr

#endif
