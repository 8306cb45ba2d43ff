#ifndef CLR_SPECIAL_HPP
#define CLR_SPECIAL_HPP

namespace clr {

// log Gamma(x) for x > 0
double log_gamma(double x);

// Gamma(n+1) = n!, exact for n <= 170
double factorial(int n);

// Regularized incomplete gamma functions,
//   gamma_p(a, x) = gamma(a, x)/Gamma(a)   (lower)
//   gamma_q(a, x) = Gamma(a, x)/Gamma(a)   (upper)
// for a > 0, x >= 0. Series for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Poisson weight exp(-x) x^a / Gamma(a+1), computed in log space.
double poisson_weight(double a, double x);

} // namespace clr

#endif
