#include "clr/special.hpp"
#include "clr/errors.hpp"

#include <cmath>
#include <limits>

namespace clr {

double log_gamma(double x) {
    if (!(x > 0.0))
        throw InvalidInput("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double factorial(int n) {
    if (n < 0)
        throw InvalidInput("factorial: negative argument");
    if (n > 170)
        throw InvalidInput("factorial: overflow, use log_gamma");
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double poisson_weight(double a, double x) {
    if (x <= 0.0) return a == 0.0 ? 1.0 : 0.0;
    return std::exp(-x + a * std::log(x) - std::lgamma(a + 1.0));
}

namespace {

// lower regularized incomplete gamma by its power series, valid x < a+1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper regularized incomplete gamma by Lentz continued fraction, valid x >= a+1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw InvalidInput("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw InvalidInput("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

} // namespace clr
