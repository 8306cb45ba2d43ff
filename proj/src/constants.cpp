#include "clr/constants.hpp"
#include "clr/errors.hpp"
#include "clr/optimize.hpp"
#include "clr/special.hpp"

#include <cmath>

namespace clr {

namespace reference_data {

const std::map<int, double>& lieb_scalar() {
    static const std::map<int, double> table = {
        {3, 6.86924}, {4, 6.03398}, {5, 5.96677}, {6, 6.07489},
        {7, 6.24464}, {8, 6.43921}, {9, 6.64378},
    };
    return table;
}

} // namespace reference_data

double ball_volume(int d) {
    if (d < 1)
        throw InvalidInput("ball_volume: dimension must be >= 1");
    return std::exp(0.5 * d * std::log(M_PI) - log_gamma(0.5 * d + 1.0));
}

double lt_classical(double theta, int d) {
    if (theta < 0.0 || d < 1)
        throw InvalidInput("lt_classical: need theta >= 0, d >= 1");
    return std::exp(-0.5 * d * std::log(4.0 * M_PI) + log_gamma(theta + 1.0) -
                    log_gamma(theta + 1.0 + 0.5 * d));
}

double c_gamma(double gamma, double m_value) {
    if (!(gamma > 2.0))
        throw InvalidInput("c_gamma: gamma must exceed 2");
    if (!(m_value > 0.0))
        throw InvalidInput("c_gamma: m_value must be positive");
    return std::exp((gamma + 1.0) * std::log(gamma) - std::log(4.0) -
                    (gamma - 2.0) * std::log(gamma - 2.0)) *
           m_value;
}

double c_simple(double gamma) {
    if (!(gamma > 2.0))
        throw InvalidInput("c_simple: gamma must exceed 2");
    return std::exp(std::log(2.0) + gamma * std::log(gamma) -
                    (gamma - 1.0) * std::log(gamma - 2.0) - std::log(gamma + 2.0));
}

double c_lower(double gamma) {
    if (!(gamma > 2.0))
        throw InvalidInput("c_lower: gamma must exceed 2");
    return std::exp(gamma * std::log(gamma) - std::log(2.0) - std::log(gamma - 1.0) -
                    (gamma - 1.0) * std::log(gamma - 2.0));
}

std::map<int, double> c_op_table(int d_max, const std::map<int, double>& per_gamma_c,
                                 int n_cap) {
    if (d_max < 3)
        throw InvalidInput("c_op_table: need d_max >= 3");
    std::map<int, double> out;
    for (int d = 3; d <= d_max; ++d) {
        double best = std::numeric_limits<double>::infinity();
        for (int n = 3; n <= std::min(d, n_cap); ++n) {
            auto it = per_gamma_c.find(n);
            if (it == per_gamma_c.end())
                throw InvalidInput("c_op_table: missing C_n for n = " + std::to_string(n));
            if (it->second < best) best = it->second; // ties keep the smaller n
        }
        out[d] = best;
    }
    return out;
}

double cwikel_general(double p, double mu, double tail_p) {
    if (!(p > 2.0))
        throw InvalidInput("cwikel_general: p must exceed 2");
    if (!(mu > 0.0) || tail_p < 0.0)
        throw InvalidInput("cwikel_general: need mu > 0, tail_p >= 0");
    double half = 0.5 * (p - 2.0);
    return std::exp(p * std::log(p / (p - 2.0)) + (p - 2.0) * std::log(mu)) * half * half *
           p * tail_p;
}

double cwikel_simple(double p) {
    if (!(p > 2.0))
        throw InvalidInput("cwikel_simple: p must exceed 2");
    return 2.0 * (p - 2.0) / (p + 2.0) * std::exp(p * std::log(p / (p - 2.0)));
}

double frank_cwikel(double p) {
    if (!(p > 2.0))
        throw InvalidInput("frank_cwikel: p must exceed 2");
    return 0.5 * p * std::exp((p - 1.0) * std::log(p / (p - 2.0)));
}

double frank_rumin(int d, double alpha_order) {
    if (!(alpha_order > 0.0) || !(alpha_order < 0.5 * d))
        throw InvalidInput("frank_rumin: need 0 < alpha < d/2");
    const double a = alpha_order;
    return std::exp((d - 2.0 * a) / (2.0 * a) *
                    std::log(d * (d + 2.0 * a) / ((d - 2.0 * a) * (d - 2.0 * a)))) *
           d / (d - 2.0 * a);
}

std::vector<ConstantReport> build_report(const std::vector<int>& dims, double alpha_order,
                                         const SearchSpec& search,
                                         const QuadratureSpec& quad) {
    if (!(alpha_order > 0.0))
        throw InvalidInput("build_report: alpha_order must be positive");
    for (int d : dims)
        if (!(d / alpha_order > 2.0))
            throw InvalidInput("build_report: gamma = d/alpha must exceed 2 (d = " +
                               std::to_string(d) + ")");

    // shared C_n table for the dimension-stripping minimum (alpha = 1 only)
    std::map<int, double> cn;
    const bool standard_kinetic = alpha_order == 1.0;
    if (standard_kinetic) {
        int d_max = 3;
        for (int d : dims) d_max = std::max(d_max, d);
        for (int n = 3; n <= std::min(d_max, 9); ++n) {
            Optimum opt = optimize_trial(static_cast<double>(n), paper_cells(n),
                                         default_param_range(), default_param_range(),
                                         search, quad);
            double m = std::min(opt.breakdown.objective,
                                8.0 / (n * (n - 2.0) * (n + 2.0)));
            cn[n] = c_gamma(n, m);
        }
    }

    std::vector<ConstantReport> rows;
    for (int d : dims) {
        const double g = d / alpha_order;
        ConstantReport r;
        r.d = d;
        r.alpha_order = alpha_order;
        r.gamma = g;
        Optimum opt = optimize_trial(g, paper_cells(g), default_param_range(),
                                     default_param_range(), search, quad);
        r.m_upper = std::min(opt.breakdown.objective, 8.0 / (g * (g - 2.0) * (g + 2.0)));
        r.c_gamma = c_gamma(g, r.m_upper);
        r.c_lower = c_lower(g);
        r.c_simple = c_simple(g);
        if (standard_kinetic) {
            double best = r.c_gamma;
            for (int n = 3; n <= std::min(d, 9); ++n) best = std::min(best, cn[n]);
            r.c_op = best;
        } else {
            // operator-valued theorem gives the same constant; the
            // dimension-stripping improvement only applies to alpha = 1
            r.c_op = r.c_gamma;
        }
        r.semiclassical_factor = lt_classical(0.0, d);
        r.coefficient = r.c_op * r.semiclassical_factor;
        if (standard_kinetic) {
            auto it = reference_data::lieb_scalar().find(d);
            if (it != reference_data::lieb_scalar().end()) r.reference_lieb = it->second;
            if (d >= 3) r.reference_fls = reference_data::fls_opvalued;
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace clr
