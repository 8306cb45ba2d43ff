#ifndef CLR_CONSTANTS_HPP
#define CLR_CONSTANTS_HPP

#include "clr/numerics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clr {

// Per-dimension record assembled by build_report.
struct ConstantReport {
    int d;
    double alpha_order;
    double gamma; // d / alpha_order
    double m_upper;
    double c_gamma;
    double c_lower;
    double c_simple;
    double c_op;
    double semiclassical_factor; // |B_1^d| / (2 pi)^d
    double coefficient;          // c_op * semiclassical_factor
    std::optional<double> reference_lieb;
    std::optional<double> reference_fls;
};

// Literature comparison values, stored verbatim; never recomputed.
namespace reference_data {
// Lieb's scalar bounds (Roepstorff, Table 3.1), d = 3..9
const std::map<int, double>& lieb_scalar();
// Frank-Lieb-Seiringer operator-valued bound, all d >= 3
constexpr double fls_opvalued = 10.332;
// Daubechies bound for N(|P|+V) in three dimensions
constexpr double daubechies_relativistic = 6.08;
} // namespace reference_data

// volume of the unit ball, pi^{d/2} / Gamma(d/2 + 1)
double ball_volume(int d);

// classical Lieb-Thirring constant (4 pi)^{-d/2} Gamma(theta+1)/Gamma(theta+1+d/2)
double lt_classical(double theta, int d);

// C_gamma = gamma^{gamma+1} / (4 (gamma-2)^{gamma-2}) * m_value, in log space
double c_gamma(double gamma, double m_value);

// simple-choice constant 2 gamma^gamma / ((gamma-2)^{gamma-1} (gamma+2))
double c_simple(double gamma);

// method lower bound gamma^gamma / (2 (gamma-1) (gamma-2)^{gamma-1})
double c_lower(double gamma);

// C^op(d) = min_{3 <= n <= min(d, n_cap)} C_n, ties to the smallest n
std::map<int, double> c_op_table(int d_max, const std::map<int, double>& per_gamma_c,
                                 int n_cap = 9);

// weak-norm constant of the singular-value chain (before the |Phi|^2 factor):
// (p/(p-2))^p ((p-2)/2)^2 mu^{p-2} p tail_p
double cwikel_general(double p, double mu, double tail_p);

// 2(p-2)/(p+2) (p/(p-2))^p
double cwikel_simple(double p);

// comparison constant (p/2) (p/(p-2))^{p-1}
double frank_cwikel(double p);

// comparison constant (d(d+2a)/(d-2a)^2)^{(d-2a)/(2a)} d/(d-2a)
double frank_rumin(int d, double alpha_order);

// Fully populated per-dimension reports; gamma = d/alpha_order must exceed 2.
std::vector<ConstantReport> build_report(const std::vector<int>& dims, double alpha_order,
                                         const SearchSpec& search,
                                         const QuadratureSpec& quad = {});

// Serialization (report.cpp). CSV carries the ten core columns; JSON and
// markdown add the reference columns where present.
std::string report_csv(const std::vector<ConstantReport>& rows, int digits = 6);
std::string report_json(const std::vector<ConstantReport>& rows, int digits = 6);
std::string report_markdown(const std::vector<ConstantReport>& rows, int digits = 6);

} // namespace clr

#endif
