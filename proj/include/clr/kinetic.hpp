#ifndef CLR_KINETIC_HPP
#define CLR_KINETIC_HPP

#include "clr/numerics.hpp"
#include "clr/scalefn.hpp"

#include <string>
#include <vector>

#include "json.hpp"

namespace clr {

// Radial kinetic-energy symbol T(|eta|) in d dimensions.
//   Power:     T(r) = r^{2 alpha_order}
//   Tabulated: log-log interpolation of (r_i, T_i), extended by the declared
//              power laws T ~ r^{lead_exponent} below r_min and
//              T ~ r^{tail_exponent} above r_max.
struct RadialSymbol {
    enum class Kind { Power, Tabulated };

    Kind kind = Kind::Power;
    int dimension = 3;
    double alpha_order = 1.0;
    std::vector<double> radii;
    std::vector<double> values;
    double tail_exponent = 0.0;
    double lead_exponent = 0.0;

    static RadialSymbol power(double alpha_order, int dimension);
    static RadialSymbol tabulated(std::vector<double> radii, std::vector<double> values,
                                  double tail_exponent, double lead_exponent,
                                  int dimension);

    double t_at(double r) const; // T(r) for r > 0
};

// V_- as a weighted sample cloud {(u_i, w_i)}: u_i the potential depth,
// w_i the spatial measure it carries.
struct PotentialProfile {
    std::vector<std::pair<double, double>> samples; // (u, w)
    std::string label;
};

// G_{g,m}(u) = |S^{d-1}|/(2 pi)^d int_0^inf (u g(r) - m(u g(r)))^2 r^{d-1} dr
// with g = T^{-1/2}. Divergent integrals surface as ConvergenceFailure.
double hs_density(const RadialSymbol& T, const ScaleFn& m, double u,
                  const QuadratureSpec& spec = {});

// G_T(u) = int_{T < u} (sqrt(u/T) - sqrt(T/u))^2 d eta/(2 pi)^d.
// Equals hs_density(T, min(t, 1/t), sqrt(u)). Returns +infinity when 1/T is
// not integrable over {T < u} (the weak-coupling regime), which is an
// outcome, not an error.
double g_t(const RadialSymbol& T, double u, const QuadratureSpec& spec = {});

// lambda^{-2} sum_i w_i G_T((lambda+1)^2 u_i)
double bound_at_lambda(const RadialSymbol& T, const PotentialProfile& V, double lambda,
                       const QuadratureSpec& spec = {});

struct BoundOpt {
    double lambda_star;
    double bound;
};

// Minimize bound_at_lambda over lambda in (1e-4, 1e4), log-scale Brent.
BoundOpt bound_opt(const RadialSymbol& T, const PotentialProfile& V,
                   const SearchSpec& search = {}, const QuadratureSpec& spec = {});

// JSON loaders. Profile: {"d": int, "samples": [{"u":..., "w":...}, ...]} or
// {"d": int, "radial": {"r": [...], "v": [...]}} (trapezoidal shell weights).
// Symbol: {"kind": "power", "alpha": a} or
// {"kind": "tabulated", "r": [...], "t": [...], "tail_exp": e, "lead_exp": e}.
PotentialProfile load_profile(const nlohmann::json& j, int* dimension_out = nullptr);
RadialSymbol load_symbol(const nlohmann::json& j, int dimension);

// the fixed splitting function min(t, 1/t) used by the kinetic bound
const ScaleFn& simple_m();

} // namespace clr

#endif
