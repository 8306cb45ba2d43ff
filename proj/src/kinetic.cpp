#include "clr/kinetic.hpp"
#include "clr/constants.hpp"
#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RadialSymbol RadialSymbol::power(double alpha_order, int dimension) {
    if (dimension < 1)
        throw InvalidInput("RadialSymbol: dimension must be >= 1");
    RadialSymbol s;
    s.kind = Kind::Power;
    s.dimension = dimension;
    s.alpha_order = alpha_order;
    s.tail_exponent = 2.0 * alpha_order;
    s.lead_exponent = 2.0 * alpha_order;
    return s;
}

RadialSymbol RadialSymbol::tabulated(std::vector<double> radii, std::vector<double> values,
                                     double tail_exponent, double lead_exponent,
                                     int dimension) {
    if (dimension < 1)
        throw InvalidInput("RadialSymbol: dimension must be >= 1");
    if (radii.size() < 2 || radii.size() != values.size())
        throw InvalidInput("RadialSymbol: need >= 2 radii with matching values");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !(values[i] > 0.0))
            throw InvalidInput("RadialSymbol: radii and values must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw InvalidInput("RadialSymbol: radii must be strictly increasing");
    }
    RadialSymbol s;
    s.kind = Kind::Tabulated;
    s.dimension = dimension;
    s.radii = std::move(radii);
    s.values = std::move(values);
    s.tail_exponent = tail_exponent;
    s.lead_exponent = lead_exponent;
    return s;
}

double RadialSymbol::t_at(double r) const {
    if (!(r > 0.0))
        throw InvalidInput("RadialSymbol: radius must be positive");
    if (kind == Kind::Power)
        return std::pow(r, 2.0 * alpha_order);
    if (r <= radii.front())
        return values.front() * std::pow(r / radii.front(), lead_exponent);
    if (r >= radii.back())
        return values.back() * std::pow(r / radii.back(), tail_exponent);
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    size_t i = it - radii.begin() - 1;
    double e = std::log(values[i + 1] / values[i]) / std::log(radii[i + 1] / radii[i]);
    return values[i] * std::pow(r / radii[i], e);
}

const ScaleFn& simple_m() {
    static const ScaleFn m = ScaleFn::piecewise_power(
        {{1.0, 1.0, 0.0, 1.0}, {1.0, -1.0, 1.0, kInf}});
    return m;
}

namespace {

double phase_space_prefactor(int d) {
    // |S^{d-1}| / (2 pi)^d
    return d * ball_volume(d) * std::exp(-d * std::log(2.0 * M_PI));
}

// integrate h(x) = f(e^x) e^{d x} over log-radius panels split at the
// symbol's table nodes
double radial_integral(const RadialSymbol& T, double x_lo, double x_hi,
                       const std::function<double(double)>& f_of_r,
                       const QuadratureSpec& spec) {
    std::vector<double> cuts;
    cuts.push_back(x_lo);
    cuts.push_back(x_hi);
    if (T.kind == RadialSymbol::Kind::Tabulated)
        for (double r : T.radii) {
            double x = std::log(r);
            if (x > x_lo && x < x_hi) cuts.push_back(x);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const int d = T.dimension;
    auto g = [&](double x) { return f_of_r(std::exp(x)) * std::exp(d * x); };
    double acc = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += integrate_1d(g, cuts[i], cuts[i + 1], spec).value;
    return acc;
}

} // namespace

double g_t(const RadialSymbol& T, double u, const QuadratureSpec& spec) {
    if (u < 0.0)
        throw InvalidInput("g_t: u must be nonnegative");
    if (u == 0.0) return 0.0;
    const int d = T.dimension;

    // weak-coupling screens: 1/T not integrable over {T < u}
    const double tau = T.tail_exponent;
    const double lam = T.lead_exponent;
    double t_end, t_begin, r_max, r_min;
    if (T.kind == RadialSymbol::Kind::Power) {
        r_min = r_max = 1.0;
        t_end = t_begin = 1.0;
    } else {
        r_min = T.radii.front();
        r_max = T.radii.back();
        t_begin = T.values.front();
        t_end = T.values.back();
    }
    if (tau < 0.0) return kInf;
    if (tau == 0.0 && u > t_end) return kInf;
    if (lam > 0.0 && lam >= d) return kInf;

    // upper end of the region {T < u}
    double x_hi;
    if (tau > 0.0) {
        double r_u = (u > t_end) ? r_max * std::pow(u / t_end, 1.0 / tau) : r_max;
        x_hi = std::log(r_u);
    } else {
        x_hi = std::log(r_max); // T constant beyond r_max and u <= t_end
    }
    // lower end: -inf when the region reaches 0, else a finite cutoff
    double x_lo;
    if (lam > 0.0)
        x_lo = -kInf;
    else if (lam == 0.0)
        x_lo = (u > t_begin) ? -kInf : std::log(r_min);
    else { // lam < 0: T -> inf toward 0
        double r_l = (u < t_begin) ? r_min * std::pow(u / t_begin, 1.0 / lam)
                                   : r_min;
        x_lo = std::log(r_l) - 1e-12;
    }
    if (!(x_hi > x_lo)) return 0.0;

    auto f = [&](double r) {
        double t = T.t_at(r);
        if (!(t < u)) return 0.0;
        double s = std::sqrt(u / t);
        double diff = s - 1.0 / s;
        return diff * diff;
    };
    return phase_space_prefactor(d) * radial_integral(T, x_lo, x_hi, f, spec);
}

double hs_density(const RadialSymbol& T, const ScaleFn& m, double u,
                  const QuadratureSpec& spec) {
    if (u < 0.0)
        throw InvalidInput("hs_density: u must be nonnegative");
    if (u == 0.0) return 0.0;
    const int d = T.dimension;
    auto f = [&](double r) {
        double t = u / std::sqrt(T.t_at(r)); // u g(r), g = T^{-1/2}
        double diff = t - m(t);
        return diff * diff;
    };
    return phase_space_prefactor(d) * radial_integral(T, -kInf, kInf, f, spec);
}

double bound_at_lambda(const RadialSymbol& T, const PotentialProfile& V, double lambda,
                       const QuadratureSpec& spec) {
    if (!(lambda > 0.0))
        throw InvalidInput("bound_at_lambda: lambda must be positive");
    const double scale = (lambda + 1.0) * (lambda + 1.0);
    std::vector<double> terms;
    terms.reserve(V.samples.size());
    for (const auto& [u, w] : V.samples) {
        double g = g_t(T, scale * u, spec);
        if (g == kInf) return kInf;
        terms.push_back(w * g);
    }
    return pairwise_sum(terms) / (lambda * lambda);
}

BoundOpt bound_opt(const RadialSymbol& T, const PotentialProfile& V,
                   const SearchSpec& search, const QuadratureSpec& spec) {
    if (V.samples.empty())
        throw InvalidInput("bound_opt: profile is empty");
    auto f = [&](double x) { return bound_at_lambda(T, V, std::exp(x), spec); };
    try {
        ScalarMin r = minimize_scalar(f, std::log(1e-4), std::log(1e4), search);
        return {std::exp(r.argmin), r.min};
    } catch (const BracketFailure& e) {
        throw ConvergenceFailure(std::string("bound_opt: ") + e.what(), kInf);
    }
}

// ---------------------------------------------------------------------------
// file schemas
// ---------------------------------------------------------------------------

namespace {

double require_number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number())
        throw SchemaError("expected a number at " + where);
    double v = j.get<double>();
    if (std::isnan(v))
        throw SchemaError("NaN at " + where);
    return v;
}

} // namespace

PotentialProfile load_profile(const nlohmann::json& j, int* dimension_out) {
    if (!j.is_object())
        throw SchemaError("profile: expected a JSON object");
    if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 1)
        throw SchemaError("profile: missing or bad dimension \"d\"");
    const int d = j["d"].get<int>();
    if (dimension_out) *dimension_out = d;

    PotentialProfile out;
    if (j.contains("label") && j["label"].is_string())
        out.label = j["label"].get<std::string>();

    if (j.contains("samples")) {
        const auto& arr = j["samples"];
        if (!arr.is_array())
            throw SchemaError("profile: \"samples\" must be an array");
        for (size_t i = 0; i < arr.size(); ++i) {
            const auto& s = arr[i];
            if (!s.is_object() || !s.contains("u") || !s.contains("w"))
                throw SchemaError("profile: samples[" + std::to_string(i) +
                                  "] needs fields u and w");
            double u = require_number(s["u"], "samples[" + std::to_string(i) + "].u");
            double w = require_number(s["w"], "samples[" + std::to_string(i) + "].w");
            if (u < 0.0)
                throw SchemaError("profile: samples[" + std::to_string(i) + "].u < 0");
            if (!(w > 0.0))
                throw SchemaError("profile: samples[" + std::to_string(i) + "].w <= 0");
            out.samples.push_back({u, w});
        }
        return out;
    }

    if (j.contains("radial")) {
        const auto& rad = j["radial"];
        if (!rad.is_object() || !rad.contains("r") || !rad.contains("v") ||
            !rad["r"].is_array() || !rad["v"].is_array() ||
            rad["r"].size() != rad["v"].size() || rad["r"].size() < 2)
            throw SchemaError("profile: \"radial\" needs matching arrays r and v");
        const size_t n = rad["r"].size();
        std::vector<double> r(n), v(n);
        for (size_t i = 0; i < n; ++i) {
            r[i] = require_number(rad["r"][i], "radial.r[" + std::to_string(i) + "]");
            v[i] = require_number(rad["v"][i], "radial.v[" + std::to_string(i) + "]");
            if (r[i] < 0.0 || (i > 0 && r[i] <= r[i - 1]))
                throw SchemaError("profile: radial.r must be nonnegative increasing");
            if (v[i] < 0.0)
                throw SchemaError("profile: radial.v[" + std::to_string(i) + "] < 0");
        }
        const double sphere = d * ball_volume(d);
        for (size_t i = 0; i < n; ++i) {
            double dr = (i == 0) ? 0.5 * (r[1] - r[0])
                        : (i + 1 == n) ? 0.5 * (r[n - 1] - r[n - 2])
                                       : 0.5 * (r[i + 1] - r[i - 1]);
            double w = sphere * std::pow(r[i], d - 1) * dr;
            if (w > 0.0) out.samples.push_back({v[i], w});
        }
        return out;
    }
    throw SchemaError("profile: need either \"samples\" or \"radial\"");
}

RadialSymbol load_symbol(const nlohmann::json& j, int dimension) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("symbol: expected an object with a \"kind\" field");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "power") {
        if (!j.contains("alpha"))
            throw SchemaError("symbol: power kind needs \"alpha\"");
        double a = require_number(j["alpha"], "alpha");
        return RadialSymbol::power(a, dimension);
    }
    if (kind == "tabulated") {
        for (const char* key : {"r", "t", "tail_exp", "lead_exp"})
            if (!j.contains(key))
                throw SchemaError(std::string("symbol: tabulated kind needs \"") + key +
                                  "\"");
        if (!j["r"].is_array() || !j["t"].is_array() || j["r"].size() != j["t"].size())
            throw SchemaError("symbol: r and t must be matching arrays");
        std::vector<double> r(j["r"].size()), t(j["t"].size());
        for (size_t i = 0; i < r.size(); ++i) {
            r[i] = require_number(j["r"][i], "r[" + std::to_string(i) + "]");
            t[i] = require_number(j["t"][i], "t[" + std::to_string(i) + "]");
        }
        double tail = require_number(j["tail_exp"], "tail_exp");
        double lead = require_number(j["lead_exp"], "lead_exp");
        try {
            return RadialSymbol::tabulated(std::move(r), std::move(t), tail, lead,
                                           dimension);
        } catch (const InvalidInput& e) {
            throw SchemaError(std::string("symbol: ") + e.what());
        }
    }
    throw SchemaError("symbol: unknown kind \"" + kind + "\"");
}

} // namespace clr
