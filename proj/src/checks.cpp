#include "clr/checks.hpp"
#include "clr/constants.hpp"
#include "clr/errors.hpp"
#include "clr/kinetic.hpp"
#include "clr/optimize.hpp"
#include "clr/scalefn.hpp"
#include "clr/trial.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

namespace clr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Ctx {
    QuadratureSpec quad;
    SearchSpec search;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// worst relative deviation tracker
struct Worst {
    double value = 0.0;
    void feed(double got, double want) {
        double scale = std::max(std::fabs(want), 1e-300);
        value = std::max(value, std::fabs(got - want) / scale);
    }
};

CheckResult quad_linearity(const Ctx& c) {
    auto f = [](double x) { return std::exp(-x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const double a = 2.5, b = -1.25;
    auto combo = [&](double x) { return a * f(x) + b * g(x); };
    double lhs = integrate_1d(combo, 0.0, kInf, c.quad).value;
    double rhs = a * integrate_1d(f, 0.0, kInf, c.quad).value +
                 b * integrate_1d(g, 0.0, kInf, c.quad).value;
    double err = std::fabs(lhs - rhs) / std::fabs(rhs);
    bool pass = err <= 10.0 * c.quad.rel_tol;
    return {"quad-linearity", pass, "rel dev " + num(err)};
}

CheckResult quad_dilation(const Ctx& c) {
    // int_0^inf h(s/c) ds/s computed after the log substitution
    auto h = [](double s) { return s * std::exp(-s); };
    Worst w;
    double base = integrate_1d([&](double x) { return h(std::exp(x)); }, -kInf, kInf,
                               c.quad)
                      .value;
    for (double scale : {0.1, 1.0, 7.0}) {
        double v = integrate_1d([&](double x) { return h(std::exp(x) / scale); }, -kInf,
                                kInf, c.quad)
                       .value;
        w.feed(v, base);
    }
    bool pass = w.value <= 10.0 * c.quad.rel_tol;
    return {"quad-dilation", pass, "rel dev " + num(w.value)};
}

CheckResult simplex_determinism(const Ctx& c) {
    auto rosen = [](const std::vector<double>& x) {
        double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    SearchSpec s = c.search;
    s.box = {{-2.0, 2.0}, {-2.0, 2.0}};
    SimplexResult r1 = minimize_simplex(rosen, s);
    SimplexResult r2 = minimize_simplex(rosen, s);
    bool pass = r1.min == r2.min && r1.argmin == r2.argmin;
    return {"simplex-determinism", pass,
            pass ? "bitwise equal" : "runs with one seed differ"};
}

ScaleFn dilate(const ScaleFn& m, double c) { // s -> m(s/c)
    std::vector<PowerSegment> segs;
    for (const auto& s : m.segments())
        segs.push_back({s.coef * std::pow(c, -s.exponent), s.exponent, s.lo * c,
                        s.hi * c});
    return ScaleFn::piecewise_power(segs);
}

ScaleFn invert(const ScaleFn& m) { // s -> m(1/s)
    std::vector<PowerSegment> segs;
    for (const auto& s : m.segments())
        segs.push_back({s.coef, -s.exponent, s.hi == kInf ? 0.0 : 1.0 / s.hi,
                        s.lo == 0.0 ? kInf : 1.0 / s.lo});
    return ScaleFn::piecewise_power(segs);
}

CheckResult norm_invariance(const Ctx& c) {
    ScaleFn m = ScaleFn::piecewise_power({{2.0, 1.0, 0.0, 1.0}, {0.7, -1.5, 1.0, kInf}});
    double base = l2_scalenorm(m, c.quad);
    Worst w;
    for (double scale : {0.2, 3.0})
        w.feed(l2_scalenorm(dilate(m, scale), c.quad), base);
    w.feed(l2_scalenorm(invert(m), c.quad), base);
    bool pass = w.value <= std::max(1e-8, 10.0 * c.quad.rel_tol);
    return {"norm-dilation-inversion", pass, "rel dev " + num(w.value)};
}

CheckResult conv_commutes(const Ctx& c) {
    TrialParams tp{2, 3, 2.93254, 2.49795};
    LogGridLayout layout{1e-6, 1e6, 1024};
    auto [m1, m2] = make_trial(tp, layout);
    ScaleFn a = mconvolve(m1, m2, layout, c.quad);
    ScaleFn b = mconvolve(m2, m1, layout, c.quad);
    double worst = 0.0;
    for (size_t i = 0; i < a.values().size(); ++i)
        worst = std::max(worst, std::fabs(a.values()[i] - b.values()[i]));
    bool pass = worst <= 1e-8;
    return {"conv-commutes", pass, "max node dev " + num(worst)};
}

CheckResult cauchy_schwarz(const Ctx& c) {
    struct Pair {
        ScaleFn m1, m2;
    };
    std::vector<Pair> pairs;
    pairs.push_back({ScaleFn::piecewise_power({{2.0, 1.0, 0.0, 1.0}}),
                     ScaleFn::piecewise_power({{1.0, -1.0, 1.0, kInf}})});
    pairs.push_back({ScaleFn::piecewise_power({{1.0, 0.5, 0.0, 1.0}, {1.0, -2.0, 1.0, kInf}}),
                     ScaleFn::piecewise_power({{0.5, -1.0, 1.0, kInf}})});
    TrialParams tp{1, 2, 2.2, 3.1};
    LogGridLayout layout{1e-6, 1e6, 1024};
    auto [t1, t2] = make_trial(tp, layout);
    pairs.push_back({t1, t2});
    double worst = -kInf;
    for (const auto& pr : pairs) {
        double lhs = sup_scalenorm(mconvolve(pr.m1, pr.m2, layout, c.quad));
        double rhs = l2_scalenorm(pr.m1, c.quad) * l2_scalenorm(pr.m2, c.quad);
        worst = std::max(worst, lhs - rhs);
    }
    bool pass = worst <= 1e-8;
    return {"cauchy-schwarz", pass, "max excess " + num(worst)};
}

CheckResult tail_closed_form(const Ctx& c) {
    Worst w;
    for (double l : {0.5, 1.0, 2.0})
        for (double g : {2.5, 3.0, 6.0}) {
            ScaleFn m = ScaleFn::piecewise_power({{1.0, 1.0, 0.0, l}, {l, 0.0, l, kInf}});
            double got = tail_functional(m, g, c.quad).value;
            double want = std::pow(l, 2.0 - g) * 2.0 / ((g - 2.0) * (g - 1.0) * g);
            w.feed(got, want);
        }
    bool pass = w.value <= std::max(1e-8, 10.0 * c.quad.rel_tol);
    return {"tail-closed-form", pass, "rel dev " + num(w.value)};
}

CheckResult ansatz_consistency(const Ctx& c) {
    struct Case {
        TrialParams tp;
        double gamma;
    };
    std::vector<Case> cases = {{{2, 3, 2.93254, 2.49795}, 3.0},
                               {{1, 1, 2.5, 3.5}, 3.0},
                               {{2, 1, 3.0, 2.2}, 4.0}};
    Worst w;
    LogGridLayout layout{1e-8, 1e8, 4096};
    for (const auto& cs : cases) {
        auto [m1, m2] = make_trial(cs.tp, layout);
        ScaleFn m = mconvolve(m1, m2, layout, c.quad);
        double n1 = l2_scalenorm(m1, c.quad);
        double n2 = l2_scalenorm(m2, c.quad);
        double tail = tail_functional(m, cs.gamma, c.quad).value;
        double path = std::pow(n1 * n2, cs.gamma - 2.0) * tail;
        double direct = trial_objective(cs.tp, cs.gamma, c.quad).objective;
        w.feed(path, direct);
    }
    bool pass = w.value <= 1e-4;
    return {"ansatz-consistency", pass, "rel dev " + num(w.value)};
}

CheckResult igamma_oracle(const Ctx& c) {
    QuadratureSpec brute = c.quad;
    brute.rel_tol = std::max(c.quad.rel_tol, 1e-7);
    brute.abs_tol = 0.0;
    brute.max_subdivisions = 200;
    struct Case {
        TrialParams tp;
        double gamma;
    };
    std::vector<Case> cases = {
        {{1, 1, 2.0, 3.0}, 3.0}, {{2, 1, 3.0, 2.0}, 6.0}, {{2, 3, 5.0, 2.0}, 3.0}};
    Worst w;
    for (const auto& cs : cases)
        w.feed(i_gamma_reduced(cs.tp, cs.gamma, c.quad),
               i_gamma_brute(cs.tp, cs.gamma, brute));
    bool pass = w.value <= 1e-4;
    return {"igamma-oracle", pass, "rel dev " + num(w.value)};
}

CheckResult igamma_symmetry(const Ctx& c) {
    Worst w;
    TrialParams a{2, 3, 4.0, 2.5};
    TrialParams b{3, 2, 2.5, 4.0};
    for (double g : {3.0, 6.0})
        w.feed(i_gamma_reduced(a, g, c.quad), i_gamma_reduced(b, g, c.quad));
    bool pass = w.value <= std::max(1e-9, 10.0 * c.quad.rel_tol);
    return {"igamma-symmetry", pass, "rel dev " + num(w.value)};
}

CheckResult sandwich(const Ctx& c) {
    SearchSpec lean = c.search;
    lean.restarts = std::min(c.search.restarts, 4);
    double margin = 0.0;
    for (double g : {2.1, 2.5, 3.0, 4.0, 6.0, 9.0, 12.0, 20.0}) {
        double lower = 2.0 / (g * (g - 1.0) * (g - 2.0));
        double upper = 8.0 / (g * (g - 2.0) * (g + 2.0));
        double m = mgamma_upper(g, lean, c.quad);
        margin = std::max(margin, lower - m);
        margin = std::max(margin, m - upper);
    }
    bool pass = margin <= 1e-12;
    return {"sandwich", pass, "max violation " + num(margin)};
}

CheckResult optimize_determinism(const Ctx& c) {
    SearchSpec s = c.search;
    s.restarts = 2;
    Optimum a = optimize_trial(3.0, {{2, 3}}, default_param_range(), default_param_range(),
                               s, c.quad);
    Optimum b = optimize_trial(3.0, {{2, 3}}, default_param_range(), default_param_range(),
                               s, c.quad);
    bool pass = a.params.alpha == b.params.alpha && a.params.beta == b.params.beta &&
                a.breakdown.objective == b.breakdown.objective;
    return {"optimize-determinism", pass,
            pass ? "bitwise equal" : "runs with one seed differ"};
}

CheckResult optimize_stationary(const Ctx& c) {
    TrialParams tp{2, 3, 2.93254, 2.49795};
    double ref = trial_objective(tp, 3.0, c.quad).objective;
    double best_drop = 0.0;
    for (double da : {-0.01, 0.0, 0.01})
        for (double db : {-0.01, 0.0, 0.01}) {
            TrialParams t = tp;
            t.alpha *= 1.0 + da;
            t.beta *= 1.0 + db;
            double v = trial_objective(t, 3.0, c.quad).objective;
            best_drop = std::max(best_drop, (ref - v) / ref);
        }
    bool pass = best_drop <= 1e-3;
    return {"optimize-stationary", pass, "max rel improvement " + num(best_drop)};
}

CheckResult ratio_identity(const Ctx&) {
    Worst w;
    for (double g : {2.5, 3.0, 5.0, 10.0}) {
        double lhs = c_gamma(g, 8.0 / (g * (g - 2.0) * (g + 2.0))) / c_lower(g);
        double rhs = 4.0 * (g - 1.0) / (g + 2.0);
        w.feed(lhs, rhs);
    }
    bool pass = w.value <= 1e-12;
    return {"ratio-identity", pass, "rel dev " + num(w.value)};
}

CheckResult lower_vs_upper(const Ctx&) {
    double margin = -kInf;
    for (double g : {2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 20.0}) {
        double up = c_gamma(g, 8.0 / (g * (g - 2.0) * (g + 2.0)));
        margin = std::max(margin, c_lower(g) - up);
    }
    bool pass = margin < 0.0;
    return {"lower-vs-upper", pass, "max c_lower - c_gamma " + num(margin)};
}

CheckResult lt_multiplicativity(const Ctx&) {
    Worst w;
    for (double theta : {0.0, 0.5, 1.0})
        for (int n : {1, 2, 3})
            for (int d : {4, 5, 6})
                w.feed(lt_classical(theta, n) * lt_classical(theta + 0.5 * n, d - n),
                       lt_classical(theta, d));
    bool pass = w.value <= 1e-12;
    return {"lt-multiplicativity", pass, "rel dev " + num(w.value)};
}

CheckResult cwikel_identity(const Ctx&) {
    Worst w;
    for (double p : {2.5, 3.0, 4.0, 6.0})
        w.feed(cwikel_general(p, 1.0, 8.0 / ((p - 2.0) * p * (p + 2.0))),
               cwikel_simple(p));
    bool pass = w.value <= 1e-12;
    return {"cwikel-identity", pass, "rel dev " + num(w.value)};
}

RadialSymbol sample_tabulated(int d) {
    std::vector<double> r, t;
    for (int i = 0; i <= 40; ++i) {
        double x = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
        r.push_back(x);
        t.push_back(x * x * (1.0 + 0.1 / (1.0 + x))); // near-quadratic symbol
    }
    return RadialSymbol::tabulated(r, t, 2.0, 2.0, d);
}

CheckResult gt_identity(const Ctx& c) {
    Worst w;
    RadialSymbol pw = RadialSymbol::power(1.0, 3);
    RadialSymbol tb = sample_tabulated(3);
    for (double u : {0.5, 1.0, 2.0}) {
        w.feed(hs_density(pw, simple_m(), std::sqrt(u), c.quad), g_t(pw, u, c.quad));
        w.feed(hs_density(tb, simple_m(), std::sqrt(u), c.quad), g_t(tb, u, c.quad));
    }
    bool pass = w.value <= std::max(1e-8, 100.0 * c.quad.rel_tol);
    return {"gt-identity", pass, "rel dev " + num(w.value)};
}

CheckResult gt_power_closed_form(const Ctx& c) {
    Worst w;
    struct DA {
        int d;
        double a;
    };
    for (DA da : std::vector<DA>{{3, 1.0}, {3, 0.5}, {5, 2.0}}) {
        double g = da.d / da.a;
        RadialSymbol T = RadialSymbol::power(da.a, da.d);
        for (double u : {0.5, 2.0}) {
            double want = std::pow(u, 0.5 * g) * g * ball_volume(da.d) *
                          std::exp(-da.d * std::log(2.0 * M_PI)) * 8.0 /
                          ((g - 2.0) * g * (g + 2.0));
            w.feed(g_t(T, u, c.quad), want);
        }
    }
    bool pass = w.value <= 1e-6;
    return {"gt-power-closed-form", pass, "rel dev " + num(w.value)};
}

CheckResult kinetic_consistency(const Ctx& c) {
    Worst w;
    struct DA {
        int d;
        double a;
    };
    PotentialProfile prof;
    prof.samples = {{1.0, 1.0}, {0.5, 2.0}};
    for (DA da : std::vector<DA>{{3, 1.0}, {3, 0.5}, {5, 2.0}}) {
        double g = da.d / da.a;
        RadialSymbol T = RadialSymbol::power(da.a, da.d);
        BoundOpt r = bound_opt(T, prof, c.search, c.quad);
        double mass = 0.0;
        for (auto& [u, wt] : prof.samples) mass += wt * std::pow(u, 0.5 * g);
        double want = c_simple(g) * lt_classical(0.0, da.d) * mass;
        w.feed(r.bound, want);
        w.feed(r.lambda_star, 2.0 / (g - 2.0));
    }
    bool pass = w.value <= 1e-6;
    return {"kinetic-consistency", pass, "rel dev " + num(w.value)};
}

using CheckFn = CheckResult (*)(const Ctx&);

const std::pair<const char*, CheckFn> kChecks[] = {
    {"quad-linearity", quad_linearity},
    {"quad-dilation", quad_dilation},
    {"simplex-determinism", simplex_determinism},
    {"norm-dilation-inversion", norm_invariance},
    {"conv-commutes", conv_commutes},
    {"cauchy-schwarz", cauchy_schwarz},
    {"tail-closed-form", tail_closed_form},
    {"ansatz-consistency", ansatz_consistency},
    {"igamma-oracle", igamma_oracle},
    {"igamma-symmetry", igamma_symmetry},
    {"sandwich", sandwich},
    {"optimize-determinism", optimize_determinism},
    {"optimize-stationary", optimize_stationary},
    {"ratio-identity", ratio_identity},
    {"lower-vs-upper", lower_vs_upper},
    {"lt-multiplicativity", lt_multiplicativity},
    {"cwikel-identity", cwikel_identity},
    {"gt-identity", gt_identity},
    {"gt-power-closed-form", gt_power_closed_form},
    {"kinetic-consistency", kinetic_consistency},
};

} // namespace

std::vector<std::string> check_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, fn] : kChecks) ids.push_back(id);
    return ids;
}

std::vector<CheckResult> run_checks(const std::string& only, const QuadratureSpec& quad,
                                    const SearchSpec& search) {
    Ctx ctx{quad, search};
    std::vector<CheckResult> out;
    for (const auto& [id, fn] : kChecks) {
        if (!only.empty() && std::string(id).find(only) == std::string::npos)
            continue;
        try {
            out.push_back(fn(ctx));
        } catch (const std::exception& e) {
            out.push_back({id, false, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

} // namespace clr
