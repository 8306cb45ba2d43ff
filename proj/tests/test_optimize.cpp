#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clr/constants.hpp"
#include "clr/errors.hpp"
#include "clr/optimize.hpp"

#include <cmath>

using namespace clr;

namespace {
SearchSpec lean_search() {
    SearchSpec s;
    s.restarts = 6;
    return s;
}
} // namespace

TEST_CASE("optimize_trial reaches the published optima") {
    QuadratureSpec quad;
    SUBCASE("gamma = 3, cell (2,3)") {
        Optimum o = optimize_trial(3.0, {{2, 3}}, default_param_range(),
                                   default_param_range(), lean_search(), quad);
        CHECK(o.c_gamma <= 7.55151 + 1e-3);
        CHECK(o.c_gamma == doctest::Approx(7.55151).epsilon(2e-4));
        CHECK(o.params.alpha == doctest::Approx(2.93254).epsilon(1e-2));
        CHECK(o.params.beta == doctest::Approx(2.49795).epsilon(1e-2));
        CHECK(o.converged);
    }
    SUBCASE("gamma = 6, cell (3,2)") {
        Optimum o = optimize_trial(6.0, {{3, 2}}, default_param_range(),
                                   default_param_range(), lean_search(), quad);
        CHECK(o.c_gamma <= 5.77058 + 1e-3);
    }
    SUBCASE("non-integer gamma stays inside the closed-form sandwich") {
        double g = 2.5;
        Optimum o = optimize_trial(g, {{2, 3}}, default_param_range(),
                                   default_param_range(), lean_search(), quad);
        CHECK(o.breakdown.objective >= 2.0 / (g * (g - 1.0) * (g - 2.0)));
        CHECK(o.breakdown.objective <= 8.0 / (g * (g - 2.0) * (g + 2.0)));
    }
}

TEST_CASE("optimize_trial determinism and tie-breaking") {
    QuadratureSpec quad;
    SearchSpec s = lean_search();
    s.restarts = 2;
    Optimum a = optimize_trial(3.0, {{2, 3}}, default_param_range(), default_param_range(),
                               s, quad);
    Optimum b = optimize_trial(3.0, {{2, 3}}, default_param_range(), default_param_range(),
                               s, quad);
    CHECK(a.params.alpha == b.params.alpha);
    CHECK(a.params.beta == b.params.beta);
    CHECK(a.breakdown.objective == b.breakdown.objective);
    CHECK(a.evaluations == b.evaluations);

    // a duplicated cell ties with itself; the smaller (p, q) is reported first
    Optimum c = optimize_trial(3.0, {{2, 3}, {2, 3}}, default_param_range(),
                               default_param_range(), s, quad);
    CHECK(c.params.p == 2);
    CHECK(c.params.q == 3);
}

TEST_CASE("optimize_trial input validation") {
    QuadratureSpec quad;
    CHECK_THROWS_AS(optimize_trial(2.0, {{2, 3}}, default_param_range(),
                                   default_param_range(), lean_search(), quad),
                    InvalidInput);
    CHECK_THROWS_AS(optimize_trial(3.0, {}, default_param_range(), default_param_range(),
                                   lean_search(), quad),
                    InvalidInput);
    CHECK_THROWS_AS(optimize_trial(3.0, {{2, 3}}, {0.5, 60.0}, default_param_range(),
                                   lean_search(), quad),
                    InvalidInput);
}

TEST_CASE("mgamma_upper sandwich") {
    QuadratureSpec quad;
    SearchSpec s;
    s.restarts = 2;
    for (double g : {2.1, 2.5, 3.0, 4.0, 6.0, 9.0, 12.0, 20.0}) {
        CAPTURE(g);
        double m = mgamma_upper(g, s, quad);
        CHECK(m >= 2.0 / (g * (g - 1.0) * (g - 2.0)));
        CHECK(m <= 8.0 / (g * (g - 2.0) * (g + 2.0)) * (1.0 + 1e-14));
    }
    // closed-form regime: gamma = 100 never exceeds the simple bound
    CHECK(mgamma_upper(100.0, s, quad) <= 8.0 / (100.0 * 98.0 * 102.0) * (1.0 + 1e-14));
    // gamma = 4 spot value of the lower bound
    CHECK(mgamma_upper(4.0, s, quad) >= 1.0 / 12.0);
}

TEST_CASE("paper parameters are stationary points of the objective") {
    QuadratureSpec quad;
    TrialParams tp{2, 3, 2.93254, 2.49795};
    double ref = trial_objective(tp, 3.0, quad).objective;
    for (double da : {-0.01, 0.01})
        for (double db : {-0.01, 0.01}) {
            TrialParams t = tp;
            t.alpha *= 1.0 + da;
            t.beta *= 1.0 + db;
            double v = trial_objective(t, 3.0, quad).objective;
            CHECK(v >= ref * (1.0 - 1e-3));
        }
}
