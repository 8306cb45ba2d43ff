#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clr/constants.hpp"
#include "clr/errors.hpp"
#include "clr/kinetic.hpp"

#include <cmath>
#include <limits>

using namespace clr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double semiclassical(int d) { return lt_classical(0.0, d); }

RadialSymbol quadratic_table(int d) {
    std::vector<double> r, t;
    for (int i = 0; i <= 60; ++i) {
        double x = std::pow(10.0, -2.0 + 4.0 * i / 60.0);
        r.push_back(x);
        t.push_back(x * x);
    }
    return RadialSymbol::tabulated(r, t, 2.0, 2.0, d);
}
} // namespace

TEST_CASE("radial symbol evaluation") {
    RadialSymbol p = RadialSymbol::power(1.0, 3);
    CHECK(p.t_at(2.0) == doctest::Approx(4.0));
    RadialSymbol t = quadratic_table(3);
    CHECK(t.t_at(0.5) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(t.t_at(1e-3) == doctest::Approx(1e-6).epsilon(1e-10));  // lead extension
    CHECK(t.t_at(1e4) == doctest::Approx(1e8).epsilon(1e-10));    // tail extension
    CHECK_THROWS_AS(t.t_at(0.0), InvalidInput);
    CHECK_THROWS_AS(RadialSymbol::tabulated({1.0, 0.5}, {1.0, 1.0}, 2.0, 2.0, 3),
                    InvalidInput);
}

TEST_CASE("hs_density") {
    QuadratureSpec spec;
    SUBCASE("the reference computation: g = 1/|eta|, m = min(t, 1/t), d = 3, u = 1") {
        // spherical reduction gives (3 |B^3|/(2 pi)^3) * 8/15
        RadialSymbol T = RadialSymbol::power(1.0, 3);
        double want = 3.0 * semiclassical(3) * 8.0 / 15.0;
        CHECK(hs_density(T, simple_m(), 1.0, spec) ==
              doctest::Approx(want).epsilon(1e-8));

        // direct radial quadrature oracle
        double oracle =
            3.0 * semiclassical(3) *
            integrate_1d(
                [](double x) {
                    double r = std::exp(x);
                    double t = 1.0 / r;
                    double m = std::min(t, 1.0 / t);
                    return (t - m) * (t - m) * r * r * r;
                },
                -40.0, 40.0, spec)
                .value;
        CHECK(hs_density(T, simple_m(), 1.0, spec) ==
              doctest::Approx(oracle).epsilon(1e-8));
    }
    SUBCASE("u = 0 gives 0") {
        CHECK(hs_density(RadialSymbol::power(1.0, 3), simple_m(), 0.0, spec) == 0.0);
    }
    SUBCASE("scaling in u for the inverse-power symbol") {
        RadialSymbol T = RadialSymbol::power(1.0, 3);
        double base = hs_density(T, simple_m(), 1.0, spec);
        for (double u : {0.5, 2.0, 10.0})
            CHECK(hs_density(T, simple_m(), u, spec) ==
                  doctest::Approx(std::pow(u, 3.0) * base).epsilon(1e-7));
    }
    SUBCASE("m = 0 diverges") {
        ScaleFn zero = ScaleFn::piecewise_power({});
        QuadratureSpec tight = spec;
        tight.max_subdivisions = 60;
        CHECK_THROWS_AS(
            hs_density(RadialSymbol::power(1.0, 3), zero, 1.0, tight),
            ConvergenceFailure);
    }
}

TEST_CASE("g_t") {
    QuadratureSpec spec;
    SUBCASE("power symbol closed form") {
        struct DA {
            int d;
            double a;
        };
        for (DA da : std::vector<DA>{{3, 1.0}, {3, 0.5}, {5, 2.0}}) {
            double g = da.d / da.a;
            RadialSymbol T = RadialSymbol::power(da.a, da.d);
            for (double u : {0.5, 1.0, 2.0, 10.0}) {
                double want = std::pow(u, 0.5 * g) * g * semiclassical(da.d) * 8.0 /
                              ((g - 2.0) * g * (g + 2.0));
                CHECK(g_t(T, u, spec) == doctest::Approx(want).epsilon(1e-6));
            }
        }
    }
    SUBCASE("agrees with hs_density at sqrt(u)") {
        RadialSymbol T = RadialSymbol::power(1.0, 3);
        RadialSymbol tab = quadratic_table(3);
        for (double u : {0.5, 1.0, 2.0}) {
            CHECK(g_t(T, u, spec) ==
                  doctest::Approx(hs_density(T, simple_m(), std::sqrt(u), spec))
                      .epsilon(1e-8));
            CHECK(g_t(tab, u, spec) ==
                  doctest::Approx(hs_density(tab, simple_m(), std::sqrt(u), spec))
                      .epsilon(1e-7));
        }
    }
    SUBCASE("tabulated symbol matches its power-law twin") {
        RadialSymbol tab = quadratic_table(3);
        RadialSymbol pow3 = RadialSymbol::power(1.0, 3);
        for (double u : {0.5, 1.0, 3.0})
            CHECK(g_t(tab, u, spec) == doctest::Approx(g_t(pow3, u, spec)).epsilon(1e-7));
    }
    SUBCASE("weak-coupling outcomes are +infinity, not errors") {
        // symbol leveling off at T = 1 for large r
        std::vector<double> r = {0.1, 1.0, 10.0};
        std::vector<double> t = {0.01, 0.5, 1.0};
        RadialSymbol flat = RadialSymbol::tabulated(r, t, 0.0, 2.0, 3);
        CHECK(g_t(flat, 2.0, spec) == kInf);   // u above the limit
        CHECK(g_t(flat, 0.25, spec) < kInf);   // u below the limit
        // decaying tail: always weak coupling
        RadialSymbol dec = RadialSymbol::tabulated(r, t, -1.0, 2.0, 3);
        CHECK(g_t(dec, 0.5, spec) == kInf);
    }
    SUBCASE("u = 0") {
        CHECK(g_t(RadialSymbol::power(1.0, 3), 0.0, spec) == 0.0);
        CHECK_THROWS_AS(g_t(RadialSymbol::power(1.0, 3), -1.0, spec), InvalidInput);
    }
}

TEST_CASE("bound_at_lambda") {
    QuadratureSpec spec;
    RadialSymbol T = RadialSymbol::power(1.0, 3);
    SUBCASE("single sample closed form at lambda = 2") {
        PotentialProfile prof;
        prof.samples = {{1.0, 1.0}};
        // 2^{-2} g_T(9) = (1/4) 9^{3/2} (3|B|/(2pi)^3)(8/15)
        double want = 0.25 * std::pow(9.0, 1.5) * 3.0 * semiclassical(3) * 8.0 / 15.0;
        CHECK(bound_at_lambda(T, prof, 2.0, spec) == doctest::Approx(want).epsilon(1e-7));
    }
    SUBCASE("empty profile gives 0") {
        PotentialProfile empty;
        CHECK(bound_at_lambda(T, empty, 1.0, spec) == 0.0);
    }
    SUBCASE("monotone in each sample depth") {
        PotentialProfile lo, hi;
        lo.samples = {{1.0, 1.0}, {0.5, 1.0}};
        hi.samples = {{1.0, 1.0}, {0.8, 1.0}};
        CHECK(bound_at_lambda(T, lo, 1.0, spec) < bound_at_lambda(T, hi, 1.0, spec));
    }
    CHECK_THROWS_AS(bound_at_lambda(T, PotentialProfile{}, 0.0, spec), InvalidInput);
}

TEST_CASE("bound_opt closed-form consistency") {
    QuadratureSpec spec;
    SearchSpec search;
    SUBCASE("d = 3, alpha = 1: lambda* = 2, bound = 10.8 |B|/(2pi)^3") {
        RadialSymbol T = RadialSymbol::power(1.0, 3);
        PotentialProfile prof;
        prof.samples = {{1.0, 1.0}};
        BoundOpt r = bound_opt(T, prof, search, spec);
        CHECK(r.lambda_star == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(r.bound == doctest::Approx(10.8 * semiclassical(3)).epsilon(1e-6));
    }
    SUBCASE("gamma = 6 (d = 3, alpha = 1/2): lambda* = 1/2") {
        RadialSymbol T = RadialSymbol::power(0.5, 3);
        PotentialProfile prof;
        prof.samples = {{1.0, 1.0}};
        BoundOpt r = bound_opt(T, prof, search, spec);
        CHECK(r.lambda_star == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(r.bound == doctest::Approx(c_simple(6.0) * semiclassical(3)).epsilon(1e-6));
    }
    SUBCASE("profile weights scale the bound linearly") {
        RadialSymbol T = RadialSymbol::power(1.0, 3);
        PotentialProfile one, three;
        one.samples = {{1.0, 1.0}, {2.0, 0.5}};
        three.samples = {{1.0, 3.0}, {2.0, 1.5}};
        BoundOpt a = bound_opt(T, one, search, spec);
        BoundOpt b = bound_opt(T, three, search, spec);
        CHECK(b.bound == doctest::Approx(3.0 * a.bound).epsilon(1e-8));
    }
    CHECK_THROWS_AS(bound_opt(RadialSymbol::power(1.0, 3), PotentialProfile{}, search, spec),
                    InvalidInput);
}

TEST_CASE("load_profile") {
    SUBCASE("samples form") {
        auto j = nlohmann::json::parse(R"({"d":3,"samples":[{"u":1.0,"w":1.0}]})");
        int d = 0;
        PotentialProfile p = load_profile(j, &d);
        CHECK(d == 3);
        REQUIRE(p.samples.size() == 1);
        CHECK(p.samples[0].first == 1.0);
        CHECK(p.samples[0].second == 1.0);
    }
    SUBCASE("radial form converges to the ball volume") {
        const int n = 2000;
        nlohmann::json j;
        j["d"] = 3;
        for (int i = 0; i < n; ++i) {
            j["radial"]["r"].push_back(static_cast<double>(i) / (n - 1));
            j["radial"]["v"].push_back(1.0);
        }
        PotentialProfile p = load_profile(j);
        double total = 0.0;
        for (auto& [u, w] : p.samples) total += w;
        CHECK(total == doctest::Approx(ball_volume(3)).epsilon(1e-3));
    }
    SUBCASE("schema errors") {
        CHECK_THROWS_AS(
            load_profile(nlohmann::json::parse(R"({"d":3,"samples":[{"u":-0.1,"w":1}]})")),
            SchemaError);
        CHECK_THROWS_AS(
            load_profile(nlohmann::json::parse(R"({"d":3,"samples":[{"u":1,"w":0}]})")),
            SchemaError);
        CHECK_THROWS_AS(load_profile(nlohmann::json::parse(R"({"samples":[]})")),
                        SchemaError);
        CHECK_THROWS_AS(load_profile(nlohmann::json::parse(R"({"d":3})")), SchemaError);
    }
}

TEST_CASE("load_symbol") {
    RadialSymbol p = load_symbol(nlohmann::json::parse(R"({"kind":"power","alpha":1.0})"), 3);
    CHECK(p.kind == RadialSymbol::Kind::Power);
    CHECK(p.dimension == 3);
    RadialSymbol t = load_symbol(nlohmann::json::parse(
                                     R"({"kind":"tabulated","r":[0.1,1.0,10.0],
                                         "t":[0.01,1.0,100.0],"tail_exp":2.0,"lead_exp":2.0})"),
                                 3);
    CHECK(t.kind == RadialSymbol::Kind::Tabulated);
    CHECK_THROWS_AS(load_symbol(nlohmann::json::parse(R"({"kind":"cubic"})"), 3),
                    SchemaError);
    CHECK_THROWS_AS(load_symbol(nlohmann::json::parse(R"({"kind":"power"})"), 3),
                    SchemaError);
}
