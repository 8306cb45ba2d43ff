#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clr/errors.hpp"
#include "clr/scalefn.hpp"

#include <cmath>
#include <limits>

using namespace clr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

ScaleFn half_lower() { // s 1{0<s<=1}
    return ScaleFn::piecewise_power({{1.0, 1.0, 0.0, 1.0}});
}
ScaleFn doubled_lower() { // 2s 1{0<s<=1}
    return ScaleFn::piecewise_power({{2.0, 1.0, 0.0, 1.0}});
}
ScaleFn upper() { // s^{-1} 1{s>=1}
    return ScaleFn::piecewise_power({{1.0, -1.0, 1.0, kInf}});
}
} // namespace

TEST_CASE("eval") {
    ScaleFn a = doubled_lower();
    CHECK(a(0.5) == doctest::Approx(1.0));
    ScaleFn b = upper();
    CHECK(b(4.0) == doctest::Approx(0.25));
    CHECK(b(0.5) == 0.0); // outside support
    CHECK_THROWS_AS(a(0.0), InvalidInput);
    CHECK_THROWS_AS(a(-1.0), InvalidInput);

    ScaleFn g = ScaleFn::log_grid({1.0, 2.0, 4.0}, {0.0, 1.0, 0.0});
    CHECK(g(2.0) == doctest::Approx(1.0));
    CHECK(g(std::sqrt(2.0)) == doctest::Approx(0.5)); // linear in log s
    CHECK(g(8.0) == 0.0);
    CHECK(g(0.5) == 0.0);
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(ScaleFn::piecewise_power({{1.0, 1.0, 2.0, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(
        ScaleFn::piecewise_power({{1.0, 1.0, 0.0, 2.0}, {1.0, 0.0, 1.0, 3.0}}),
        InvalidInput); // overlapping supports
    CHECK_THROWS_AS(ScaleFn::log_grid({1.0, 1.0}, {0.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(ScaleFn::log_grid({1.0}, {0.0}), InvalidInput);
}

TEST_CASE("l2_scalenorm closed forms") {
    // int_0^1 4s ds = 2
    CHECK(l2_scalenorm(doubled_lower()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // int_1^inf s^{-3} ds = 1/2
    CHECK(l2_scalenorm(upper()) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // product of the two norms is 1
    CHECK(l2_scalenorm(doubled_lower()) * l2_scalenorm(upper()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // divergent: constant on (0, 1)
    CHECK_THROWS_AS(l2_scalenorm(ScaleFn::piecewise_power({{1.0, 0.0, 0.0, 1.0}})),
                    DivergentIntegral);
    CHECK_THROWS_AS(l2_scalenorm(ScaleFn::piecewise_power({{1.0, 1.0, 1.0, kInf}})),
                    DivergentIntegral);
}

TEST_CASE("sup_scalenorm") {
    ScaleFn m = mconvolve(doubled_lower(), upper());
    CHECK(sup_scalenorm(m) == doctest::Approx(1.0)); // min(t, 1/t) peaks at 1
    ScaleFn capped = ScaleFn::piecewise_power({{1.0, 1.0, 0.0, 2.0}, {2.0, 0.0, 2.0, kInf}});
    CHECK(sup_scalenorm(capped) == doctest::Approx(2.0)); // min(t, 2)
    CHECK(sup_scalenorm(ScaleFn::piecewise_power({})) == 0.0);
}

TEST_CASE("mconvolve closed form: the simple splitting pair") {
    // 2s 1{0<s<=1} * s^{-1} 1{s>=1} = min(t, 1/t), exactly
    ScaleFn m = mconvolve(doubled_lower(), upper());
    REQUIRE(m.is_piecewise_power());
    double worst = 0.0;
    for (double t : ScaleFn::layout_nodes({1e-6, 1e6, 257}))
        worst = std::max(worst, std::fabs(m(t) - std::min(t, 1.0 / t)));
    CHECK(worst <= 1e-6);

    // the half-size pair lands at min(t, 1/t)/2:
    // analytic: t * int_{max(1,t)}^inf s^{-3} ds = t max(1,t)^{-2}/2
    ScaleFn h = mconvolve(half_lower(), upper());
    for (double t : {0.1, 0.9, 1.0, 3.7, 42.0})
        CHECK(h(t) == doctest::Approx(0.5 * std::min(t, 1.0 / t)).epsilon(1e-12));
}

TEST_CASE("mconvolve zero operand") {
    ScaleFn zero = ScaleFn::piecewise_power({});
    ScaleFn m = mconvolve(zero, upper());
    for (double t : {0.1, 1.0, 10.0}) CHECK(m(t) == 0.0);
}

TEST_CASE("mconvolve commutes") {
    ScaleFn a = mconvolve(doubled_lower(), upper());
    ScaleFn b = mconvolve(upper(), doubled_lower());
    for (double t : ScaleFn::layout_nodes({1e-4, 1e4, 41}))
        CHECK(a(t) == doctest::Approx(b(t)).epsilon(1e-10));
}

TEST_CASE("mconvolve numeric path against the closed form") {
    // log-grid realizations of the simple pair convolve to min(t,1/t)
    LogGridLayout layout{1e-7, 1e7, 2049};
    auto nodes = ScaleFn::layout_nodes(layout);
    std::vector<double> v1(nodes.size()), v2(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        v1[i] = nodes[i] <= 1.0 ? 2.0 * nodes[i] : 0.0;
        v2[i] = nodes[i] >= 1.0 ? 1.0 / nodes[i] : 0.0;
    }
    ScaleFn g1 = ScaleFn::log_grid(nodes, v1);
    ScaleFn g2 = ScaleFn::log_grid(nodes, v2);
    ScaleFn m = mconvolve(g1, g2, layout);
    double worst = 0.0;
    for (size_t i = 0; i < m.nodes().size(); ++i) {
        double t = m.nodes()[i];
        if (t < 1e-4 || t > 1e4) continue; // windowed by the operands' grids
        worst = std::max(worst, std::fabs(m.values()[i] - std::min(t, 1.0 / t)));
    }
    CHECK(worst <= 2e-5); // limited by linear-in-log interpolation of the operands
}

TEST_CASE("mconvolve divergence detection") {
    // s^{-1} on (0,1] convolved with s on [1,inf): integral diverges at +inf
    ScaleFn bad1 = ScaleFn::piecewise_power({{1.0, -1.0, 0.0, 1.0}});
    ScaleFn bad2 = ScaleFn::piecewise_power({{1.0, 1.0, 1.0, kInf}});
    CHECK_THROWS_AS(mconvolve(bad1, bad2), ConvergenceFailure);
}

TEST_CASE("tail_functional") {
    SUBCASE("simple-choice value 8/((g-2)g(g+2))") {
        ScaleFn m = mconvolve(doubled_lower(), upper());
        for (double g : {2.5, 3.0, 4.0, 6.0, 9.0}) {
            double want = 8.0 / ((g - 2.0) * g * (g + 2.0));
            CHECK(tail_functional(m, g).value == doctest::Approx(want).epsilon(1e-8));
        }
        // gamma = d = 3 in particular: 8/15
        CHECK(tail_functional(m, 3.0).value == doctest::Approx(8.0 / 15.0).epsilon(1e-9));
    }
    SUBCASE("capped ramp min(t, l)") {
        for (double l : {0.5, 1.0, 2.0})
            for (double g : {2.5, 3.0, 6.0}) {
                ScaleFn m = ScaleFn::piecewise_power(
                    {{1.0, 1.0, 0.0, l}, {l, 0.0, l, kInf}});
                double want = std::pow(l, 2.0 - g) * 2.0 / ((g - 2.0) * (g - 1.0) * g);
                CHECK(tail_functional(m, g).value ==
                      doctest::Approx(want).epsilon(1e-8));
            }
        // frozen spot value: l = 2, gamma = 4 -> 2^{-2} * 2/(2*3*4) = 1/48
        ScaleFn m = ScaleFn::piecewise_power({{1.0, 1.0, 0.0, 2.0}, {2.0, 0.0, 2.0, kInf}});
        CHECK(tail_functional(m, 4.0).value ==
              doctest::Approx(1.0 / 48.0).epsilon(1e-10));
    }
    SUBCASE("zero function diverges") {
        ScaleFn zero = ScaleFn::piecewise_power({});
        CHECK_THROWS_AS(tail_functional(zero, 3.0), DivergentIntegral);
    }
    SUBCASE("gamma domain") {
        ScaleFn m = mconvolve(doubled_lower(), upper());
        CHECK_THROWS_AS(tail_functional(m, 2.0), InvalidInput);
        CHECK_THROWS_AS(tail_functional(m, 1.5), InvalidInput);
    }
    SUBCASE("truncation bound reported") {
        ScaleFn m = mconvolve(doubled_lower(), upper());
        TailValue tv = tail_functional(m, 3.0, {}, {1e-4, 1e4});
        CHECK(tv.truncation_bound >= 0.0);
        CHECK(tv.truncation_bound <= 1e-7);
        CHECK(tv.value + tv.truncation_bound ==
              doctest::Approx(8.0 / 15.0).epsilon(1e-7));
    }
}

TEST_CASE("norm invariance under dilation and inversion") {
    ScaleFn m = ScaleFn::piecewise_power({{2.0, 1.0, 0.0, 1.0}, {0.7, -1.5, 1.0, kInf}});
    double base = l2_scalenorm(m);
    for (double c : {0.2, 3.0}) {
        std::vector<PowerSegment> segs;
        for (const auto& s : m.segments())
            segs.push_back({s.coef * std::pow(c, -s.exponent), s.exponent, s.lo * c,
                            s.hi * c});
        CHECK(l2_scalenorm(ScaleFn::piecewise_power(segs)) ==
              doctest::Approx(base).epsilon(1e-8));
    }
    std::vector<PowerSegment> inv;
    for (const auto& s : m.segments())
        inv.push_back({s.coef, -s.exponent, s.hi == kInf ? 0.0 : 1.0 / s.hi,
                       s.lo == 0.0 ? kInf : 1.0 / s.lo});
    CHECK(l2_scalenorm(ScaleFn::piecewise_power(inv)) ==
          doctest::Approx(base).epsilon(1e-8));
}

TEST_CASE("Cauchy-Schwarz for the sup of a convolution") {
    ScaleFn m1 = doubled_lower();
    ScaleFn m2 = upper();
    CHECK(sup_scalenorm(mconvolve(m1, m2)) <=
          l2_scalenorm(m1) * l2_scalenorm(m2) + 1e-8);
    ScaleFn a = ScaleFn::piecewise_power({{1.0, 0.5, 0.0, 1.0}, {1.0, -2.0, 1.0, kInf}});
    ScaleFn b = ScaleFn::piecewise_power({{0.5, -1.0, 1.0, kInf}});
    CHECK(sup_scalenorm(mconvolve(a, b)) <= l2_scalenorm(a) * l2_scalenorm(b) + 1e-8);
}
