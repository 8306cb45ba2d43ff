#include "clr/scalefn.hpp"
#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace clr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// construction / evaluation
// ---------------------------------------------------------------------------

ScaleFn ScaleFn::piecewise_power(std::vector<PowerSegment> segments) {
    std::sort(segments.begin(), segments.end(),
              [](const PowerSegment& x, const PowerSegment& y) { return x.lo < y.lo; });
    for (size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!(s.lo >= 0.0) || !(s.lo < s.hi))
            throw InvalidInput("ScaleFn: segment needs 0 <= lo < hi");
        if (!std::isfinite(s.coef) || !std::isfinite(s.exponent))
            throw InvalidInput("ScaleFn: segment coefficient/exponent must be finite");
        if (i > 0 && segments[i - 1].hi > s.lo + 1e-300 && segments[i - 1].hi > s.lo)
            throw InvalidInput("ScaleFn: segment supports overlap");
    }
    ScaleFn f;
    f.piecewise_ = true;
    f.segments_ = std::move(segments);
    return f;
}

ScaleFn ScaleFn::log_grid(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw InvalidInput("ScaleFn: log grid needs >= 2 nodes and matching values");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] > 0.0) || !std::isfinite(values[i]))
            throw InvalidInput("ScaleFn: log grid nodes must be positive, values finite");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw InvalidInput("ScaleFn: log grid nodes must be strictly increasing");
    }
    ScaleFn f;
    f.piecewise_ = false;
    f.nodes_ = std::move(nodes);
    f.values_ = std::move(values);
    f.logs_.resize(f.nodes_.size());
    for (size_t i = 0; i < f.nodes_.size(); ++i) f.logs_[i] = std::log(f.nodes_[i]);
    return f;
}

std::vector<double> ScaleFn::layout_nodes(const LogGridLayout& layout) {
    if (!(layout.lo > 0.0) || !(layout.lo < layout.hi) || layout.n < 2)
        throw InvalidInput("LogGridLayout: need 0 < lo < hi and n >= 2");
    std::vector<double> nodes(layout.n);
    const double llo = std::log(layout.lo), lhi = std::log(layout.hi);
    for (int i = 0; i < layout.n; ++i)
        nodes[i] = std::exp(llo + (lhi - llo) * i / (layout.n - 1));
    return nodes;
}

double ScaleFn::operator()(double s) const {
    if (!(s > 0.0))
        throw InvalidInput("ScaleFn: evaluation needs s > 0");
    if (piecewise_) {
        for (const auto& seg : segments_)
            if (s >= seg.lo && s < seg.hi)
                return seg.coef * std::pow(s, seg.exponent);
        return 0.0;
    }
    if (s < nodes_.front() || s > nodes_.back())
        return 0.0;
    double x = std::log(s);
    auto it = std::upper_bound(logs_.begin(), logs_.end(), x);
    size_t i = (it == logs_.begin()) ? 0 : (it - logs_.begin() - 1);
    if (i >= nodes_.size() - 1) i = nodes_.size() - 2;
    double t = (x - logs_[i]) / (logs_[i + 1] - logs_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

// ---------------------------------------------------------------------------
// convolution
// ---------------------------------------------------------------------------

namespace {

// Exact value of the convolution of two power segments at t:
//   c1 c2 t^a  int_{L}^{U} s^{b-a-1} ds,  L = max(t/h1, l2), U = min(t/l1, h2).
double pair_conv_value(const PowerSegment& s1, const PowerSegment& s2, double t) {
    double L = s2.lo;
    if (std::isfinite(s1.hi)) L = std::max(L, t / s1.hi);
    double U = s2.hi;
    if (s1.lo > 0.0) U = std::min(U, t / s1.lo);
    if (!(U > L)) return 0.0;
    const double g = s2.exponent - s1.exponent;
    const double cc = s1.coef * s2.coef;
    if (g == 0.0)
        return cc * std::pow(t, s1.exponent) * std::log(U / L);
    double upow = (U == kInf) ? 0.0 : std::pow(U, g); // g < 0 guaranteed by pre-check
    double lpow = (L == 0.0) ? 0.0 : std::pow(L, g);  // g > 0 guaranteed by pre-check
    return cc * std::pow(t, s1.exponent) * (upow - lpow) / g;
}

void check_pair_convergence(const PowerSegment& s1, const PowerSegment& s2) {
    const double g = s2.exponent - s1.exponent;
    if (s1.lo == 0.0 && s2.hi == kInf && g >= 0.0)
        throw ConvergenceFailure("mconvolve: divergent convolution integral (upper end)", 0.0);
    if (s1.hi == kInf && s2.lo == 0.0 && g <= 0.0)
        throw ConvergenceFailure("mconvolve: divergent convolution integral (lower end)", 0.0);
}

struct Monomial {
    double exponent;
    double coef;
};

// Monomial decomposition of one pair's contribution on a t-interval that
// contains no breakpoint of the pair; `tm` is any interior point.
// Returns false if the piece carries a t^a*log(t) term.
bool pair_monomials(const PowerSegment& s1, const PowerSegment& s2, double tm,
                    std::vector<Monomial>& out) {
    double L = s2.lo;
    bool l_from_t = false;
    if (std::isfinite(s1.hi) && tm / s1.hi > L) { L = tm / s1.hi; l_from_t = true; }
    double U = s2.hi;
    bool u_from_t = false;
    if (s1.lo > 0.0 && tm / s1.lo < U) { U = tm / s1.lo; u_from_t = true; }
    if (!(U > L)) return true; // inactive piece
    const double a = s1.exponent, b = s2.exponent;
    const double g = b - a;
    const double cc = s1.coef * s2.coef;
    if (g == 0.0) {
        if (u_from_t == l_from_t) {
            double ratio = u_from_t ? (s1.hi / s1.lo) : (s2.hi / s2.lo);
            out.push_back({a, cc * std::log(ratio)});
            return true;
        }
        return false; // genuine log(t) term
    }
    if (u_from_t)
        out.push_back({b, cc * std::pow(s1.lo, -g) / g});
    else if (std::isfinite(U))
        out.push_back({a, cc * std::pow(s2.hi, g) / g});
    if (l_from_t)
        out.push_back({b, -cc * std::pow(s1.hi, -g) / g});
    else if (L > 0.0)
        out.push_back({a, -cc * std::pow(s2.lo, g) / g});
    return true;
}

ScaleFn convolve_pp(const ScaleFn& m1, const ScaleFn& m2, const LogGridLayout& grid) {
    const auto& seg1 = m1.segments();
    const auto& seg2 = m2.segments();
    for (const auto& s1 : seg1)
        for (const auto& s2 : seg2)
            check_pair_convergence(s1, s2);

    // candidate breakpoints in t
    std::vector<double> breaks;
    auto push = [&](double v) {
        if (std::isfinite(v) && v > 0.0) breaks.push_back(v);
    };
    for (const auto& s1 : seg1)
        for (const auto& s2 : seg2) {
            if (s1.lo > 0.0 && s2.lo > 0.0) push(s1.lo * s2.lo);
            if (std::isfinite(s1.hi) && std::isfinite(s2.hi)) push(s1.hi * s2.hi);
            if (std::isfinite(s1.hi) && s2.lo > 0.0) push(s1.hi * s2.lo);
            if (s1.lo > 0.0 && std::isfinite(s2.hi)) push(s1.lo * s2.hi);
        }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<double> edges;
    edges.push_back(0.0);
    for (double b : breaks) edges.push_back(b);
    edges.push_back(kInf);

    std::vector<PowerSegment> result;
    bool representable = true;
    for (size_t i = 0; i + 1 < edges.size() && representable; ++i) {
        double lo = edges[i], hi = edges[i + 1];
        double tm = (lo == 0.0) ? hi * 0.5 : (hi == kInf ? lo * 2.0 : std::sqrt(lo * hi));
        std::vector<Monomial> mono;
        for (const auto& s1 : seg1)
            for (const auto& s2 : seg2)
                if (!pair_monomials(s1, s2, tm, mono)) {
                    representable = false;
                    break;
                }
        if (!representable) break;
        std::map<double, double> merged;
        for (const auto& m : mono) merged[m.exponent] += m.coef;
        for (auto it = merged.begin(); it != merged.end();)
            it = (std::fabs(it->second) < 1e-300) ? merged.erase(it) : std::next(it);
        if (merged.size() > 1) {
            representable = false;
            break;
        }
        if (merged.size() == 1)
            result.push_back({merged.begin()->second, merged.begin()->first, lo, hi});
    }
    if (representable)
        return ScaleFn::piecewise_power(std::move(result));

    // exact formula sampled on the grid
    std::vector<double> nodes = ScaleFn::layout_nodes(grid);
    std::vector<double> values(nodes.size(), 0.0);
    for (size_t i = 0; i < nodes.size(); ++i)
        for (const auto& s1 : seg1)
            for (const auto& s2 : seg2)
                values[i] += pair_conv_value(s1, s2, nodes[i]);
    return ScaleFn::log_grid(std::move(nodes), std::move(values));
}

// Exact convolution of two log-grid interpolants sampled on `grid`:
// the x-integrand is piecewise quadratic, integrated cell-exactly by Simpson.
ScaleFn convolve_gg(const ScaleFn& m1, const ScaleFn& m2, const LogGridLayout& grid) {
    const std::vector<double>& x1 = m1.nodes();
    const std::vector<double>& x2 = m2.nodes();
    std::vector<double> lx1(x1.size()), lx2(x2.size());
    for (size_t i = 0; i < x1.size(); ++i) lx1[i] = std::log(x1[i]);
    for (size_t i = 0; i < x2.size(); ++i) lx2[i] = std::log(x2[i]);
    const auto& v1 = m1.values();
    const auto& v2 = m2.values();

    std::vector<double> nodes = ScaleFn::layout_nodes(grid);
    std::vector<double> values(nodes.size(), 0.0);

    for (size_t k = 0; k < nodes.size(); ++k) {
        const double tau = std::log(nodes[k]);
        double xlo = std::max(lx2.front(), tau - lx1.back());
        double xhi = std::min(lx2.back(), tau - lx1.front());
        if (!(xhi > xlo)) continue;

        // merged breakpoints: nodes of m2 and reflected nodes of m1
        std::vector<double> bp;
        bp.reserve(lx1.size() + lx2.size());
        for (double x : lx2)
            if (x > xlo && x < xhi) bp.push_back(x);
        for (size_t i = lx1.size(); i-- > 0;) {
            double x = tau - lx1[i];
            if (x > xlo && x < xhi) bp.push_back(x);
        }
        bp.push_back(xlo);
        bp.push_back(xhi);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

        auto lin_at = [](const std::vector<double>& lx, const std::vector<double>& v,
                         double x) {
            auto it = std::upper_bound(lx.begin(), lx.end(), x);
            size_t i = (it == lx.begin()) ? 0 : (it - lx.begin() - 1);
            if (i >= lx.size() - 1) i = lx.size() - 2;
            double t = (x - lx[i]) / (lx[i + 1] - lx[i]);
            return v[i] + t * (v[i + 1] - v[i]);
        };
        auto integrand = [&](double x) {
            return lin_at(lx1, v1, tau - x) * lin_at(lx2, v2, x);
        };

        double acc = 0.0;
        for (size_t i = 0; i + 1 < bp.size(); ++i) {
            double a = bp[i], b = bp[i + 1];
            double fa = integrand(a), fm = integrand(0.5 * (a + b)), fb = integrand(b);
            acc += (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
        values[k] = acc;
    }
    return ScaleFn::log_grid(std::move(nodes), std::move(values));
}

// generic per-node quadrature for mixed representations
ScaleFn convolve_numeric(const ScaleFn& m1, const ScaleFn& m2, const LogGridLayout& grid,
                         const QuadratureSpec& spec) {
    auto s_support = [](const ScaleFn& m, double& lo, double& hi) {
        if (m.is_piecewise_power()) {
            lo = kInf; hi = 0.0;
            for (const auto& s : m.segments()) {
                lo = std::min(lo, s.lo);
                hi = std::max(hi, s.hi);
            }
            if (m.segments().empty()) { lo = 1.0; hi = 1.0; }
        } else {
            lo = m.nodes().front();
            hi = m.nodes().back();
        }
    };
    double lo1, hi1, lo2, hi2;
    s_support(m1, lo1, hi1);
    s_support(m2, lo2, hi2);

    std::vector<double> nodes = ScaleFn::layout_nodes(grid);
    std::vector<double> values(nodes.size(), 0.0);
    for (size_t k = 0; k < nodes.size(); ++k) {
        double t = nodes[k];
        double slo = std::max(lo2, std::isfinite(hi1) ? t / hi1 : 0.0);
        double shi = std::min(hi2, lo1 > 0.0 ? t / lo1 : kInf);
        if (!(shi > slo)) continue;

        // split at segment edges of either operand
        std::vector<double> cuts;
        cuts.push_back(slo);
        cuts.push_back(shi);
        auto add_cut = [&](double s) {
            if (s > slo && s < shi && std::isfinite(s)) cuts.push_back(s);
        };
        if (m1.is_piecewise_power())
            for (const auto& s : m1.segments()) {
                if (s.lo > 0.0) add_cut(t / s.lo);
                if (std::isfinite(s.hi)) add_cut(t / s.hi);
            }
        if (m2.is_piecewise_power())
            for (const auto& s : m2.segments()) {
                add_cut(s.lo);
                if (std::isfinite(s.hi)) add_cut(s.hi);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        auto integrand = [&](double x) {
            double s = std::exp(x);
            return m1(t / s) * m2(s);
        };
        double acc = 0.0;
        try {
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                double a = std::log(cuts[i]);
                double b = std::isfinite(cuts[i + 1]) ? std::log(cuts[i + 1]) : kInf;
                acc += integrate_1d(integrand, a, b, spec).value;
            }
        } catch (const ConvergenceFailure& e) {
            throw ConvergenceFailure(
                "mconvolve: divergent/non-convergent integral at node " +
                    std::to_string(k) + " (t = " + std::to_string(t) + ")",
                e.partial());
        }
        values[k] = acc;
    }
    return ScaleFn::log_grid(std::move(nodes), std::move(values));
}

} // namespace

ScaleFn mconvolve(const ScaleFn& m1, const ScaleFn& m2, const LogGridLayout& grid,
                  const QuadratureSpec& spec) {
    if (m1.is_piecewise_power() && m2.is_piecewise_power())
        return convolve_pp(m1, m2, grid);
    if (!m1.is_piecewise_power() && !m2.is_piecewise_power())
        return convolve_gg(m1, m2, grid);
    return convolve_numeric(m1, m2, grid, spec);
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

double l2_scalenorm(const ScaleFn& m, const QuadratureSpec& spec) {
    (void)spec;
    if (m.is_piecewise_power()) {
        double acc = 0.0;
        for (const auto& s : m.segments()) {
            const double e = 2.0 * s.exponent;
            double piece;
            if (e == 0.0) {
                if (s.lo == 0.0 || s.hi == kInf)
                    throw DivergentIntegral("l2_scalenorm: divergent segment");
                piece = std::log(s.hi / s.lo);
            } else {
                double hi_t = (s.hi == kInf) ? (e < 0.0 ? 0.0 : kInf) : std::pow(s.hi, e);
                double lo_t = (s.lo == 0.0) ? (e > 0.0 ? 0.0 : kInf) : std::pow(s.lo, e);
                piece = (hi_t - lo_t) / e;
                if (!std::isfinite(piece))
                    throw DivergentIntegral("l2_scalenorm: divergent segment");
            }
            acc += s.coef * s.coef * piece;
        }
        return std::sqrt(acc);
    }
    // exact integral of the squared interpolant, cell by cell
    const auto& v = m.values();
    const auto& n = m.nodes();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < n.size(); ++i) {
        double h = std::log(n[i + 1] / n[i]);
        acc += h / 3.0 * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]);
    }
    return std::sqrt(acc);
}

double sup_scalenorm(const ScaleFn& m) {
    if (m.is_piecewise_power()) {
        double best = 0.0;
        for (const auto& s : m.segments()) {
            double mag;
            if (s.exponent == 0.0)
                mag = 1.0;
            else if (s.exponent > 0.0)
                mag = (s.hi == kInf) ? kInf : std::pow(s.hi, s.exponent);
            else
                mag = (s.lo == 0.0) ? kInf : std::pow(s.lo, s.exponent);
            best = std::max(best, std::fabs(s.coef) * mag);
        }
        return best;
    }
    double best = 0.0;
    for (double v : m.values()) best = std::max(best, std::fabs(v));
    return best;
}

// ---------------------------------------------------------------------------
// tail functional
// ---------------------------------------------------------------------------

namespace {

double tail_integrand(const ScaleFn& m, double gamma, double t) {
    double d = 1.0 - m(t) / t;
    return d * d * std::pow(t, 1.0 - gamma);
}

// Boole's rule on [a, b] in the log variable
double boole_log(const ScaleFn& m, double gamma, double xa, double xb) {
    double acc = 0.0;
    const double w[5] = {7.0, 32.0, 12.0, 32.0, 7.0};
    for (int i = 0; i < 5; ++i) {
        double x = xa + (xb - xa) * i / 4.0;
        double t = std::exp(x);
        double d = 1.0 - m(t) / t;
        acc += w[i] * d * d * std::exp((2.0 - gamma) * x);
    }
    return acc * (xb - xa) / 90.0;
}

} // namespace

TailValue tail_functional(const ScaleFn& m, double gamma, const QuadratureSpec& spec,
                          const TailWindow& window) {
    if (!(gamma > 2.0 + 1e-9))
        throw InvalidInput("tail_functional: gamma must exceed 2");
    if (!(window.t_min > 0.0) || !(window.t_min < window.t_max))
        throw InvalidInput("tail_functional: bad window");
    spec.validate();

    const double t0 = window.t_min, t1 = window.t_max;

    // divergence detection near the lower edge
    double h0 = tail_integrand(m, gamma, t0);
    double h0b = tail_integrand(m, gamma, 10.0 * t0);
    if (h0 * t0 > std::max(spec.abs_tol, 1e-14) && h0 > 0.0) {
        double slope = (h0b > 0.0) ? std::log(h0b / h0) / std::log(10.0) : kInf;
        if (slope <= -1.0 + 1e-9)
            throw DivergentIntegral(
                "tail_functional: integrand does not decay toward t -> 0");
    }

    double value = 0.0;

    if (m.is_piecewise_power()) {
        // split the window at segment edges, adaptive quadrature per piece
        std::vector<double> cuts{t0, t1};
        for (const auto& s : m.segments()) {
            if (s.lo > t0 && s.lo < t1) cuts.push_back(s.lo);
            if (std::isfinite(s.hi) && s.hi > t0 && s.hi < t1) cuts.push_back(s.hi);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        auto f = [&](double x) {
            double t = std::exp(x);
            double d = 1.0 - m(t) / t;
            return d * d * std::exp((2.0 - gamma) * x);
        };
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            value += integrate_1d(f, std::log(cuts[i]), std::log(cuts[i + 1]), spec).value;
    } else {
        // cell-wise Boole in the log variable; pure t^{1-gamma} outside the grid
        const auto& n = m.nodes();
        auto plain = [&](double a, double b) { // int_a^b t^{1-gamma} dt
            double e = 2.0 - gamma;
            return (std::pow(b, e) - std::pow(a, e)) / e;
        };
        double glo = n.front(), ghi = n.back();
        if (t0 < glo) value += plain(t0, std::min(glo, t1));
        if (t1 > ghi) value += plain(std::max(ghi, t0), t1);
        double a = std::max(t0, glo), b = std::min(t1, ghi);
        if (b > a) {
            size_t i0 = std::upper_bound(n.begin(), n.end(), a) - n.begin();
            for (size_t i = (i0 == 0 ? 0 : i0 - 1); i + 1 < n.size() && n[i] < b; ++i) {
                double xa = std::log(std::max(n[i], a));
                double xb = std::log(std::min(n[i + 1], b));
                if (xb > xa) value += boole_log(m, gamma, xa, xb);
            }
        }
    }

    // truncation estimates from local power fits at the window edges
    double trunc = 0.0;
    {
        double hh = tail_integrand(m, gamma, t1);
        double hm = tail_integrand(m, gamma, 0.5 * t1);
        if (hh > 0.0) {
            double rho = (hm > 0.0) ? std::log(hh / hm) / std::log(2.0) : -kInf;
            trunc += (rho < -1.0) ? hh * t1 / (-1.0 - rho) : kInf;
        }
        if (h0 > 0.0) {
            double sigma = (h0b > 0.0) ? std::log(h0b / h0) / std::log(10.0) : kInf;
            trunc += (sigma > -1.0) ? h0 * t0 / (sigma + 1.0) : kInf;
        }
    }
    return {value, trunc};
}

} // namespace clr
