#include "clr/numerics.hpp"
#include "clr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace clr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK values).
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    double value = resk * h;
    double err = std::fabs((resk - resg) * h);
    if (std::isnan(value))
        throw InvalidInput("integrate_1d: integrand returned NaN");
    // the classic sharpened error estimate
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    resabs = (resabs + kWgk[7] * std::fabs(fv[7])) * std::fabs(h);
    if (resabs > 0.0 && err > 0.0)
        err = resabs * std::min(1.0, std::pow(200.0 * err / resabs, 1.5));
    return {value, err};
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

QuadratureResult adaptive_gk(const std::function<double(double)>& f, double a, double b,
                             const QuadratureSpec& spec) {
    std::priority_queue<Interval> heap;
    PanelEstimate e0 = gk15(f, a, b);
    heap.push({a, b, e0.value, e0.error});
    double total_val = e0.value;
    double total_err = e0.error;
    int used = 1;
    const double min_width = std::fabs(b - a) * 1e-14;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_val))) {
        if (used >= spec.max_subdivisions)
            throw ConvergenceFailure(
                "integrate_1d: no convergence after " + std::to_string(used) +
                    " subdivisions (err " + std::to_string(total_err) + ")",
                total_val);
        Interval worst = heap.top();
        if (std::fabs(worst.b - worst.a) < min_width)
            break; // roundoff floor; report what we have
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        PanelEstimate left = gk15(f, worst.a, mid);
        PanelEstimate right = gk15(f, mid, worst.b);
        total_val += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        ++used;
    }
    return {total_val, total_err};
}

// --- double-exponential rules -----------------------------------------------

// Generic trapezoid-in-u scheme over a DE node map; refines h until the
// level-to-level difference meets the tolerance.
QuadratureResult de_scheme(const std::function<double(double)>& g, // g(u) = f(x(u)) * x'(u)
                           const QuadratureSpec& spec) {
    const double umax = 4.0;
    double h = 1.0;
    double prev = kInf;
    double value = 0.0;
    double err = kInf;
    for (int level = 0; level <= 11; ++level) {
        double sum = 0.0;
        // at level 0 sum all nodes, afterwards only the odd (new) ones
        long kmax = std::lround(umax / h);
        for (long k = -kmax; k <= kmax; ++k) {
            if (level > 0 && (k % 2 == 0)) continue;
            double t = g(k * h);
            if (std::isnan(t))
                throw InvalidInput("integrate_1d: integrand returned NaN");
            sum += t;
        }
        value = (level == 0) ? sum * h : 0.5 * prev + sum * h * 0.5;
        err = std::fabs(value - prev);
        if (level > 1 && err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value)))
            return {value, err};
        prev = value;
        h *= 0.5;
    }
    if (!(err <= std::max(spec.abs_tol * 1e3, spec.rel_tol * 1e3 * std::fabs(value))))
        throw ConvergenceFailure("integrate_1d: double-exponential rule did not converge", value);
    return {value, err};
}

QuadratureResult de_finite(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    const double mid = 0.5 * (a + b);
    const double halfw = 0.5 * (b - a);
    const double piO2 = 1.5707963267948966;
    auto g = [&](double u) {
        double s = piO2 * std::sinh(u);
        double ch = std::cosh(s);
        double x = mid + halfw * std::tanh(s);
        if (x <= a || x >= b) return 0.0; // clamped by roundoff
        double w = halfw * piO2 * std::cosh(u) / (ch * ch);
        double v = f(x) * w;
        return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
    };
    return de_scheme(g, spec);
}

QuadratureResult de_upper_infinite(const std::function<double(double)>& f, double a,
                                   const QuadratureSpec& spec) {
    const double piO2 = 1.5707963267948966;
    auto g = [&](double u) {
        double s = piO2 * std::sinh(u);
        if (s > 690.0) return 0.0;
        double x = a + std::exp(s);
        double w = piO2 * std::cosh(u) * std::exp(s);
        double v = f(x) * w;
        return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
    };
    return de_scheme(g, spec);
}

QuadratureResult de_doubly_infinite(const std::function<double(double)>& f,
                                    const QuadratureSpec& spec) {
    const double piO2 = 1.5707963267948966;
    auto g = [&](double u) {
        double s = piO2 * std::sinh(u);
        if (std::fabs(s) > 690.0) return 0.0;
        double x = std::sinh(s);
        double w = piO2 * std::cosh(u) * std::cosh(s);
        double v = f(x) * w;
        return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
    };
    return de_scheme(g, spec);
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0))
        throw InvalidInput("QuadratureSpec: rel_tol must be > 0");
    if (abs_tol < 0.0)
        throw InvalidInput("QuadratureSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1)
        throw InvalidInput("QuadratureSpec: max_subdivisions must be >= 1");
}

QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(a) || std::isnan(b) || a >= b)
        throw InvalidInput("integrate_1d: bad interval");

    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);

    if (spec.method == QuadMethod::DoubleExponential) {
        if (lo_inf && hi_inf) return de_doubly_infinite(f, spec);
        if (hi_inf) return de_upper_infinite(f, a, spec);
        if (lo_inf) {
            auto fr = [&](double x) { return f(b - x); };
            return de_upper_infinite(fr, 0.0, spec);
        }
        return de_finite(f, a, b, spec);
    }

    if (lo_inf && hi_inf) {
        auto g = [&](double t) {
            double den = 1.0 - t * t;
            double x = t / den;
            double w = (1.0 + t * t) / (den * den);
            double v = f(x) * w;
            return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
        };
        return adaptive_gk(g, -1.0, 1.0, spec);
    }
    if (hi_inf) {
        auto g = [&](double t) {
            double den = 1.0 - t;
            double x = a + t / den;
            double w = 1.0 / (den * den);
            double v = f(x) * w;
            return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
        };
        return adaptive_gk(g, 0.0, 1.0, spec);
    }
    if (lo_inf) {
        auto g = [&](double t) {
            double den = 1.0 - t;
            double x = b - t / den;
            double w = 1.0 / (den * den);
            double v = f(x) * w;
            return std::isfinite(v) ? v : (std::isnan(v) ? std::nan("") : 0.0);
        };
        return adaptive_gk(g, 0.0, 1.0, spec);
    }
    return adaptive_gk(f, a, b, spec);
}

// ---------------------------------------------------------------------------

void SearchSpec::validate() const {
    if (restarts < 1)
        throw InvalidInput("SearchSpec: restarts must be >= 1");
    if (max_iterations < 1)
        throw InvalidInput("SearchSpec: max_iterations must be >= 1");
    for (const auto& [lo, hi] : box)
        if (!(lo < hi))
            throw InvalidInput("SearchSpec: box needs lo < hi in every coordinate");
}

ScalarMin minimize_scalar(const std::function<double(double)>& f,
                          double lo, double hi, const SearchSpec& spec) {
    spec.validate();
    if (!(lo < hi))
        throw InvalidInput("minimize_scalar: need lo < hi");

    auto eval = [&](double x) {
        double v = f(x);
        if (std::isnan(v))
            throw InvalidInput("minimize_scalar: objective returned NaN");
        return v;
    };

    // coarse scan, then zoom toward an edge until an interior bracket appears
    const int n0 = 33;
    double a = lo, b = hi;
    double xm = 0.0, fm = kInf, xl = 0.0, xr = 0.0;
    for (int zoom = 0; zoom < 60; ++zoom) {
        int best = -1;
        double bestf = kInf;
        std::vector<double> xs(n0), fs(n0);
        for (int i = 0; i < n0; ++i) {
            xs[i] = a + (b - a) * (i + 1) / (n0 + 1);
            fs[i] = eval(xs[i]);
            if (fs[i] < bestf) { bestf = fs[i]; best = i; }
        }
        if (best > 0 && best < n0 - 1) {
            xl = xs[best - 1]; xm = xs[best]; xr = xs[best + 1]; fm = fs[best];
            break;
        }
        // minimum at scan edge: zoom into the edge cell
        if (best == 0) { b = xs[1]; }
        else { a = xs[n0 - 2]; }
        if (b - a < (hi - lo) * 1e-13 ||
            (best == 0 && a == lo && eval(a + (b - a) * 1e-3) >= fs[0] && zoom > 40))
            throw BracketFailure("minimize_scalar: no interior minimum in bracket");
        if (zoom == 59)
            throw BracketFailure("minimize_scalar: no interior minimum in bracket");
    }

    // Brent refinement on (xl, xr)
    const double gold = 0.3819660112501051;
    double xa = xl, xb = xr;
    double x = xm, w = xm, v = xm;
    double fx = fm, fw = fm, fv = fm;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < spec.max_iterations; ++iter) {
        double m = 0.5 * (xa + xb);
        double tol1 = spec.x_tol * std::fabs(x) + 1e-300;
        double tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (xb - xa))
            break;
        bool parabolic = false;
        if (std::fabs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            double etemp = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (xa - x) && p < q * (xb - x)) {
                parabolic = true;
                d = p / q;
                double u = x + d;
                if (u - xa < tol2 || xb - u < tol2)
                    d = (m > x) ? tol1 : -tol1;
            }
        }
        if (!parabolic) {
            e = (x >= m) ? xa - x : xb - x;
            d = gold * e;
        }
        double u = (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        double fu = eval(u);
        if (fu <= fx) {
            if (u >= x) xa = x; else xb = x;
            v = w; fv = fw; w = x; fw = fx; x = u; fx = fu;
        } else {
            if (u < x) xa = u; else xb = u;
            if (fu <= fw || w == x) { v = w; fv = fw; w = u; fw = fu; }
            else if (fu <= fv || v == x || v == w) { v = u; fv = fu; }
        }
    }
    return {x, fx};
}

namespace {

double halton(long index, int base) {
    double r = 0.0, f = 1.0;
    long i = index;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

const int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

} // namespace

double pairwise_sum(const std::vector<double>& xs) {
    std::function<double(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> double {
        if (hi - lo <= 4) {
            double s = 0.0;
            for (size_t i = lo; i < hi; ++i) s += xs[i];
            return s;
        }
        size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return xs.empty() ? 0.0 : rec(0, xs.size());
}

SimplexResult minimize_simplex(
    const std::function<double(const std::vector<double>&)>& f,
    const SearchSpec& spec) {
    spec.validate();
    const size_t n = spec.box.size();
    if (n == 0)
        throw InvalidInput("minimize_simplex: empty box");
    if (n > sizeof(kHaltonBases) / sizeof(int))
        throw InvalidInput("minimize_simplex: too many dimensions");

    long evaluations = 0;
    auto penalized = [&](const std::vector<double>& x) {
        double pen = 0.0;
        std::vector<double> xc(x);
        for (size_t j = 0; j < n; ++j) {
            double lo = spec.box[j].first, hi = spec.box[j].second;
            if (xc[j] < lo) { pen += (lo - xc[j]) * (lo - xc[j]); xc[j] = lo; }
            if (xc[j] > hi) { pen += (xc[j] - hi) * (xc[j] - hi); xc[j] = hi; }
        }
        ++evaluations;
        double v = f(xc);
        if (std::isnan(v)) v = kInf;
        return v + 1e6 * pen;
    };

    SimplexResult out;
    out.min = kInf;
    out.converged = false;

    for (int r = 0; r < spec.restarts; ++r) {
        long idx = 1 + r + static_cast<long>(spec.seed % 4096) * 131;
        std::vector<double> x0(n);
        for (size_t j = 0; j < n; ++j) {
            double u = halton(idx, kHaltonBases[j]);
            x0[j] = spec.box[j].first + u * (spec.box[j].second - spec.box[j].first);
        }

        // initial simplex: x0 plus axis steps of 10% of the box, folded inward
        std::vector<std::vector<double>> pts(n + 1, x0);
        for (size_t j = 0; j < n; ++j) {
            double step = 0.1 * (spec.box[j].second - spec.box[j].first);
            if (x0[j] + step > spec.box[j].second) step = -step;
            pts[j + 1][j] += step;
        }
        std::vector<double> fs(n + 1);
        for (size_t i = 0; i <= n; ++i) fs[i] = penalized(pts[i]);

        bool converged = false;
        for (int iter = 0; iter < spec.max_iterations; ++iter) {
            // order vertices
            std::vector<size_t> ord(n + 1);
            for (size_t i = 0; i <= n; ++i) ord[i] = i;
            std::sort(ord.begin(), ord.end(),
                      [&](size_t i, size_t k) { return fs[i] < fs[k]; });
            size_t ibest = ord[0], iworst = ord[n], i2nd = ord[n - 1];

            if (r == 0 || fs[ibest] < out.min)
                out.trace.push_back({iter, fs[ibest]});

            double diam = 0.0;
            for (size_t i = 0; i <= n; ++i)
                for (size_t j = 0; j < n; ++j)
                    diam = std::max(diam, std::fabs(pts[i][j] - pts[ibest][j]));
            if (std::fabs(fs[iworst] - fs[ibest]) <=
                    spec.f_tol * (std::fabs(fs[ibest]) + spec.f_tol) &&
                diam <= spec.x_tol * (1.0 + std::fabs(pts[ibest][0]))) {
                converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (size_t i = 0; i <= n; ++i) {
                if (i == iworst) continue;
                for (size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
            }
            for (size_t j = 0; j < n; ++j) centroid[j] /= n;

            auto blend = [&](double coef) {
                std::vector<double> p(n);
                for (size_t j = 0; j < n; ++j)
                    p[j] = centroid[j] + coef * (pts[iworst][j] - centroid[j]);
                return p;
            };

            std::vector<double> xr = blend(-1.0);
            double fr = penalized(xr);
            if (fr < fs[ibest]) {
                std::vector<double> xe = blend(-2.0);
                double fe = penalized(xe);
                if (fe < fr) { pts[iworst] = xe; fs[iworst] = fe; }
                else { pts[iworst] = xr; fs[iworst] = fr; }
            } else if (fr < fs[i2nd]) {
                pts[iworst] = xr; fs[iworst] = fr;
            } else {
                bool outside = fr < fs[iworst];
                std::vector<double> xc = blend(outside ? -0.5 : 0.5);
                double fc = penalized(xc);
                if (fc < std::min(fr, fs[iworst])) {
                    pts[iworst] = xc; fs[iworst] = fc;
                } else {
                    for (size_t i = 0; i <= n; ++i) {
                        if (i == ibest) continue;
                        for (size_t j = 0; j < n; ++j)
                            pts[i][j] = pts[ibest][j] + 0.5 * (pts[i][j] - pts[ibest][j]);
                        fs[i] = penalized(pts[i]);
                    }
                }
            }
        }

        size_t ib = 0;
        for (size_t i = 1; i <= n; ++i)
            if (fs[i] < fs[ib]) ib = i;
        if (fs[ib] < out.min) {
            out.min = fs[ib];
            out.argmin = pts[ib];
        }
        out.converged = out.converged || converged;
    }

    out.evaluations = evaluations;
    if (!std::isfinite(out.min))
        throw ConvergenceFailure("minimize_simplex: all restarts diverged", out.min);
    return out;
}

} // namespace clr
