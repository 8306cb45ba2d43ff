#ifndef CLR_SCALEFN_HPP
#define CLR_SCALEFN_HPP

#include "clr/numerics.hpp"

#include <vector>

namespace clr {

// One power segment c * s^a on the half-open support [lo, hi).
// lo may be 0 and hi may be +infinity.
struct PowerSegment {
    double coef;
    double exponent;
    double lo;
    double hi;
};

struct LogGridLayout {
    double lo = 1e-8;
    double hi = 1e8;
    int n = 4096;
};

// A real function on R_+ measured against ds/s. Two representations:
//  - PiecewisePower: exact union of disjoint power segments, zero elsewhere.
//  - LogGrid: values at strictly increasing nodes, linear interpolation in
//    (log s, m), zero outside the node range.
// Immutable after construction.
class ScaleFn {
public:
    static ScaleFn piecewise_power(std::vector<PowerSegment> segments);
    static ScaleFn log_grid(std::vector<double> nodes, std::vector<double> values);
    static std::vector<double> layout_nodes(const LogGridLayout& layout);

    bool is_piecewise_power() const { return piecewise_; }
    const std::vector<PowerSegment>& segments() const { return segments_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }

    // evaluation; throws InvalidInput for s <= 0
    double operator()(double s) const;

private:
    ScaleFn() = default;
    bool piecewise_ = false;
    std::vector<PowerSegment> segments_;
    std::vector<double> nodes_;   // LogGrid
    std::vector<double> values_;  // LogGrid
    std::vector<double> logs_;    // cached log(nodes)
};

struct TailValue {
    double value;
    double truncation_bound; // estimated contribution outside the window
};

struct TailWindow {
    double t_min = 1e-8;
    double t_max = 1e8;
};

// Multiplicative convolution (m1 * m2)(t) = int m1(t/s) m2(s) ds/s.
// Piecewise-power operands convolve in closed form; the result is returned
// as PiecewisePower when each piece reduces to a single power, otherwise as
// the exact formula sampled on `grid`. LogGrid operands convolve exactly for
// their interpolants (piecewise-quadratic closed form); mixed operands fall
// back to adaptive quadrature per node.
ScaleFn mconvolve(const ScaleFn& m1, const ScaleFn& m2,
                  const LogGridLayout& grid = {},
                  const QuadratureSpec& spec = {});

// (int m(s)^2 ds/s)^{1/2}. Closed form for PiecewisePower, exact
// piecewise-quadratic integration for LogGrid. Throws DivergentIntegral.
double l2_scalenorm(const ScaleFn& m, const QuadratureSpec& spec = {});

// sup |m|; exact segment-wise for PiecewisePower, node maximum for LogGrid.
double sup_scalenorm(const ScaleFn& m);

// R_gamma(m) = int_0^inf (1 - m(t)/t)^2 t^{1-gamma} dt over `window`,
// integrated in closed form per power segment / grid cell. The neglected
// parts outside the window are estimated from local power fits and reported
// via truncation_bound. Requires gamma > 2; integrands that fail to decay
// toward t -> 0 raise DivergentIntegral.
TailValue tail_functional(const ScaleFn& m, double gamma,
                          const QuadratureSpec& spec = {},
                          const TailWindow& window = {});

} // namespace clr

#endif
