#ifndef P1BOUNDS_EXPANSION_HPP
#define P1BOUNDS_EXPANSION_HPP

#include <cmath>
#include <stdexcept>

#include "p1bounds/function_model.hpp"
#include "p1bounds/mesh.hpp"

namespace p1bounds {

namespace detail {

/// Kahan compensated accumulator; the interior derivative sum can run to
/// n ~ 1e5 terms in the asymptotic experiments.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline void check_cell_in_domain(double x_i, double h_i) {
    if (!(h_i > 0.0))
        throw std::invalid_argument("expansion: cell width must be positive");
    if (x_i < 0.0 || x_i + h_i > 1.0)
        throw std::domain_error("expansion: cell must lie inside [0,1]");
}

} // namespace detail

/// One expansion step over a cell [x_i, x_i + h_i].
///
///   increment  the bracketed prediction h_i * (weighted derivative sum)
///   remainder  epsilon = (u(x_{i+1}) - u(x_i) - increment) / h_i, i.e. the
///              quantity that must be added to the weighted sum so the
///              expansion is exact
///   bound      guaranteed |epsilon| bound
struct ExpansionResult {
    double increment;
    double remainder;
    double bound;
};

/// Classical first-order Taylor step:
/// u(x_{i+1}) = u(x_i) + h_i u'(x_i) + h_i eps, |eps| <= (h_i/2) ||u''||_inf.
inline ExpansionResult taylor_step(const SmoothFunction& f, double x_i, double h_i) {
    detail::check_cell_in_domain(x_i, h_i);
    const double increment = h_i * f.d1(x_i);
    const double remainder = (f.value(x_i + h_i) - f.value(x_i)) / h_i - f.d1(x_i);
    const double bound = 0.5 * h_i * f.sup_d2;
    return {increment, remainder, bound};
}

/// n-point step whose derivative term is the n-panel composite-trapezoid
/// average of u' over the cell:
///
///   u(x_{i+1}) = u(x_i)
///              + h_i [ (u'(x_i) + u'(x_{i+1})) / (2n)
///                      + (1/n) sum_{k=1}^{n-1} u'(x'_k) ]
///              + h_i eps_n,        |eps_n| <= (h_i / (8n)) (M2 - m2).
inline ExpansionResult taylor_like_step(const SmoothFunction& f, double x_i, double h_i,
                                        int n) {
    detail::check_cell_in_domain(x_i, h_i);
    if (n < 1)
        throw std::invalid_argument("taylor_like_step: n must be positive");
    const double inv_n = 1.0 / static_cast<double>(n);
    detail::KahanSum interior;
    for (int k = 1; k < n; ++k)
        interior.add(f.d1(subdivision_point(x_i, h_i, n, k)));
    const double weighted =
        (f.d1(x_i) + f.d1(x_i + h_i)) / (2.0 * static_cast<double>(n)) +
        inv_n * interior.value();
    const double increment = h_i * weighted;
    const double remainder = (f.value(x_i + h_i) - f.value(x_i)) / h_i - weighted;
    const double bound = h_i / (8.0 * static_cast<double>(n)) * (f.M2 - f.m2);
    return {increment, remainder, bound};
}

} // namespace p1bounds

#endif
