#ifndef P1BOUNDS_FUNCTION_MODEL_HPP
#define P1BOUNDS_FUNCTION_MODEL_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace p1bounds {

/// A C^2 function on [0,1] with analytic derivative handles and bounds
/// m2 <= u'' <= M2, sup_d2 = ||u''||_inf. The handles must be pure and
/// re-entrant; the library never mutates them.
///
/// bounds_exact distinguishes analytically known m2/M2/sup_d2 (presets,
/// user-supplied exact bounds) from sampled estimates; verification routines
/// refuse estimated bounds.
struct SmoothFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    double m2 = 0.0;
    double M2 = 0.0;
    double sup_d2 = 0.0;
    bool bounds_exact = true;
};

struct SecondDerivativeBounds {
    double m2;
    double M2;
    double sup_d2;
};

/// Min/max of d2 over a uniform grid including both endpoints. Sampling-based,
/// so the result is an estimate; functions built from it carry
/// bounds_exact = false.
inline SecondDerivativeBounds estimate_bounds(const std::function<double(double)>& d2,
                                              int samples) {
    if (samples < 2)
        throw std::invalid_argument("estimate_bounds: need at least 2 samples");
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(samples - 1);
        const double v = d2(x);
        if (!std::isfinite(v))
            throw std::domain_error("estimate_bounds: non-finite second derivative value");
        if (j == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {lo, hi, std::max(std::abs(lo), std::abs(hi))};
}

inline SmoothFunction make_function(std::string name,
                                    std::function<double(double)> value,
                                    std::function<double(double)> d1,
                                    std::function<double(double)> d2,
                                    double m2, double M2) {
    if (!(m2 <= M2))
        throw std::invalid_argument("make_function: m2 must not exceed M2");
    SmoothFunction f;
    f.name = std::move(name);
    f.value = std::move(value);
    f.d1 = std::move(d1);
    f.d2 = std::move(d2);
    f.m2 = m2;
    f.M2 = M2;
    f.sup_d2 = std::max(std::abs(m2), std::abs(M2));
    f.bounds_exact = true;
    return f;
}

/// Same, but with m2/M2/sup_d2 sampled from d2; flagged approximate.
inline SmoothFunction make_function_estimated(std::string name,
                                              std::function<double(double)> value,
                                              std::function<double(double)> d1,
                                              std::function<double(double)> d2,
                                              int samples) {
    const SecondDerivativeBounds b = estimate_bounds(d2, samples);
    SmoothFunction f;
    f.name = std::move(name);
    f.value = std::move(value);
    f.d1 = std::move(d1);
    f.d2 = std::move(d2);
    f.m2 = b.m2;
    f.M2 = b.M2;
    f.sup_d2 = b.sup_d2;
    f.bounds_exact = false;
    return f;
}

inline const std::array<std::string_view, 5>& preset_names() {
    static const std::array<std::string_view, 5> names = {
        "quadratic", "cubic", "sin_pi", "expx", "gauss_bump"};
    return names;
}

/// Built-in C^2 test functions with tight analytic second-derivative bounds.
///
///   quadratic   x^2                     u'' = 2
///   cubic       x^3                     u'' = 6x
///   sin_pi      sin(pi x)               u'' = -pi^2 sin(pi x)
///   expx        e^x                     u'' = e^x
///   gauss_bump  exp(-25 (x-1/2)^2)      u'' = (2500 (x-1/2)^2 - 50) u
inline SmoothFunction preset(std::string_view name) {
    const double pi = 3.14159265358979323846;
    if (name == "quadratic") {
        return make_function("quadratic",
                             [](double x) { return x * x; },
                             [](double x) { return 2.0 * x; },
                             [](double) { return 2.0; },
                             2.0, 2.0);
    }
    if (name == "cubic") {
        return make_function("cubic",
                             [](double x) { return x * x * x; },
                             [](double x) { return 3.0 * x * x; },
                             [](double x) { return 6.0 * x; },
                             0.0, 6.0);
    }
    if (name == "sin_pi") {
        return make_function("sin_pi",
                             [pi](double x) { return std::sin(pi * x); },
                             [pi](double x) { return pi * std::cos(pi * x); },
                             [pi](double x) { return -pi * pi * std::sin(pi * x); },
                             -pi * pi, 0.0);
    }
    if (name == "expx") {
        return make_function("expx",
                             [](double x) { return std::exp(x); },
                             [](double x) { return std::exp(x); },
                             [](double x) { return std::exp(x); },
                             1.0, std::exp(1.0));
    }
    if (name == "gauss_bump") {
        // u'' = g(t^2) e^{-25 t^2} with t = x - 1/2 and g(s) = 2500 s - 50;
        // extrema: -50 at t = 0, and 100 e^{-3/2} at t^2 = 0.06.
        auto u = [](double x) {
            const double t = x - 0.5;
            return std::exp(-25.0 * t * t);
        };
        return make_function("gauss_bump",
                             u,
                             [u](double x) { return -50.0 * (x - 0.5) * u(x); },
                             [u](double x) {
                                 const double t = x - 0.5;
                                 return (2500.0 * t * t - 50.0) * u(x);
                             },
                             -50.0, 100.0 * std::exp(-1.5));
    }
    std::string msg = "unknown preset '";
    msg += name;
    msg += "'; valid presets:";
    for (std::string_view p : preset_names()) {
        msg += ' ';
        msg += p;
    }
    throw std::invalid_argument(msg);
}

} // namespace p1bounds

#endif
