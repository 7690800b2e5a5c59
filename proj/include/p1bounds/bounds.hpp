#ifndef P1BOUNDS_BOUNDS_HPP
#define P1BOUNDS_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace p1bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline BigInt big_pow(const BigInt& base, int exp) {
    if (exp < 0)
        throw std::invalid_argument("big_pow: negative exponent");
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

inline BigInt binomial(int a, int b) {
    if (b < 0 || b > a)
        return 0;
    BigInt result = 1;
    for (int j = 1; j <= b; ++j) {
        result *= a - b + j;
        result /= j; // exact at every step
    }
    return result;
}

} // namespace detail

/// S_p(n) = sum_{k=1}^n k^p by direct summation in exact integer arithmetic.
inline BigInt power_sum(int p, long long n) {
    if (p < 0)
        throw std::invalid_argument("power_sum: p must be nonnegative");
    if (n < 0)
        throw std::invalid_argument("power_sum: n must be nonnegative");
    BigInt sum = 0;
    for (long long k = 1; k <= n; ++k)
        sum += detail::big_pow(BigInt(k), p);
    return sum;
}

/// S_p(n) via the Pascal recursion
///   (q+1) S_q(n) = (n+1)^{q+1} - 1 - sum_{j=0}^{q-1} C(q+1, j) S_j(n),
/// built up from S_0(n) = n. Equals power_sum(p, n) exactly.
inline BigInt power_sum_pascal(int p, long long n) {
    if (p < 0)
        throw std::invalid_argument("power_sum_pascal: p must be nonnegative");
    if (n < 0)
        throw std::invalid_argument("power_sum_pascal: n must be nonnegative");
    std::vector<BigInt> s(static_cast<std::size_t>(p) + 1);
    s[0] = n;
    for (int q = 1; q <= p; ++q) {
        BigInt rhs = detail::big_pow(BigInt(n) + 1, q + 1) - 1;
        for (int j = 0; j < q; ++j)
            rhs -= detail::binomial(q + 1, j) * s[static_cast<std::size_t>(j)];
        const BigInt div = q + 1;
        if (rhs % div != 0)
            throw std::logic_error("power_sum_pascal: recursion produced a non-integer");
        s[static_cast<std::size_t>(q)] = rhs / div;
    }
    return s[static_cast<std::size_t>(p)];
}

/// S_p^*(n) = sum_{k=1}^{n-1} k^{p+1}, with S_p^*(1) = 0.
inline BigInt star_sum(int p, long long n) {
    if (p < 2)
        throw std::invalid_argument("star_sum: p must be at least 2");
    if (n < 1)
        throw std::invalid_argument("star_sum: n must be positive");
    return power_sum(p + 1, n - 1);
}

/// Integer norm order p >= 2 together with its conjugate q = p/(p-1).
struct NormOrder {
    explicit NormOrder(int order) : p(order) {
        if (p < 2)
            throw std::invalid_argument("NormOrder: p must be an integer >= 2");
    }
    int p;
    Rational conjugate() const { return Rational(p, p - 1); }
};

/// The three error-estimate families plus the finite-n variant.
struct BoundMethod {
    enum class Kind { taylor, mean_value, taylor_like_finite, taylor_like_asymptotic };

    Kind kind = Kind::taylor;
    int n = 0; // subdivision count, meaningful for taylor_like_finite only

    static BoundMethod taylor() { return {Kind::taylor, 0}; }
    static BoundMethod mean_value() { return {Kind::mean_value, 0}; }
    static BoundMethod taylor_like_asymptotic() { return {Kind::taylor_like_asymptotic, 0}; }
    static BoundMethod taylor_like(int n) {
        if (n < 1)
            throw std::invalid_argument("BoundMethod: taylor_like requires n >= 1");
        return {Kind::taylor_like_finite, n};
    }

    bool uses_oscillation() const { return kind == Kind::taylor_like_finite; }

    std::string label() const {
        switch (kind) {
            case Kind::taylor: return "taylor";
            case Kind::mean_value: return "mean-value";
            case Kind::taylor_like_finite: return "taylor-like";
            case Kind::taylor_like_asymptotic: return "asymptotic";
        }
        return "?";
    }

    friend bool operator==(const BoundMethod& a, const BoundMethod& b) {
        return a.kind == b.kind && a.n == b.n;
    }
};

/// Leading constant of the W^{1,p} interpolation error estimate, as an exact
/// rational:
///
///   taylor                  2^{p-1}/(p+1) + 1/2
///   mean-value              1/(p+1)
///   taylor-like (finite n)  (n+2)^{p-1}/(p+1) * (1/(2^{p-1} n^p) + 2 S_p^*(n)/n^{2p+1})
///   asymptotic              2/((p+1)(p+2))
inline Rational constant(const BoundMethod& method, int p) {
    NormOrder order(p); // validates p >= 2
    switch (method.kind) {
        case BoundMethod::Kind::taylor:
            return Rational(detail::big_pow(2, p - 1), p + 1) + Rational(1, 2);
        case BoundMethod::Kind::mean_value:
            return Rational(1, p + 1);
        case BoundMethod::Kind::taylor_like_asymptotic:
            return Rational(2, BigInt(p + 1) * (p + 2));
        case BoundMethod::Kind::taylor_like_finite: {
            const long long n = method.n;
            const Rational lead(detail::big_pow(BigInt(n) + 2, p - 1), BigInt(p + 1));
            const Rational first(1, detail::big_pow(2, p - 1) * detail::big_pow(BigInt(n), p));
            const Rational second(2 * star_sum(p, n), detail::big_pow(BigInt(n), 2 * p + 1));
            return lead * (first + second);
        }
    }
    throw std::logic_error("constant: unreachable");
}

/// Relative distance of the finite-n constant from its n -> infinity limit.
inline double asymptotic_gap(int p, long long n) {
    const Rational finite = constant(BoundMethod::taylor_like(static_cast<int>(n)), p);
    const Rational limit = constant(BoundMethod::taylor_like_asymptotic(), p);
    return to_double(finite / limit - 1);
}

/// Per-cell derivative-error bound
///   int_cell |u'(x) - u'(x'_k)|^p dx
///     <= (1/(p+1)) [k^{p+1} + (n-k)^{p+1}] (h_i/n)^{p+1} sup_d2^p,
/// symmetric under k <-> n-k.
inline double lemma21_cell_bound(int p, long long k, long long n, double h_i,
                                 double sup_d2) {
    NormOrder order(p);
    if (n < 1)
        throw std::invalid_argument("lemma21_cell_bound: n must be positive");
    if (k < 0 || k > n)
        throw std::invalid_argument("lemma21_cell_bound: k must lie in [0, n]");
    if (!(h_i > 0.0))
        throw std::invalid_argument("lemma21_cell_bound: h_i must be positive");
    if (sup_d2 < 0.0)
        throw std::invalid_argument("lemma21_cell_bound: sup_d2 must be nonnegative");
    const BigInt split = detail::big_pow(BigInt(k), p + 1) + detail::big_pow(BigInt(n - k), p + 1);
    const double width_pow = std::pow(h_i / static_cast<double>(n), p + 1);
    return to_double(Rational(split, p + 1)) * width_pow * std::pow(sup_d2, p);
}

/// One evaluated right-hand side of an interpolation error estimate.
struct BoundReport {
    BoundMethod method;
    int p = 2;
    double h = 0.0;
    double constant = 0.0;              // leading constant, as a float
    double bound_W1p = 0.0;             // full bound on ||u - u_I||_{1,p}
    double oscillation_term = 0.0;      // additive (M2 - m2)^p contribution, finite-n only
    std::optional<double> measured_error; // true error, when measured
    bool ok = true;                     // measured <= bound (meaningful with measured_error)
};

/// Containment comparison used everywhere a measured error meets a bound:
/// relative slack for quadrature noise, absolute slack for exact-zero cases.
inline bool within_bound(double measured, double bound) {
    return measured <= bound * (1.0 + 1e-10) + 1e-13;
}

/// Evaluates the W^{1,p} estimate
///   bound^p = C(method, p) (h^p + h^{2p}/p) sup_d2^p + D,
/// where D = (1/(3n)) (3/8)^p (h^p + h^{2p}/p) osc_d2^p for the finite-n
/// method and D = 0 otherwise.
inline BoundReport interpolation_bound(const BoundMethod& method, int p, double h,
                                       double sup_d2, double osc_d2 = 0.0) {
    NormOrder order(p);
    if (!(h > 0.0) || h > 1.0)
        throw std::invalid_argument("interpolation_bound: h must lie in (0, 1]");
    if (sup_d2 < 0.0)
        throw std::invalid_argument("interpolation_bound: sup_d2 must be nonnegative");
    if (osc_d2 < 0.0)
        throw std::invalid_argument("interpolation_bound: osc_d2 must be nonnegative");

    const double c = to_double(constant(method, p));
    const double hp = std::pow(h, p);
    const double h_term = hp + hp * hp / static_cast<double>(p);
    double osc_term = 0.0;
    if (method.uses_oscillation()) {
        osc_term = 1.0 / (3.0 * method.n) * std::pow(3.0 / 8.0, p) * h_term *
                   std::pow(osc_d2, p);
    }
    BoundReport report;
    report.method = method;
    report.p = p;
    report.h = h;
    report.constant = c;
    report.oscillation_term = osc_term;
    report.bound_W1p = std::pow(c * h_term * std::pow(sup_d2, p) + osc_term,
                                1.0 / static_cast<double>(p));
    return report;
}

struct MeshSavings {
    double h_ratio;     // admissible mesh-size ratio h_coarse / h_fine
    double node_factor; // h_ratio^dim
};

/// Mesh-cost comparison between two estimate families at equal bound level,
/// under the paper's simplification (1 + h^p/p)^{1/p} ~ 1. `fine` names the
/// method with the larger constant; h_ratio >= 1 then means `coarse` admits
/// meshes that much coarser for the same guaranteed accuracy.
inline MeshSavings mesh_savings(int p, const BoundMethod& coarse, const BoundMethod& fine,
                                int dim) {
    NormOrder order(p);
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("mesh_savings: dim must be 1, 2 or 3");
    const Rational ratio = constant(fine, p) / constant(coarse, p);
    const double r = to_double(ratio);
    const double h_ratio = (p == 2) ? std::sqrt(r) : std::pow(r, 1.0 / static_cast<double>(p));
    return {h_ratio, std::pow(h_ratio, dim)};
}

} // namespace p1bounds

#endif
