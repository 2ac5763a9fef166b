#pragma once

// Independent reference computations. None of these call the library's
// quadrature driver, FFT sampling or coefficient routines.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "cesaro/measure.hpp"
#include "cesaro/series.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// b_n = mu_n * sum_{k<=n} a_k by a plain double loop.
inline std::vector<cplx> cesaro_double_sum(const std::vector<double>& mu, const std::vector<cplx>& a) {
    std::vector<cplx> b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        cplx s{};
        for (std::size_t k = 0; k <= n; ++k) s += a[k];
        b[n] = mu[n] * s;
    }
    return b;
}

/// M_2(r, f')^2 = sum n^2 |a_n|^2 r^{2n-2}.
inline double parseval_derivative_mean2(const std::vector<cplx>& a, double r) {
    long double s = 0.0L;
    for (std::size_t n = 1; n < a.size(); ++n)
        s += static_cast<long double>(n) * n * std::norm(a[n]) * std::pow(static_cast<long double>(r), 2.0L * n - 2);
    return static_cast<double>(s);
}

/// int t^n (1-t)^{s-1} dt = B(n+1, s).
inline double power_moment(double s, std::size_t n) { return boost::math::beta(static_cast<double>(n) + 1.0, s); }

/// Tanh-sinh integral of g over (0, 1).
template <class G>
double tanh_sinh01(G g, double tol = 1e-14) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(g, 0.0, 1.0, tol);
}

/// Moment of a power-log density c (1-t)^{gamma-1} (log(e/(1-t)))^{-beta} by tanh-sinh in t.
inline double power_log_moment(double c, double gamma, double beta, std::size_t n) {
    // In y = 1 - t, so the singular end sits at 0 where doubles are dense.
    auto g = [&](double y) {
        if (y <= 0.0 || y >= 1.0) return 0.0;
        return c * std::exp(static_cast<double>(n) * std::log1p(-y)) * std::pow(y, gamma - 1.0) *
               std::pow(1.0 - std::log(y), -beta);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(g, 0.0, 1.0, 1e-15);
}

/// sup_r (1+r)(1 - r^N) by golden-section search: the Bloch seminorm of the degree-N
/// truncation of log(1/(1-z)) (the sup is on the positive axis since the coefficients are positive).
inline double truncated_log_bloch(std::size_t degree) {
    const double n = static_cast<double>(degree);
    auto h = [&](double r) { return (1.0 + r) * (1.0 - std::pow(r, n)); };
    double lo = 0.5, hi = 1.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (h(a) < h(b)) lo = a;
        else hi = b;
    }
    return h(0.5 * (lo + hi));
}

inline std::vector<cplx> random_coeffs(std::size_t degree, std::uint64_t seed, double decay = 0.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> a(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) a[k] = cplx(nd(gen), nd(gen)) * std::exp(-decay * static_cast<double>(k));
    return a;
}

}  // namespace oracle
