#pragma once

// Truncated power series on the unit disk and the Cesàro-like operator
//
//     C_mu(f)(z) = sum_n mu_n (a_0 + ... + a_n) z^n
//
// in coefficient form and in its integral form  int f(tz) / (1 - tz) d mu(t).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cesaro/measure.hpp"

namespace cesaro {

using cplx = std::complex<double>;

class PowerSeries {
public:
    PowerSeries() : coeffs_(1, cplx{}) {}
    /// Throws std::invalid_argument for an empty list or non-finite coefficients.
    explicit PowerSeries(std::vector<cplx> coeffs);
    static PowerSeries from_real(std::span<const double> coeffs);
    static PowerSeries monomial(std::size_t k, cplx c = 1.0);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }

    cplx eval(cplx z) const;
    PowerSeries derivative() const;
    /// s_n = a_0 + ... + a_n, accumulated with compensated summation.
    std::vector<cplx> partial_sums() const;
    /// Zero-pads (or truncates) to the requested degree.
    PowerSeries resized(std::size_t degree) const;

    PowerSeries operator+(const PowerSeries& g) const;
    PowerSeries operator-(const PowerSeries& g) const;
    friend PowerSeries operator*(cplx c, const PowerSeries& f);

private:
    std::vector<cplx> coeffs_;
};

/// A point of the open disk with |z| <= 1 - 2^-40.
class EvalPoint {
public:
    explicit EvalPoint(cplx z);
    static EvalPoint polar(double r, double theta) { return EvalPoint(std::polar(r, theta)); }
    cplx value() const noexcept { return z_; }
    double modulus() const noexcept { return std::abs(z_); }

private:
    cplx z_;
};

/// b_n = mu_n s_n for n <= f.degree(). Requires mu.n_max >= f.degree().
PowerSeries cesaro_like(const MomentSequence& mu, const PowerSeries& f);

/// Largest |z| accepted by the integral-representation evaluators.
inline constexpr double integral_form_radius = 0.95;

/// int f(tz) / (1 - tz) d mu(t), for |z| <= 0.95.
cplx cesaro_like_integral_eval(const RadialMeasure& m, const PowerSeries& f, EvalPoint z,
                               const MeasureQuadrature& q = {});

/// int t f'(tz) / (1 - tz) d mu(t) + int t f(tz) / (1 - tz)^2 d mu(t), for |z| <= 0.95.
cplx cesaro_like_derivative_eval(const RadialMeasure& m, const PowerSeries& f, EvalPoint z,
                                 const MeasureQuadrature& q = {});

/// (log(e/(1-t)))^{-1/p} log(1/(1 - t z)) truncated at `degree`; t in [1/2, 1), p > 1.
PowerSeries test_function(double t, double p, std::size_t degree);

/// log(1/(1-z)) = sum_{k>=1} z^k / k truncated at `degree`.
PowerSeries log_one_over_one_minus_z(std::size_t degree);

}  // namespace cesaro
