#include "cesaro/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cesaro {

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("power series: need at least one coefficient");
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("power series: coefficients must be finite");
}

PowerSeries PowerSeries::from_real(std::span<const double> coeffs) {
    return PowerSeries(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

PowerSeries PowerSeries::monomial(std::size_t k, cplx c) {
    std::vector<cplx> a(k + 1, cplx{});
    a[k] = c;
    return PowerSeries(std::move(a));
}

cplx PowerSeries::eval(cplx z) const {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

PowerSeries PowerSeries::derivative() const {
    if (coeffs_.size() == 1) return PowerSeries();
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return PowerSeries(std::move(d));
}

std::vector<cplx> PowerSeries::partial_sums() const {
    std::vector<cplx> s(coeffs_.size());
    quad::CompensatedSum<cplx> acc;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        acc.add(coeffs_[k]);
        s[k] = acc.value();
    }
    return s;
}

PowerSeries PowerSeries::resized(std::size_t degree) const {
    auto a = coeffs_;
    a.resize(degree + 1, cplx{});
    return PowerSeries(std::move(a));
}

PowerSeries PowerSeries::operator+(const PowerSeries& g) const {
    std::vector<cplx> a(std::max(coeffs_.size(), g.coeffs_.size()));
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (*this)[k] + g[k];
    return PowerSeries(std::move(a));
}

PowerSeries PowerSeries::operator-(const PowerSeries& g) const { return *this + (-1.0) * g; }

PowerSeries operator*(cplx c, const PowerSeries& f) {
    auto a = f.coeffs_;
    for (auto& x : a) x *= c;
    return PowerSeries(std::move(a));
}

EvalPoint::EvalPoint(cplx z) : z_(z) {
    if (!(std::abs(z) <= 1.0 - std::ldexp(1.0, -40)))
        throw std::domain_error("evaluation point must satisfy |z| <= 1 - 2^-40");
}

PowerSeries cesaro_like(const MomentSequence& mu, const PowerSeries& f) {
    if (mu.n_max < f.degree() || mu.values.size() <= f.degree())
        throw std::invalid_argument("cesaro_like: moment sequence (n_max " + std::to_string(mu.n_max) +
                                    ") shorter than series degree " + std::to_string(f.degree()));
    const auto s = f.partial_sums();
    std::vector<cplx> b(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) b[n] = mu.values[n] * s[n];
    return PowerSeries(std::move(b));
}

namespace {

void check_integral_region(EvalPoint z) {
    if (z.modulus() > integral_form_radius)
        throw std::domain_error("integral representation is only evaluated for |z| <= 0.95");
}

cplx finish(const MeasureIntegral<cplx>& res, const MeasureQuadrature& q, const char* what) {
    if (!res.converged || res.error > q.declared_tol * std::max(1.0, std::abs(res.value)))
        throw quad::QuadratureError(std::string(what) + ": quadrature did not converge", res.error);
    return res.value;
}

}  // namespace

cplx cesaro_like_integral_eval(const RadialMeasure& m, const PowerSeries& f, EvalPoint z,
                               const MeasureQuadrature& q) {
    check_integral_region(z);
    const cplx zv = z.value();
    auto g = [&](double x, double) { return f.eval(x * zv) / (1.0 - x * zv); };
    return finish(integrate<cplx>(m, g, 0.0, {}, q), q, "cesaro_like_integral_eval");
}

cplx cesaro_like_derivative_eval(const RadialMeasure& m, const PowerSeries& f, EvalPoint z,
                                 const MeasureQuadrature& q) {
    check_integral_region(z);
    const cplx zv = z.value();
    const PowerSeries df = f.derivative();
    auto g = [&](double x, double) {
        const cplx w = x * zv;
        const cplx inv = 1.0 / (1.0 - w);
        return x * df.eval(w) * inv + x * f.eval(w) * inv * inv;
    };
    return finish(integrate<cplx>(m, g, 0.0, {}, q), q, "cesaro_like_derivative_eval");
}

PowerSeries test_function(double t, double p, std::size_t degree) {
    if (!(t >= 0.5 && t < 1.0)) throw std::domain_error("test_function: t must lie in [1/2, 1)");
    if (!(p > 1.0) || !std::isfinite(p)) throw std::domain_error("test_function: p must be > 1");
    const double scale = std::pow(1.0 - std::log1p(-t), -1.0 / p);
    std::vector<cplx> a(degree + 1, cplx{});
    const double log_t = std::log(t);
    for (std::size_t k = 1; k <= degree; ++k) {
        const double kd = static_cast<double>(k);
        a[k] = scale * std::exp(kd * log_t) / kd;
    }
    return PowerSeries(std::move(a));
}

PowerSeries log_one_over_one_minus_z(std::size_t degree) {
    std::vector<cplx> a(degree + 1, cplx{});
    for (std::size_t k = 1; k <= degree; ++k) a[k] = 1.0 / static_cast<double>(k);
    return PowerSeries(std::move(a));
}

}  // namespace cesaro
