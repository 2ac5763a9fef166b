#pragma once

// Finite positive radial measures on [0,1): tails, moments, and integration of
// arbitrary kernels against them.
//
// Densities that concentrate at t = 1 are integrated in the variable
// u = -log(1 - t), so every integrand sees the gap y = 1 - t = e^{-u} without
// cancellation. Kernels receive both x and y = 1 - x.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cesaro/quadrature.hpp"

namespace cesaro {

/// c (1-t)^{gamma-1} (log(e/(1-t)))^{-beta} dt
struct PowerLogDensity {
    double c = 1.0;
    double gamma = 1.0;
    double beta = 0.0;
};

/// w * delta_{t0}
struct PointMass {
    double w = 1.0;
    double t0 = 0.0;
};

/// Piecewise-linear density through (x_i, v_i), zero beyond x.back() < 1.
struct TabulatedDensity {
    std::vector<double> x;
    std::vector<double> v;
};

using MeasureComponent = std::variant<PowerLogDensity, PointMass, TabulatedDensity>;

class RadialMeasure {
public:
    /// Validates every component; throws std::invalid_argument on a bad catalog entry
    /// or when the total mass is not strictly positive.
    explicit RadialMeasure(std::vector<MeasureComponent> components);

    static RadialMeasure lebesgue() { return RadialMeasure({PowerLogDensity{1.0, 1.0, 0.0}}); }
    /// (1-t)^{s-1} dt
    static RadialMeasure power(double s) { return RadialMeasure({PowerLogDensity{1.0, s, 0.0}}); }
    static RadialMeasure point(double w, double t0) { return RadialMeasure({PointMass{w, t0}}); }

    const std::vector<MeasureComponent>& components() const noexcept { return components_; }

    RadialMeasure scaled(double factor) const;
    /// Mixture: the sum of both measures.
    RadialMeasure operator+(const RadialMeasure& other) const;

    /// Atom locations and table nodes; places where integrands of this measure have kinks.
    std::vector<double> singular_points() const;

private:
    std::vector<MeasureComponent> components_;
};

struct MeasureQuadrature {
    double abs_tol = 1e-14;
    double rel_tol = 1e-13;
    /// Mass neglected beyond the truncation of the u-range, relative to the component weight.
    double tail_cut = 1e-16;
    /// Achieved error above this is reported as a numerical failure.
    double declared_tol = 1e-12;
    int max_panels = 8000;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

struct MomentSequence {
    std::vector<double> values;  // mu_0 .. mu_{n_max}
    std::vector<double> errors;  // achieved error estimate per entry
    std::size_t n_max = 0;
    double abs_tolerance = 0.0;

    double operator[](std::size_t n) const { return values.at(n); }
    bool is_nonincreasing() const;
    /// (-1)^k Delta^k mu_n >= -abs_tolerance for every k <= max_order on the stored range.
    bool is_totally_monotone(int max_order = 4) const;
};

double total_mass(const RadialMeasure& m, const MeasureQuadrature& q = {});

/// nu([t, 1)) for t in [0, 1).
double tail(const RadialMeasure& m, double t, const MeasureQuadrature& q = {});
/// nu([1 - gap, 1)) for gap in (0, 1]; keeps precision when t is close to 1.
double tail_gap(const RadialMeasure& m, double gap, const MeasureQuadrature& q = {});

Estimate moment_estimate(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q = {});
double moment(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q = {});
MomentSequence moments(const RadialMeasure& m, std::size_t n_max, const MeasureQuadrature& q = {});

/// n * int_0^1 nu([x,1)) x^{n-1} dx, computed from the tail alone.
double moment_via_tail(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q = {});

template <class T>
struct MeasureIntegral {
    T value{};
    double error = 0.0;
    bool converged = true;
    /// The (1-x)^{-r} factor is not integrable against the measure.
    bool divergent = false;
};

namespace detail {

inline double log_weight(double u, double kappa, double beta) {
    return -kappa * u - (beta != 0.0 ? beta * std::log1p(u) : 0.0);
}

inline std::vector<double> u_breaks(double upper, std::span<const double> hints) {
    std::vector<double> pts{0.0, 0.25, 0.5};
    for (double b = 1.0; b < upper; b *= 2.0) pts.push_back(b);
    for (double h : hints) {
        pts.push_back(h);
        pts.push_back(h - 2.0);
        pts.push_back(h + 2.0);
    }
    return quad::make_breaks(std::move(pts), 0.0, upper);
}

}  // namespace detail

/// Integrates g(x, 1-x) (1-x)^{-endpoint_power} d mu(x).
///
/// `u_hints` are locations in u = -log(1-x) where g changes quickly (used as extra
/// panel breaks for the continuous components).
template <class T, class G>
MeasureIntegral<T> integrate(const RadialMeasure& m, G&& g, double endpoint_power = 0.0,
                             std::span<const double> u_hints = {}, const MeasureQuadrature& q = {}) {
    MeasureIntegral<T> out;
    quad::CompensatedSum<T> total;
    const quad::Options opts{q.abs_tol, q.rel_tol, q.max_panels};
    const double r = endpoint_power;
    // Past the last hint g is roughly flat, so the cut starts counting there.
    double hint_max = 0.0;
    for (double h : u_hints) hint_max = std::max(hint_max, h);

    for (const auto& comp : m.components()) {
        if (const auto* pl = std::get_if<PowerLogDensity>(&comp)) {
            if (pl->c == 0.0) continue;
            const double kappa = pl->gamma - r;
            const double beta = pl->beta;
            if (kappa < -1e-12 || (std::abs(kappa) <= 1e-12 && beta <= 1.0)) {
                out.divergent = true;
                continue;
            }
            quad::Result<T> res;
            if (std::abs(kappa) <= 1e-12) {
                // u = e^w - 1 turns (1+u)^{-beta} du into e^{-(beta-1) w} dw.
                const double decay = beta - 1.0;
                const double upper = std::log(1.0 / (decay * q.tail_cut)) / decay + std::log1p(hint_max);
                auto f = [&](double w) -> T {
                    const double u = std::expm1(w);
                    const double y = std::exp(-u);
                    const double x = -std::expm1(-u);
                    return pl->c * std::exp(-decay * w) * g(x, y);
                };
                std::vector<double> hints;
                for (double h : u_hints) hints.push_back(std::log1p(std::max(h, 0.0)));
                const auto br = detail::u_breaks(upper, hints);
                res = quad::integrate<T>(f, br, opts);
            } else {
                const double upper = std::max(8.0, std::log(1.0 / (kappa * q.tail_cut)) / kappa) + hint_max;
                auto f = [&](double u) -> T {
                    const double y = std::exp(-u);
                    const double x = -std::expm1(-u);
                    return pl->c * std::exp(detail::log_weight(u, kappa, beta)) * g(x, y);
                };
                const auto br = detail::u_breaks(upper, u_hints);
                res = quad::integrate<T>(f, br, opts);
            }
            total.add(res.value);
            out.error += res.error;
            out.converged = out.converged && res.converged;
        } else if (const auto* pm = std::get_if<PointMass>(&comp)) {
            if (pm->w == 0.0) continue;
            const double y = 1.0 - pm->t0;
            const double factor = r != 0.0 ? std::pow(y, -r) : 1.0;
            total.add(pm->w * factor * g(pm->t0, y));
        } else {
            const auto& tb = std::get<TabulatedDensity>(comp);
            auto f = [&](double x) -> T {
                const auto it = std::upper_bound(tb.x.begin(), tb.x.end(), x);
                std::size_t i = static_cast<std::size_t>(it - tb.x.begin());
                i = i == 0 ? 0 : std::min(i - 1, tb.x.size() - 2);
                const double h = tb.x[i + 1] - tb.x[i];
                const double v = tb.v[i] + (tb.v[i + 1] - tb.v[i]) * ((x - tb.x[i]) / h);
                const double y = 1.0 - x;
                const double factor = r != 0.0 ? std::pow(y, -r) : 1.0;
                return v * factor * g(x, y);
            };
            const auto res = quad::integrate<T>(f, std::span<const double>(tb.x), opts);
            total.add(res.value);
            out.error += res.error;
            out.converged = out.converged && res.converged;
        }
    }
    out.value = total.value();
    return out;
}

}  // namespace cesaro
