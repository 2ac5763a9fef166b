#include "cesaro/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace cesaro {

namespace {

void validate(const MeasureComponent& comp) {
    if (const auto* pl = std::get_if<PowerLogDensity>(&comp)) {
        if (!(pl->c >= 0.0) || !std::isfinite(pl->c))
            throw std::invalid_argument("power_log: weight c must be finite and >= 0");
        if (!(pl->gamma > 0.0) || !std::isfinite(pl->gamma))
            throw std::invalid_argument("power_log: gamma must be finite and > 0");
        if (!(pl->beta >= 0.0) || !std::isfinite(pl->beta))
            throw std::invalid_argument("power_log: beta must be finite and >= 0");
    } else if (const auto* pm = std::get_if<PointMass>(&comp)) {
        if (!(pm->w >= 0.0) || !std::isfinite(pm->w))
            throw std::invalid_argument("point: weight w must be finite and >= 0");
        if (!(pm->t0 >= 0.0 && pm->t0 < 1.0))
            throw std::invalid_argument("point: location t0 must lie in [0,1)");
    } else {
        const auto& tb = std::get<TabulatedDensity>(comp);
        if (tb.x.size() < 2 || tb.x.size() != tb.v.size())
            throw std::invalid_argument("table: need at least two nodes and matching x/v lengths");
        if (tb.x.front() != 0.0) throw std::invalid_argument("table: grid must start at 0");
        if (!(tb.x.back() < 1.0)) throw std::invalid_argument("table: grid must end below 1");
        for (std::size_t i = 0; i + 1 < tb.x.size(); ++i)
            if (!(tb.x[i] < tb.x[i + 1])) throw std::invalid_argument("table: grid must be strictly increasing");
        for (double v : tb.v)
            if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("table: values must be finite and >= 0");
    }
}

double table_mass(const TabulatedDensity& tb) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < tb.x.size(); ++i) s += 0.5 * (tb.v[i] + tb.v[i + 1]) * (tb.x[i + 1] - tb.x[i]);
    return s;
}

// int_t^{x_K} of the piecewise-linear table.
double table_tail(const TabulatedDensity& tb, double t) {
    if (t >= tb.x.back()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < tb.x.size(); ++i) {
        const double a = tb.x[i], b = tb.x[i + 1];
        if (b <= t) continue;
        if (a >= t) {
            s += 0.5 * (tb.v[i] + tb.v[i + 1]) * (b - a);
        } else {
            const double vt = tb.v[i] + (tb.v[i + 1] - tb.v[i]) * ((t - a) / (b - a));
            s += 0.5 * (vt + tb.v[i + 1]) * (b - t);
        }
    }
    return s;
}

// int_a^b t^n (v_a + slope (t - a)) dt, closed form per panel.
long double table_panel_moment(long double a, long double b, long double va, long double vb, std::size_t n) {
    const long double k1 = static_cast<long double>(n) + 1.0L;
    const long double k2 = k1 + 1.0L;
    const long double an1 = std::pow(a, k1), bn1 = std::pow(b, k1);
    const long double an2 = an1 * a, bn2 = bn1 * b;
    const long double i_n = (bn1 - an1) / k1;
    // int_a^b t^n (t - a) dt = I_{n+1} - a I_n
    const long double i_shift = (bn2 - an2) / k2 - a * i_n;
    const long double slope = (vb - va) / (b - a);
    return va * i_n + slope * i_shift;
}

double table_moment(const TabulatedDensity& tb, std::size_t n) {
    long double s = 0.0L;
    for (std::size_t i = 0; i + 1 < tb.x.size(); ++i)
        s += table_panel_moment(tb.x[i], tb.x[i + 1], tb.v[i], tb.v[i + 1], n);
    return static_cast<double>(std::max(s, 0.0L));
}

double point_moment(const PointMass& pm, std::size_t n) {
    if (n == 0) return pm.w;
    if (pm.w == 0.0 || pm.t0 == 0.0) return 0.0;
    const double v = std::exp(std::log(pm.w) + static_cast<double>(n) * std::log(pm.t0));
    return v < 1e-300 ? 0.0 : v;
}

// nu([t,1)) for one power-log component, given the gap y = 1 - t.
Estimate power_log_tail(const PowerLogDensity& pl, double y, const MeasureQuadrature& q) {
    if (pl.c == 0.0) return {};
    const double g = pl.gamma;
    if (pl.beta == 0.0) return {pl.c * std::pow(y, g) / g, 0.0};
    // c y^gamma int_0^inf e^{-gamma v} (1 + u_t + v)^{-beta} dv with u_t = -log y.
    const double ut = -std::log(y);
    const double upper = std::max(8.0, std::log(1.0 / (g * q.tail_cut)) / g);
    auto f = [&](double v) { return std::exp(-g * v - pl.beta * std::log1p(ut + v)); };
    std::vector<double> pts{0.0, 0.5};
    for (double b = 1.0; b < upper; b *= 2.0) pts.push_back(b);
    const auto br = quad::make_breaks(std::move(pts), 0.0, upper);
    const auto res = quad::integrate<double>(f, br, {q.abs_tol * 1e-2, q.rel_tol * 1e-1, q.max_panels});
    if (!res.converged) throw quad::QuadratureError("tail: power_log quadrature did not converge", res.error);
    const double scale = pl.c * std::pow(y, g);
    return {scale * res.value, scale * res.error};
}

double tail_impl(const RadialMeasure& m, double t, double y, const MeasureQuadrature& q) {
    double s = 0.0;
    for (const auto& comp : m.components()) {
        if (const auto* pl = std::get_if<PowerLogDensity>(&comp)) {
            s += power_log_tail(*pl, y, q).value;
        } else if (const auto* pm = std::get_if<PointMass>(&comp)) {
            if (t <= pm->t0) s += pm->w;
        } else {
            s += table_tail(std::get<TabulatedDensity>(comp), t);
        }
    }
    return s;
}

}  // namespace

RadialMeasure::RadialMeasure(std::vector<MeasureComponent> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("measure: at least one component is required");
    for (const auto& c : components_) validate(c);
    double mass = 0.0;
    for (const auto& comp : components_) {
        if (const auto* pl = std::get_if<PowerLogDensity>(&comp))
            mass += pl->c;  // positive iff the density is nonzero
        else if (const auto* pm = std::get_if<PointMass>(&comp))
            mass += pm->w;
        else
            mass += table_mass(std::get<TabulatedDensity>(comp));
    }
    if (!(mass > 0.0)) throw std::invalid_argument("measure: total mass must be strictly positive");
}

RadialMeasure RadialMeasure::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw std::invalid_argument("measure: scale factor must be > 0");
    auto comps = components_;
    for (auto& comp : comps) {
        if (auto* pl = std::get_if<PowerLogDensity>(&comp))
            pl->c *= factor;
        else if (auto* pm = std::get_if<PointMass>(&comp))
            pm->w *= factor;
        else
            for (double& v : std::get<TabulatedDensity>(comp).v) v *= factor;
    }
    return RadialMeasure(std::move(comps));
}

RadialMeasure RadialMeasure::operator+(const RadialMeasure& other) const {
    auto comps = components_;
    comps.insert(comps.end(), other.components_.begin(), other.components_.end());
    return RadialMeasure(std::move(comps));
}

std::vector<double> RadialMeasure::singular_points() const {
    std::vector<double> pts;
    for (const auto& comp : components_) {
        if (const auto* pm = std::get_if<PointMass>(&comp))
            pts.push_back(pm->t0);
        else if (const auto* tb = std::get_if<TabulatedDensity>(&comp))
            pts.insert(pts.end(), tb->x.begin(), tb->x.end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool MomentSequence::is_nonincreasing() const {
    for (std::size_t n = 0; n + 1 < values.size(); ++n)
        if (values[n + 1] > values[n] + abs_tolerance) return false;
    return true;
}

bool MomentSequence::is_totally_monotone(int max_order) const {
    // (-1)^k Delta^k mu_n = sum_i (-1)^i C(k,i) mu_{n+i} = int t^n (1-t)^k d mu >= 0.
    for (int k = 1; k <= max_order; ++k) {
        std::vector<double> binom(static_cast<std::size_t>(k) + 1, 1.0);
        for (int i = 1; i <= k; ++i) binom[static_cast<std::size_t>(i)] = binom[static_cast<std::size_t>(i) - 1] * (k - i + 1) / i;
        for (std::size_t n = 0; n + static_cast<std::size_t>(k) < values.size(); ++n) {
            quad::CompensatedSum<double> d;
            for (int i = 0; i <= k; ++i)
                d.add((i % 2 == 0 ? 1.0 : -1.0) * binom[static_cast<std::size_t>(i)] * values[n + static_cast<std::size_t>(i)]);
            if (d.value() < -abs_tolerance) return false;
        }
    }
    return true;
}

double total_mass(const RadialMeasure& m, const MeasureQuadrature& q) { return moment(m, 0, q); }

double tail(const RadialMeasure& m, double t, const MeasureQuadrature& q) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("tail: t must lie in [0,1)");
    return tail_impl(m, t, 1.0 - t, q);
}

double tail_gap(const RadialMeasure& m, double gap, const MeasureQuadrature& q) {
    if (!(gap > 0.0 && gap <= 1.0)) throw std::domain_error("tail_gap: gap must lie in (0,1]");
    return tail_impl(m, 1.0 - gap, gap, q);
}

Estimate moment_estimate(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q) {
    Estimate est;
    quad::CompensatedSum<double> total;
    const double nd = static_cast<double>(n);
    const quad::Options opts{q.abs_tol, q.rel_tol, q.max_panels};
    for (const auto& comp : m.components()) {
        if (const auto* pl = std::get_if<PowerLogDensity>(&comp)) {
            if (pl->c == 0.0) continue;
            const double kappa = pl->gamma;
            const double upper = std::max(8.0, std::log(1.0 / (kappa * q.tail_cut)) / kappa);
            // t^n c e^{-gamma u} (1+u)^{-beta}, combined in log space.
            auto f = [&](double u) {
                const double y = std::exp(-u);
                const double log_tn = n == 0 ? 0.0 : nd * std::log1p(-y);
                return pl->c * std::exp(log_tn + detail::log_weight(u, kappa, pl->beta));
            };
            const std::array<double, 1> hint{std::log(nd + 1.0)};
            const auto br = detail::u_breaks(upper, n > 0 ? std::span<const double>(hint) : std::span<const double>());
            const auto res = quad::integrate<double>(f, br, opts);
            if (!res.converged) throw quad::QuadratureError("moment: quadrature did not converge", res.error);
            total.add(res.value);
            est.error += res.error;
        } else if (const auto* pm = std::get_if<PointMass>(&comp)) {
            total.add(point_moment(*pm, n));
        } else {
            total.add(table_moment(std::get<TabulatedDensity>(comp), n));
        }
    }
    est.value = total.value();
    if (est.error > q.declared_tol)
        throw quad::QuadratureError("moment of order " + std::to_string(n) + " exceeds the declared tolerance",
                                    est.error);
    return est;
}

double moment(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q) {
    return moment_estimate(m, n, q).value;
}

MomentSequence moments(const RadialMeasure& m, std::size_t n_max, const MeasureQuadrature& q) {
    MomentSequence seq;
    seq.n_max = n_max;
    seq.values.resize(n_max + 1);
    seq.errors.resize(n_max + 1);
    double worst = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto e = moment_estimate(m, n, q);
        seq.values[n] = e.value;
        seq.errors[n] = e.error;
        worst = std::max(worst, e.error);
    }
    seq.abs_tolerance = std::max(worst, q.declared_tol);
    return seq;
}

double moment_via_tail(const RadialMeasure& m, std::size_t n, const MeasureQuadrature& q) {
    if (n == 0) throw std::domain_error("moment_via_tail: order must be >= 1");
    const double nm1 = static_cast<double>(n - 1);
    // n int_0^1 nu([1-y, 1)) (1-y)^{n-1} dy, in the gap variable y = 1 - x.
    auto f = [&](double y) {
        const double w = n == 1 ? 1.0 : std::exp(nm1 * std::log1p(-y));
        if (w == 0.0) return 0.0;
        return tail_impl(m, 1.0 - y, y, q) * w;
    };
    std::vector<double> pts;
    for (int k = 0; k <= 60; ++k) pts.push_back(std::ldexp(1.0, -k));
    for (double x : m.singular_points()) pts.push_back(1.0 - x);
    const double peak = 1.0 / (static_cast<double>(n) + 1.0);
    for (double c : {0.5, 2.0, 8.0, 32.0}) pts.push_back(c * peak);
    const auto br = quad::make_breaks(std::move(pts), 0.0, 1.0);
    const auto res = quad::integrate<double>(f, br, {q.abs_tol * 1e-2, q.rel_tol, q.max_panels});
    if (!res.converged) throw quad::QuadratureError("moment_via_tail: quadrature did not converge", res.error);
    return static_cast<double>(n) * res.value;
}

}  // namespace cesaro
