#pragma once

// Global-adaptive Gauss–Kronrod (10/21) integration over a union of panels.
//
// The driver keeps every panel with its Kronrod value and error estimate and
// repeatedly bisects the panel with the largest estimated error until the
// summed estimate meets the requested tolerance. Panels are finally summed in
// left-to-right order with compensated summation, so results do not depend on
// the order in which panels were refined.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cesaro::quad {

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_panels = 8000;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Thrown when an integral does not reach its tolerance; carries the achieved
/// error estimate so callers can report it.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Neumaier compensated accumulator for real or complex values.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        if constexpr (std::is_floating_point_v<T>) {
            add_real(sum_, comp_, x);
        } else {
            double sr = sum_.real(), cr = comp_.real();
            double si = sum_.imag(), ci = comp_.imag();
            add_real(sr, cr, x.real());
            add_real(si, ci, x.imag());
            sum_ = T(sr, si);
            comp_ = T(cr, ci);
        }
    }
    T value() const { return sum_ + comp_; }

private:
    static void add_real(double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    T sum_{};
    T comp_{};
};

namespace detail {

struct Rule {
    std::array<double, 11> kronrod_nodes;
    std::array<double, 11> kronrod_weights;
    std::array<double, 5> gauss_weights;  // paired with kronrod_nodes[1], [3], ..., [9]
};

inline const Rule& gk21() {
    static const Rule rule = [] {
        using K = boost::math::quadrature::gauss_kronrod<double, 21>;
        using G = boost::math::quadrature::gauss<double, 10>;
        Rule r{};
        const auto& ka = K::abscissa();
        const auto& kw = K::weights();
        const auto& gw = G::weights();
        std::copy(ka.begin(), ka.end(), r.kronrod_nodes.begin());
        std::copy(kw.begin(), kw.end(), r.kronrod_weights.begin());
        std::copy(gw.begin(), gw.end(), r.gauss_weights.begin());
        return r;
    }();
    return rule;
}

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool roundoff_limited;
};

template <class T, class F>
Panel<T> apply_rule(F& f, double a, double b, long& evaluations) {
    const Rule& rule = gk21();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T kronrod = rule.kronrod_weights[0] * fc;
    T gauss{};
    double abs_sum = rule.kronrod_weights[0] * std::abs(fc);
    std::array<T, 21> values{};
    values[0] = fc;
    for (std::size_t i = 1; i < 11; ++i) {
        const double dx = half * rule.kronrod_nodes[i];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        values[2 * i - 1] = f1;
        values[2 * i] = f2;
        kronrod += rule.kronrod_weights[i] * (f1 + f2);
        abs_sum += rule.kronrod_weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) gauss += rule.gauss_weights[i / 2] * (f1 + f2);
    }
    evaluations += 21;

    // QUADPACK-style error scaling.
    const T mean = 0.5 * kronrod;
    double asc = rule.kronrod_weights[0] * std::abs(fc - mean);
    for (std::size_t i = 1; i < 11; ++i)
        asc += rule.kronrod_weights[i] *
               (std::abs(values[2 * i - 1] - mean) + std::abs(values[2 * i] - mean));
    asc *= std::abs(half);
    const double abs_int = abs_sum * std::abs(half);

    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    bool limited = false;
    if (abs_int > std::numeric_limits<double>::min() / (50.0 * eps) && err <= 50.0 * eps * abs_int) {
        err = 50.0 * eps * abs_int;
        limited = true;
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return {a, b, kronrod * half, err, limited};
}

}  // namespace detail

/// Integrates `f` over [breaks.front(), breaks.back()], starting from the panels
/// delimited by `breaks` (strictly increasing, at least two entries).
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> breaks, const Options& opts = {}) {
    if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
    Result<T> res;
    std::vector<detail::Panel<T>> panels;
    panels.reserve(breaks.size() + 64);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1]))
            throw std::invalid_argument("integrate: breakpoints must be strictly increasing");
        panels.push_back(detail::apply_rule<T>(f, breaks[i], breaks[i + 1], res.evaluations));
    }

    auto totals = [&panels](T& value, double& error) {
        CompensatedSum<T> v;
        double e = 0.0;
        for (const auto& p : panels) {
            v.add(p.value);
            e += p.error;
        }
        value = v.value();
        error = e;
    };

    T value{};
    double error = 0.0;
    totals(value, error);
    // Panels too narrow to split further, or already at the roundoff floor,
    // stay in place but are no longer refined.
    std::vector<char> frozen(panels.size(), 0);
    for (std::size_t i = 0; i < panels.size(); ++i) frozen[i] = panels[i].roundoff_limited;
    bool width_limited = false;
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        if (static_cast<int>(panels.size()) >= opts.max_panels) {
            res.converged = false;
            break;
        }
        std::size_t worst = panels.size();
        for (std::size_t i = 0; i < panels.size(); ++i)
            if (!frozen[i] && (worst == panels.size() || panels[i].error > panels[worst].error))
                worst = i;
        if (worst == panels.size()) {
            res.converged = !width_limited;
            break;
        }
        const auto p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b)) {
            frozen[worst] = 1;
            width_limited = true;
            continue;
        }
        auto left = detail::apply_rule<T>(f, p.a, mid, res.evaluations);
        auto right = detail::apply_rule<T>(f, mid, p.b, res.evaluations);
        panels[worst] = left;
        frozen[worst] = left.roundoff_limited;
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
        frozen.insert(frozen.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right.roundoff_limited);
        totals(value, error);
    }
    if (!std::isfinite(error)) res.converged = false;
    res.value = value;
    res.error = error;
    return res;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opts = {}) {
    const std::array<double, 2> br{a, b};
    return integrate<T>(std::forward<F>(f), std::span<const double>(br), opts);
}

/// Sorts, deduplicates and clips breakpoints to [lo, hi], always keeping both ends.
inline std::vector<double> make_breaks(std::vector<double> pts, double lo, double hi) {
    pts.push_back(lo);
    pts.push_back(hi);
    std::vector<double> out;
    for (double x : pts)
        if (std::isfinite(x) && x >= lo && x <= hi) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cesaro::quad
