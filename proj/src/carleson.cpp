#include "cesaro/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cesaro {

void CarlesonParams::validate() const {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("carleson: s must be > 0");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("carleson: alpha must be >= 0");
    if (!(t_exp > 0.0) || !std::isfinite(t_exp)) throw std::invalid_argument("carleson: t_exp must be > 0");
    if (!(r_exp >= 0.0 && r_exp < s)) throw std::invalid_argument("carleson: r_exp must satisfy 0 <= r_exp < s");
}

std::string to_string(Label l) {
    switch (l) {
        case Label::finite_looking: return "finite-looking";
        case Label::diverging: return "diverging";
        case Label::vanishing: return "vanishing";
        case Label::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(IntegralVariant v) {
    switch (v) {
        case IntegralVariant::ii: return "ii";
        case IntegralVariant::iii: return "iii";
        case IntegralVariant::iv: return "iv";
    }
    return "ii";
}

IntegralVariant parse_variant(const std::string& s) {
    if (s == "ii") return IntegralVariant::ii;
    if (s == "iii") return IntegralVariant::iii;
    if (s == "iv") return IntegralVariant::iv;
    throw std::invalid_argument("unknown integral variant '" + s + "' (expected ii, iii or iv)");
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    LineFit f;
    if (n < 2) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        ss += e * e;
    }
    f.residual = std::sqrt(ss / static_cast<double>(n));
    return f;
}

// log(e/g) for a gap g in (0,1].
double log_e_over(double gap) { return 1.0 - std::log(gap); }

}  // namespace

TrendFit label_trend(const std::vector<double>& values, int first_index, const TrendRule& rule) {
    TrendFit fit;
    const std::size_t n = values.size();
    if (n == 0) return fit;
    fit.peak = *std::max_element(values.begin(), values.end());
    fit.terminal = values.back();

    const std::size_t k = static_cast<std::size_t>(std::max(rule.decreasing_points, 1));
    fit.decreasing_tail = n >= k;
    for (std::size_t i = n - std::min(n, k) + 1; i < n && fit.decreasing_tail; ++i)
        if (values[i] > values[i - 1]) fit.decreasing_tail = false;

    // Slope of log2(v_j) against log2(j) over the second half of the ladder.
    std::vector<double> xs, ys;
    for (std::size_t i = n / 2; i < n; ++i) {
        const int j = first_index + static_cast<int>(i);
        if (j <= 0 || !(values[i] > 0.0) || !std::isfinite(values[i])) continue;
        xs.push_back(std::log2(static_cast<double>(j)));
        ys.push_back(std::log2(values[i]));
    }
    const LineFit lf = fit_line(xs, ys);
    fit.slope = lf.slope;
    fit.residual = lf.residual;

    if (static_cast<int>(n) < rule.min_points) {
        fit.label = Label::inconclusive;
        return fit;
    }
    for (double v : values)
        if (std::isnan(v) || v < 0.0) {
            fit.label = Label::inconclusive;
            return fit;
        }
    if (!std::isfinite(fit.terminal)) {
        fit.label = Label::diverging;
        return fit;
    }
    if (fit.peak == 0.0 || (fit.terminal < rule.vanishing_fraction * fit.peak && fit.decreasing_tail)) {
        fit.label = Label::vanishing;
        return fit;
    }
    if (xs.size() < 3 || fit.residual > rule.max_residual) {
        fit.label = Label::inconclusive;
        return fit;
    }
    fit.label = fit.slope > rule.diverging_slope ? Label::diverging : Label::finite_looking;
    return fit;
}

double carleson_quotient_gap(const RadialMeasure& m, double gap, const CarlesonParams& params) {
    if (!(gap > 0.0 && gap <= 1.0)) throw std::domain_error("carleson_quotient: t must lie in [0,1)");
    const double tl = tail_gap(m, gap);
    if (tl == 0.0) return 0.0;
    const double lg = params.alpha != 0.0 ? std::pow(log_e_over(gap), params.alpha) : 1.0;
    return tl * lg / std::pow(gap, params.s);
}

double carleson_quotient(const RadialMeasure& m, double t, const CarlesonParams& params) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("carleson_quotient: t must lie in [0,1)");
    return carleson_quotient_gap(m, 1.0 - t, params);
}

CriterionResult classify_tail(const RadialMeasure& m, const CarlesonParams& params, int depth,
                              const TrendRule& rule) {
    if (depth < 0) throw std::invalid_argument("classify_tail: negative ladder depth");
    CriterionResult out;
    out.name = "tail";
    for (int j = 0; j <= depth; ++j) {
        const double gap = std::ldexp(1.0, -j);
        out.ladder.push_back(1.0 - gap);
        out.values.push_back(carleson_quotient_gap(m, gap, params));
    }
    out.fit = label_trend(out.values, 0, rule);
    out.label = out.fit.label;
    return out;
}

CriterionResult classify_moments(const MomentSequence& mu, const CarlesonParams& params, const TrendRule& rule) {
    if (mu.n_max < 1024 || mu.values.size() <= 1024)
        throw std::invalid_argument("classify_moments: need moments up to n >= 2^10");
    CriterionResult out;
    out.name = "moments";
    for (std::size_t n = 1; n <= mu.n_max && n < mu.values.size(); n *= 2) {
        const double np1 = static_cast<double>(n) + 1.0;
        const double lg = params.alpha != 0.0 ? std::pow(std::log(np1), params.alpha) : 1.0;
        out.ladder.push_back(static_cast<double>(n));
        out.values.push_back(mu.values[n] * std::pow(np1, params.s) * lg);
    }
    out.fit = label_trend(out.values, 0, rule);
    out.label = out.fit.label;
    return out;
}

PowerLogFit fit_moment_decay(const MomentSequence& mu, std::size_t n_lo, std::size_t n_hi, bool with_log_term) {
    std::vector<double> a, b, y;
    std::size_t n = 1;
    while (n < std::max<std::size_t>(n_lo, 1)) n *= 2;
    for (; n <= n_hi && n < mu.values.size(); n *= 2) {
        if (!(mu.values[n] > 0.0)) continue;
        const double l = std::log(static_cast<double>(n) + 1.0);
        a.push_back(l);
        b.push_back(std::log(l));
        y.push_back(std::log(mu.values[n]));
    }
    PowerLogFit out;
    const std::size_t k = y.size();
    if (!with_log_term) {
        if (k < 2) return out;
        const LineFit lf = fit_line(a, y);
        out.exponent = lf.slope;
        out.intercept = lf.intercept;
        out.residual = lf.residual;
        return out;
    }
    if (k < 3) return out;
    // Normal equations of y ~ c + e a + g b, centred for conditioning.
    double ma = 0, mb = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        ma += a[i];
        mb += b[i];
        my += y[i];
    }
    ma /= k;
    mb /= k;
    my /= k;
    double saa = 0, sab = 0, sbb = 0, say = 0, sby = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double da = a[i] - ma, db = b[i] - mb, dy = y[i] - my;
        saa += da * da;
        sab += da * db;
        sbb += db * db;
        say += da * dy;
        sby += db * dy;
    }
    const double det = saa * sbb - sab * sab;
    if (!(std::abs(det) > 1e-300)) return out;
    out.exponent = (say * sbb - sby * sab) / det;
    out.log_exponent = (saa * sby - sab * say) / det;
    out.intercept = my - out.exponent * ma - out.log_exponent * mb;
    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double e = y[i] - out.intercept - out.exponent * a[i] - out.log_exponent * b[i];
        ss += e * e;
    }
    out.residual = std::sqrt(ss / k);
    return out;
}

double carleson_integral(const RadialMeasure& m, double gap, double angle, const CarlesonParams& params,
                         IntegralVariant variant, const MeasureQuadrature& q) {
    params.validate();
    if (!(gap > 0.0 && gap <= 1.0)) throw std::domain_error("carleson_integral: |a| must lie in [0,1)");
    const double e = params.s + params.t_exp - params.r_exp;
    const double prefactor = std::pow(gap, params.t_exp) *
                             (params.alpha != 0.0 ? std::pow(log_e_over(gap), params.alpha) : 1.0);
    // With k = 1 - |a|x = y + gap*x (no cancellation), 1 - a x = 2 sin^2(th/2) + k cos th - i (1-k) sin th.
    const double sh = std::sin(0.5 * angle);
    const double c2 = 2.0 * sh * sh;
    const double cs = std::cos(angle), sn = std::sin(angle);
    const double hint = -std::log(gap);
    const std::vector<double> hints{hint};

    auto fail = [&](const char* what, double err) {
        throw quad::QuadratureError(std::string("carleson_integral: ") + what, err);
    };

    if (variant == IntegralVariant::iv) {
        auto g = [&](double x, double y) -> std::complex<double> {
            const double k = y + gap * x;
            const std::complex<double> w(c2 + k * cs, -(1.0 - k) * sn);
            return std::exp(-e * std::log(w));
        };
        const auto res = integrate<std::complex<double>>(m, g, params.r_exp, hints, q);
        if (res.divergent) return std::numeric_limits<double>::infinity();
        const double v = std::abs(res.value) * prefactor;
        if (!res.converged && res.error * prefactor > q.declared_tol * std::max(1.0, v))
            fail("quadrature did not converge", res.error * prefactor);
        return v;
    }
    auto g = [&](double x, double y) -> double {
        const double k = y + gap * x;
        if (variant == IntegralVariant::ii) return std::pow(k, -e);
        const double re = c2 + k * cs, im = (1.0 - k) * sn;
        return std::pow(std::hypot(re, im), -e);
    };
    const auto res = integrate<double>(m, g, params.r_exp, hints, q);
    if (res.divergent) return std::numeric_limits<double>::infinity();
    const double v = res.value * prefactor;
    if (!res.converged && res.error * prefactor > q.declared_tol * std::max(1.0, v))
        fail("quadrature did not converge", res.error * prefactor);
    return v;
}

double carleson_integral(const RadialMeasure& m, std::complex<double> a, const CarlesonParams& params,
                         IntegralVariant variant, const MeasureQuadrature& q) {
    const double r = std::abs(a);
    if (!(r < 1.0)) throw std::domain_error("carleson_integral: |a| must lie in [0,1)");
    return carleson_integral(m, 1.0 - r, r == 0.0 ? 0.0 : std::arg(a), params, variant, q);
}

CriterionResult integral_profile(const RadialMeasure& m, const CarlesonParams& params, IntegralVariant variant,
                                 const ProfileConfig& config, const TrendRule& rule) {
    params.validate();
    if (config.rays.empty()) throw std::invalid_argument("integral_profile: at least one ray is required");
    CriterionResult out;
    out.name = "integral";
    for (int j = 0; j <= config.depth; ++j) {
        const double gap = std::ldexp(1.0, -j);
        double best = 0.0;
        for (double theta : config.rays)
            best = std::max(best, carleson_integral(m, gap, theta, params, variant, config.quadrature));
        out.ladder.push_back(1.0 - gap);
        out.values.push_back(best);
    }
    out.fit = label_trend(out.values, 0, rule);
    out.label = out.fit.label;
    return out;
}

std::vector<CarlesonParams> default_probes(double s, double alpha) {
    return {{s, alpha, 1.0, 0.0}, {s, alpha, 1.0, 0.5 * s}, {s, alpha, 2.0, 0.5 * s}};
}

Label combine_probe_labels(const std::vector<Label>& labels) {
    bool fin = false, div = false, van = false;
    for (Label l : labels) {
        fin = fin || l == Label::finite_looking;
        div = div || l == Label::diverging;
        van = van || l == Label::vanishing;
    }
    if (div && van) return Label::inconclusive;
    if (div) return Label::diverging;
    if (van) return Label::vanishing;
    if (fin) return Label::finite_looking;
    return Label::inconclusive;
}

CarlesonVerdict classify(const RadialMeasure& m, const CarlesonParams& params, const ClassifyConfig& config,
                         const MomentSequence* mu) {
    params.validate();
    if (config.depth < 10) throw std::invalid_argument("classify: ladder depth must be >= 10");
    CarlesonVerdict v;
    v.params = params;

    MomentSequence own;
    const std::size_t n_needed = std::size_t{1} << config.depth;
    if (mu == nullptr || mu->n_max < n_needed) {
        own = moments(m, n_needed, config.quadrature);
        mu = &own;
    }

    auto tail_res = classify_tail(m, params, config.depth, config.rule);
    v.sup_estimate = *std::max_element(tail_res.values.begin(), tail_res.values.end());
    v.limit_estimate = tail_res.values.back();
    v.per_criterion["tail"] = std::move(tail_res);

    MomentSequence trimmed = *mu;
    trimmed.n_max = n_needed;
    trimmed.values.resize(n_needed + 1);
    v.per_criterion["moments"] = classify_moments(trimmed, params, config.rule);
    const PowerLogFit pf = fit_moment_decay(trimmed, 64, n_needed, true);
    v.fitted_exponent = pf.exponent;
    v.fitted_log_exponent = pf.log_exponent;

    if (config.use_integral) {
        const auto probes = config.probes.empty() ? default_probes(params.s, params.alpha) : config.probes;
        std::vector<Label> labels;
        ProfileConfig pc = config.profile;
        pc.depth = config.depth;
        for (const auto& pr : probes) {
            auto res = integral_profile(m, pr, config.variant, pc, config.rule);
            labels.push_back(res.label);
            v.probes.emplace_back(pr, std::move(res));
        }
        CriterionResult combined = v.probes.front().second;
        combined.label = combine_probe_labels(labels);
        v.per_criterion["integral"] = std::move(combined);
    }

    bool have = false;
    v.agreement = true;
    Label shared = Label::inconclusive;
    for (const auto& [name, res] : v.per_criterion) {
        if (res.label == Label::inconclusive) continue;
        if (!have) {
            shared = res.label;
            have = true;
        } else if (res.label != shared) {
            v.agreement = false;
        }
    }
    v.label = v.agreement ? shared : Label::inconclusive;
    return v;
}

}  // namespace cesaro
