#include "cesaro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace cesaro {

void check_exponents(double p, double s) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("p must be > 1 (the conjugate exponent q = p/(p-1) must be finite)");
    if (!(s > 1.0) || !std::isfinite(s)) throw std::domain_error("s must be > 1");
}

double lower_bound_statistic(const MomentSequence& mu, double p, std::size_t n) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::domain_error("lower_bound_statistic: p must be > 1");
    if (n <= 2) throw std::invalid_argument("lower_bound_statistic: N must be > 2");
    if (n > mu.n_max || n >= mu.values.size())
        throw std::invalid_argument("lower_bound_statistic: N exceeds the moment sequence");
    const double q = p / (p - 1.0);
    const double nd = static_cast<double>(n);
    return mu.values[n] * nd * std::pow(std::log(nd + 1.0), 1.0 / q);
}

bool trends_to_zero(const TrendFit& fit, const TrendRule& rule) {
    if (fit.label == Label::vanishing) return true;
    return fit.decreasing_tail && fit.slope < -rule.diverging_slope;
}

namespace {

// Bounded (true), unbounded (false) or unknown.
std::optional<bool> bounded(Label l) {
    if (l == Label::finite_looking || l == Label::vanishing) return true;
    if (l == Label::diverging) return false;
    return std::nullopt;
}

struct Shared {
    MomentSequence mu;
    std::vector<LowerBoundEntry> lower_bound;
    TrendFit lower_bound_fit;
    CarlesonVerdict classifier;
};

Shared shared_part(const RadialMeasure& m, double p, const VerifyConfig& c) {
    if (c.t_depth < 1 || c.lb_depth < 2) throw std::invalid_argument("verify: ladder depths too small");
    Shared sh;
    const std::size_t n_max = std::max({c.degree, std::size_t{1} << c.lb_depth, std::size_t{1} << c.classify.depth});
    sh.mu = moments(m, n_max);
    std::vector<double> l;
    for (int k = 2; k <= c.lb_depth; ++k) {
        const std::size_t n = std::size_t{1} << k;
        const double v = lower_bound_statistic(sh.mu, p, n);
        sh.lower_bound.push_back({n, v});
        l.push_back(v);
    }
    sh.lower_bound_fit = label_trend(l, 2, c.rule);
    const double q = p / (p - 1.0);
    sh.classifier = classify(m, CarlesonParams{1.0, 1.0 / q, 1.0, 0.0}, c.classify, &sh.mu);
    return sh;
}

std::vector<LadderEntry> ladder_part(const MomentSequence& mu, double p, double s, const VerifyConfig& c) {
    std::vector<LadderEntry> out;
    // The radii must reach well past the scale 1 - t of the deepest test function.
    NormGrid grid = c.grid;
    grid.max_exponent = std::max(grid.max_exponent, c.t_depth + 4);
    for (int j = 1; j <= c.t_depth; ++j) {
        LadderEntry e;
        e.t = 1.0 - std::ldexp(1.0, -j);
        const PowerSeries f = test_function(e.t, p, c.degree);
        const PowerSeries g = cesaro_like(mu, f);
        e.besov = besov_norm(f, p, c.besov).value;
        e.lipschitz = mean_lipschitz_norm(g, s, 1.0 / s, grid).value;
        e.bloch = bloch_norm(g, grid).value;
        e.ratio = e.lipschitz / e.besov;
        e.bloch_ratio = e.bloch / e.besov;
        out.push_back(e);
    }
    return out;
}

}  // namespace

VerificationReport boundedness_experiment(const RadialMeasure& m, double p, double s, const VerifyConfig& config) {
    check_exponents(p, s);
    VerificationReport r;
    r.theorem = "boundedness";
    r.measure = m.components();
    r.p = p;
    r.s = s;
    r.q = p / (p - 1.0);
    Shared sh = shared_part(m, p, config);
    r.lower_bound = std::move(sh.lower_bound);
    r.lower_bound_fit = sh.lower_bound_fit;
    r.classifier = std::move(sh.classifier);
    r.ladder = ladder_part(sh.mu, p, s, config);

    std::vector<double> ratio, bratio;
    for (const auto& e : r.ladder) {
        ratio.push_back(e.ratio);
        bratio.push_back(e.bloch_ratio);
    }
    r.ratio_fit = label_trend(ratio, 1, config.rule);
    r.bloch_ratio_fit = label_trend(bratio, 1, config.rule);

    const auto ratio_b = bounded(r.ratio_fit.label);
    const auto cls_b = bounded(r.classifier.label);
    const auto lb_b = bounded(r.lower_bound_fit.label);
    r.verdict = !ratio_b ? "inconclusive" : (*ratio_b ? "bounded" : "not bounded");
    r.consistent = ratio_b && cls_b && lb_b && *ratio_b == *cls_b && *lb_b == *cls_b;
    return r;
}

VerificationReport compactness_experiment(const RadialMeasure& m, double p, double s, const VerifyConfig& config) {
    check_exponents(p, s);
    VerificationReport r;
    r.theorem = "compactness";
    r.measure = m.components();
    r.p = p;
    r.s = s;
    r.q = p / (p - 1.0);
    Shared sh = shared_part(m, p, config);
    r.lower_bound = std::move(sh.lower_bound);
    r.lower_bound_fit = sh.lower_bound_fit;
    r.classifier = std::move(sh.classifier);
    r.ladder = ladder_part(sh.mu, p, s, config);

    std::vector<double> norm, bratio;
    for (const auto& e : r.ladder) {
        norm.push_back(e.lipschitz);
        bratio.push_back(e.bloch_ratio);
    }
    r.ratio_fit = label_trend(norm, 1, config.rule);
    r.bloch_ratio_fit = label_trend(bratio, 1, config.rule);

    // A slowly decaying tail quotient counts as vanishing evidence even when the
    // ladder is too short to reach the 1e-3 threshold.
    const auto& tail_fit = r.classifier.per_criterion.at("tail").fit;
    const bool cls_vanishing =
        r.classifier.label == Label::vanishing ||
        (r.classifier.label == Label::finite_looking && trends_to_zero(tail_fit, config.rule));
    const bool norm_zero = trends_to_zero(r.ratio_fit, config.rule);
    const bool lb_zero = trends_to_zero(r.lower_bound_fit, config.rule);
    if (r.classifier.label == Label::inconclusive || r.ratio_fit.label == Label::inconclusive) {
        r.verdict = "inconclusive";
        r.consistent = false;
    } else if (norm_zero && cls_vanishing) {
        r.verdict = "compact-consistent";
        r.consistent = lb_zero;
    } else if (!norm_zero && !cls_vanishing) {
        r.verdict = "not compact";
        r.consistent = !lb_zero;
    } else {
        r.verdict = "inconclusive";
        r.consistent = false;
    }
    return r;
}

AgreementMatrix proposition21_experiment(const std::vector<CatalogEntry>& catalog,
                                         const std::vector<std::pair<double, double>>& grid, bool use_integral,
                                         int depth) {
    if (catalog.empty()) throw std::invalid_argument("proposition21_experiment: empty catalog");
    AgreementMatrix out;
    ClassifyConfig cc;
    cc.depth = depth;
    cc.use_integral = use_integral;
    for (const auto& entry : catalog) {
        const MomentSequence mu = moments(entry.measure, std::size_t{1} << depth);
        for (const auto& [s, alpha] : grid) {
            const CarlesonVerdict v = classify(entry.measure, CarlesonParams{s, alpha, 1.0, 0.0}, cc, &mu);
            AgreementCell cell;
            cell.measure = entry.name;
            cell.s = s;
            cell.alpha = alpha;
            cell.tail = v.per_criterion.at("tail").label;
            cell.moments = v.per_criterion.at("moments").label;
            if (use_integral) cell.integral = v.per_criterion.at("integral").label;
            int conclusive = 0;
            for (Label l : {cell.tail, cell.moments, cell.integral})
                if (l != Label::inconclusive) ++conclusive;
            cell.conclusive = conclusive >= 2;
            cell.agree = v.agreement;
            if (cell.conclusive) {
                ++out.conclusive_cells;
                if (cell.agree) ++out.agreeing_cells;
            }
            out.cells.push_back(cell);
        }
    }
    if (out.conclusive_cells > 0)
        out.agreement_rate = static_cast<double>(out.agreeing_cells) / out.conclusive_cells;
    return out;
}

}  // namespace cesaro
