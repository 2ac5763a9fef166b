#pragma once

// Classification of radial measures against (vanishing) alpha-logarithmic
// s-Carleson conditions through three independent routes:
//
//   * the tail quotient   nu([t,1)) (log(e/(1-t)))^alpha / (1-t)^s,
//   * moment decay        mu_n (n+1)^s (log(n+1))^alpha,
//   * integral tests      (1-|a|)^t (log(e/(1-|a|)))^alpha int (1-x)^{-r} K_a(x)^{-(s+t-r)} d nu(x)
//                         with K_a(x) = 1-|a|x, |1-ax| or the complex 1-ax.
//
// A finite supremum cannot be decided numerically, so every route produces a
// sequence on a dyadic ladder (t_j = 1 - 2^{-j}, n_j = 2^j, |a_j| = 1 - 2^{-j})
// and the same trend rule turns it into a label.

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/measure.hpp"

namespace cesaro {

struct CarlesonParams {
    double s = 1.0;
    double alpha = 0.0;
    /// Exponents of the integral tests; 0 <= r_exp < s, t_exp > 0.
    double t_exp = 1.0;
    double r_exp = 0.0;

    /// Throws std::invalid_argument when any field is out of its domain.
    void validate() const;
};

enum class Label { finite_looking, diverging, vanishing, inconclusive };
std::string to_string(Label l);

enum class IntegralVariant { ii, iii, iv };
std::string to_string(IntegralVariant v);
IntegralVariant parse_variant(const std::string& s);

/// Thresholds of the trend rule.
struct TrendRule {
    /// Slope of log2(value) against log2(j) above which the sequence is diverging.
    double diverging_slope = 0.05;
    /// Terminal value below this fraction of the peak (with a decreasing tail) is vanishing.
    double vanishing_fraction = 1e-3;
    /// Number of trailing points that must be nonincreasing for a vanishing label.
    int decreasing_points = 4;
    /// Fewer ladder points than this gives an inconclusive label.
    int min_points = 8;
    /// RMS residual (log2 units) of the slope fit above which a non-vanishing label is inconclusive.
    double max_residual = 0.5;
};

struct TrendFit {
    double slope = 0.0;  // log2(value) vs log2(j) over the second half of the ladder
    double residual = 0.0;
    double peak = 0.0;
    double terminal = 0.0;
    bool decreasing_tail = false;
    Label label = Label::inconclusive;
};

/// Applies the trend rule to values v_j indexed by j = first_index, first_index+1, ...
TrendFit label_trend(const std::vector<double>& values, int first_index = 0, const TrendRule& rule = {});

struct CriterionResult {
    std::string name;
    std::vector<double> ladder;  // t_j, n_j or |a_j|
    std::vector<double> values;
    TrendFit fit;
    Label label = Label::inconclusive;
};

struct CarlesonVerdict {
    CarlesonParams params;
    double sup_estimate = 0.0;    // sup of the tail quotient on the ladder
    double limit_estimate = 0.0;  // terminal tail quotient
    double fitted_exponent = 0.0;      // a in log mu_n ~ c + a log(n+1) + b log log(n+1)
    double fitted_log_exponent = 0.0;  // b
    /// "tail", "moments" and, when computed, "integral".
    std::map<std::string, CriterionResult> per_criterion;
    /// One entry per integral probe; their combination is per_criterion["integral"].
    std::vector<std::pair<CarlesonParams, CriterionResult>> probes;
    /// All conclusive criteria share one label.
    bool agreement = false;
    /// The shared label when agreement holds and at least one criterion is conclusive.
    Label label = Label::inconclusive;
};

/// nu([t,1)) (log(e/(1-t)))^alpha / (1-t)^s.
double carleson_quotient(const RadialMeasure& m, double t, const CarlesonParams& params);
/// Same quotient evaluated from the gap 1 - t.
double carleson_quotient_gap(const RadialMeasure& m, double gap, const CarlesonParams& params);

/// Tail-quotient route on t_j = 1 - 2^{-j}, j = 0..depth.
CriterionResult classify_tail(const RadialMeasure& m, const CarlesonParams& params, int depth = 14,
                              const TrendRule& rule = {});

/// Moment route on n_j = 2^j <= mu.n_max. Requires mu.n_max >= 2^10.
CriterionResult classify_moments(const MomentSequence& mu, const CarlesonParams& params,
                                 const TrendRule& rule = {});

struct PowerLogFit {
    double exponent = 0.0;
    double log_exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Least squares of log mu_n on log(n+1) (and log log(n+1) when with_log_term) over dyadic n in [n_lo, n_hi].
PowerLogFit fit_moment_decay(const MomentSequence& mu, std::size_t n_lo, std::size_t n_hi, bool with_log_term);

/// Integral test value at a; a is given by its gap 1-|a| and argument so that points
/// near the circle keep full precision. Returns +inf when the integral diverges.
double carleson_integral(const RadialMeasure& m, double gap, double angle, const CarlesonParams& params,
                         IntegralVariant variant, const MeasureQuadrature& q = {});
double carleson_integral(const RadialMeasure& m, std::complex<double> a, const CarlesonParams& params,
                         IntegralVariant variant, const MeasureQuadrature& q = {});

struct ProfileConfig {
    int depth = 14;
    /// Ray arguments; the profile value at |a_j| is the largest value over the rays.
    std::vector<double> rays{0.0, 0.25, 1.5707963267948966};
    MeasureQuadrature quadrature{};
};

/// Integral route for one (t_exp, r_exp) probe.
CriterionResult integral_profile(const RadialMeasure& m, const CarlesonParams& params, IntegralVariant variant,
                                 const ProfileConfig& config = {}, const TrendRule& rule = {});

/// The default probes (t, r) = (1, 0), (1, s/2), (2, s/2).
std::vector<CarlesonParams> default_probes(double s, double alpha);

/// Combines probe labels: diverging or vanishing evidence wins over finite-looking,
/// contradictory evidence is inconclusive.
Label combine_probe_labels(const std::vector<Label>& labels);

struct ClassifyConfig {
    int depth = 14;
    bool use_integral = true;
    IntegralVariant variant = IntegralVariant::ii;
    /// Empty: default_probes(s, alpha).
    std::vector<CarlesonParams> probes;
    ProfileConfig profile{};
    TrendRule rule{};
    /// Used for the moments computed by classify().
    MeasureQuadrature quadrature{};
};

/// Runs the tail, moment and (optionally) integral routes and assembles a verdict.
/// `mu` must reach n = 2^depth; pass nullptr to compute it.
CarlesonVerdict classify(const RadialMeasure& m, const CarlesonParams& params, const ClassifyConfig& config = {},
                         const MomentSequence* mu = nullptr);

}  // namespace cesaro
