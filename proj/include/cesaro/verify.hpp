#pragma once

// Desk-scale experiments around the boundedness and compactness of
// C_mu : B_p -> X for the two endpoint spaces X = Lambda^s_{1/s} and X = Bloch,
// and the tail/moment agreement on a catalog of measures.
//
// The operator-norm proxy is R(t) = ||C_mu f_t||_X / ||f_t||_{B_p} on the test
// family f_t(z) = (log(e/(1-t)))^{-1/p} log(1/(1-tz)), t_j = 1 - 2^{-j}.

#include <string>
#include <vector>

#include "cesaro/carleson.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/series.hpp"

namespace cesaro {

struct VerifyConfig {
    /// t_j = 1 - 2^{-j}, j = 1..t_depth.
    int t_depth = 12;
    /// Truncation degree of f_t and C_mu f_t; must resolve t^k down to roundoff at the deepest t.
    std::size_t degree = std::size_t{1} << 17;
    /// L_N on N = 2^k, k = 2..lb_depth.
    int lb_depth = 14;
    NormGrid grid{};
    BesovOptions besov{};
    ClassifyConfig classify{};
    TrendRule rule{};
};

struct LadderEntry {
    double t = 0.0;
    double besov = 0.0;      // ||f_t||_{B_p}
    double lipschitz = 0.0;  // ||C_mu f_t||_{Lambda^s_{1/s}}
    double bloch = 0.0;      // ||C_mu f_t||_B
    double ratio = 0.0;      // lipschitz / besov
    double bloch_ratio = 0.0;
};

struct LowerBoundEntry {
    std::size_t n = 0;
    double value = 0.0;
};

struct VerificationReport {
    std::string theorem;  // "boundedness" or "compactness"
    std::vector<MeasureComponent> measure;
    double p = 2.0, s = 2.0, q = 2.0;
    std::vector<LadderEntry> ladder;
    std::vector<LowerBoundEntry> lower_bound;
    TrendFit ratio_fit;        // of ratio (boundedness) or of lipschitz (compactness)
    TrendFit bloch_ratio_fit;
    TrendFit lower_bound_fit;
    CarlesonVerdict classifier;
    /// "bounded" | "not bounded" | "compact-consistent" | "not compact" | "inconclusive"
    std::string verdict;
    bool consistent = false;
};

/// L_N = mu_N N (log(N+1))^{1/q}. Requires N > 2, p > 1 and N <= mu.n_max.
double lower_bound_statistic(const MomentSequence& mu, double p, std::size_t n);

/// Throws std::domain_error unless p > 1 (q = p/(p-1) finite) and s > 1.
void check_exponents(double p, double s);

VerificationReport boundedness_experiment(const RadialMeasure& m, double p, double s, const VerifyConfig& config = {});
VerificationReport compactness_experiment(const RadialMeasure& m, double p, double s, const VerifyConfig& config = {});

/// A norm sequence trends to 0: decreasing tail and a log-log slope below -diverging_slope.
bool trends_to_zero(const TrendFit& fit, const TrendRule& rule = {});

struct CatalogEntry {
    std::string name;
    RadialMeasure measure;
};

struct AgreementCell {
    std::string measure;
    double s = 0.0, alpha = 0.0;
    Label tail = Label::inconclusive;
    Label moments = Label::inconclusive;
    Label integral = Label::inconclusive;
    /// All conclusive labels of the cell coincide.
    bool agree = false;
    bool conclusive = false;
};

struct AgreementMatrix {
    std::vector<AgreementCell> cells;
    int conclusive_cells = 0;
    int agreeing_cells = 0;
    /// agreeing / conclusive, or 1 when nothing is conclusive.
    double agreement_rate = 1.0;
};

/// Labels of every (measure, (s, alpha)) cell; integral labels are computed when use_integral.
AgreementMatrix proposition21_experiment(const std::vector<CatalogEntry>& catalog,
                                         const std::vector<std::pair<double, double>>& grid,
                                         bool use_integral = true, int depth = 14);

}  // namespace cesaro
