#include <doctest.h>

#include <cmath>

#include "catalog.hpp"
#include "cesaro/verify.hpp"

using namespace cesaro;
using doctest::Approx;

namespace {

VerifyConfig small_config() {
    VerifyConfig c;
    c.t_depth = 8;
    c.degree = std::size_t{1} << 13;
    return c;
}

}  // namespace

TEST_CASE("lower-bound statistic examples") {
    const auto leb = moments(RadialMeasure::lebesgue(), 64);
    CHECK(lower_bound_statistic(leb, 2.0, 15) == Approx(15.0 / 16.0 * std::sqrt(std::log(16.0))).epsilon(1e-13));
    CHECK(lower_bound_statistic(leb, 2.0, 15) == Approx(1.561).epsilon(1e-3));
    const auto d0 = moments(RadialMeasure::point(1.0, 0.0), 64);
    for (double p : {1.5, 2.0, 4.0}) CHECK(lower_bound_statistic(d0, p, 32) == 0.0);
    CHECK_THROWS_AS(lower_bound_statistic(leb, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_statistic(leb, 1.0, 8), std::domain_error);
    CHECK_THROWS_AS(lower_bound_statistic(leb, 2.0, 65), std::invalid_argument);
}

TEST_CASE("exponents at the boundary are rejected") {
    CHECK_THROWS_AS(boundedness_experiment(RadialMeasure::lebesgue(), 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(compactness_experiment(RadialMeasure::lebesgue(), 0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(boundedness_experiment(RadialMeasure::lebesgue(), 2.0, 1.0), std::domain_error);
}

TEST_CASE("Lebesgue measure: the classical Cesaro operator is not bounded") {
    const auto r = boundedness_experiment(RadialMeasure::lebesgue(), 2.0, 2.0, small_config());
    CHECK(r.verdict == "not bounded");
    CHECK(r.consistent);
    CHECK(r.classifier.label == Label::diverging);
    CHECK(r.lower_bound_fit.label == Label::diverging);
    CHECK(r.q == 2.0);
    for (std::size_t i = 1; i < r.ladder.size(); ++i) CHECK(r.ladder[i].ratio > r.ladder[i - 1].ratio);
    const auto& last = r.lower_bound.back();
    CHECK(last.n == 16384);
    CHECK(last.value == Approx(16384.0 / 16385.0 * std::sqrt(std::log(16385.0))).epsilon(1e-10));
}

TEST_CASE("an atom gives a bounded operator") {
    const auto r = boundedness_experiment(RadialMeasure::point(1.0, 0.9), 2.0, 2.0, small_config());
    CHECK(r.verdict == "bounded");
    CHECK(r.consistent);
    CHECK(r.classifier.label == Label::vanishing);
    CHECK(r.lower_bound.back().value < 1e-100);
}

TEST_CASE("the logarithmic weight gives a bounded operator") {
    const auto r = boundedness_experiment(fixtures::measure("powerlog"), 2.0, 2.0, small_config());
    CHECK(r.verdict == "bounded");
    CHECK(r.consistent);
    CHECK(r.classifier.label == Label::finite_looking);
}

TEST_CASE("boundedness verdict matches the classifier at (1, 1/q)") {
    for (const char* name : {"lebesgue", "power2", "mix"})
        for (double p : {1.5, 3.0}) {
            INFO(name << " p=" << p);
            const auto r = boundedness_experiment(fixtures::measure(name), p, 2.0, small_config());
            if (r.verdict == "inconclusive" || r.classifier.label == Label::inconclusive) continue;
            const bool cls_bounded = r.classifier.label != Label::diverging;
            CHECK(cls_bounded == (r.verdict == "bounded"));
        }
}

TEST_CASE("compactness experiments") {
    const auto atom = compactness_experiment(RadialMeasure::point(1.0, 0.9), 2.0, 2.0, small_config());
    CHECK(atom.verdict == "compact-consistent");
    CHECK(atom.consistent);
    CHECK(trends_to_zero(atom.ratio_fit));
    const auto leb = compactness_experiment(RadialMeasure::lebesgue(), 2.0, 2.0, small_config());
    CHECK(leb.verdict == "not compact");
    CHECK(leb.consistent);
    const auto mix = compactness_experiment(fixtures::measure("mix"), 2.0, 2.0, small_config());
    CHECK(mix.ladder.size() == 8);
    CHECK(mix.classifier.label == Label::vanishing);
}

TEST_CASE("R scales with the measure") {
    const auto cfg = small_config();
    const auto m = fixtures::measure("power2");
    const auto a = boundedness_experiment(m, 2.0, 2.0, cfg);
    const auto b = boundedness_experiment(m.scaled(5.0), 2.0, 2.0, cfg);
    for (std::size_t i = 0; i < a.ladder.size(); ++i)
        CHECK(b.ladder[i].ratio == Approx(5.0 * a.ladder[i].ratio).epsilon(1e-10));
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("L_N ignores components concentrated near 0 up to their moments") {
    const auto m = RadialMeasure::lebesgue();
    const auto m2 = m + RadialMeasure::point(3.0, 1e-3);
    const auto mu = moments(m, 1u << 12), mu2 = moments(m2, 1u << 12);
    for (std::size_t n = 4; n <= (1u << 12); n *= 2) {
        const double extra = 3.0 * std::pow(1e-3, static_cast<double>(n)) * n * std::sqrt(std::log(n + 1.0));
        CHECK(lower_bound_statistic(mu2, 2.0, n) == Approx(lower_bound_statistic(mu, 2.0, n) + extra).epsilon(1e-14));
    }
}

TEST_CASE("Bloch norm of C_mu f_t dominates L_N up to one constant") {
    for (const std::string name : {"lebesgue", "power2", "powerlog", "power05"}) {
        const auto m = fixtures::measure(name);
        const auto mu = moments(m, 1u << 15);
        double worst = INFINITY;
        for (std::size_t n = 8; n <= (1u << 12); n *= 2) {
            const double t = static_cast<double>(n) / (n + 1.0);
            const auto g = cesaro_like(mu, test_function(t, 2.0, 1u << 15));
            worst = std::min(worst, bloch_norm(g).value / lower_bound_statistic(mu, 2.0, n));
        }
        INFO(name);
        CHECK(worst >= 0.1);
    }
}

TEST_CASE("agreement matrix bookkeeping") {
    std::vector<CatalogEntry> cat{{"lebesgue", RadialMeasure::lebesgue()}, {"atom", RadialMeasure::point(1.0, 0.5)}};
    const auto a = proposition21_experiment(cat, {{1.0, 0.0}}, false);
    REQUIRE(a.cells.size() == 2);
    CHECK(a.cells[0].tail == Label::finite_looking);
    CHECK(a.cells[0].moments == Label::finite_looking);
    CHECK(a.cells[0].integral == Label::inconclusive);
    CHECK(a.cells[1].tail == Label::vanishing);
    CHECK(a.cells[1].moments == Label::vanishing);
    CHECK(a.agreement_rate == 1.0);
    CHECK_THROWS_AS(proposition21_experiment({}, {{1.0, 0.0}}), std::invalid_argument);
}
