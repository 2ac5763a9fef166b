// Acceptance checks: one PASS/FAIL line per criterion.
//
//     acceptance            run everything
//     acceptance <name>...  run the named checks

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "cesaro/carleson.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/verify.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome moment_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto mu = moments(RadialMeasure::lebesgue(), 1u << 14);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (std::size_t n = 0; n <= mu.n_max; ++n) worst = std::max(worst, std::abs(mu[n] - 1.0 / (n + 1.0)));
    return {worst <= 1e-12 && elapsed < 60.0, fmt("max error %.3g over n <= 16384, %.2f s", worst, elapsed)};
}

Outcome tail_oracle() {
    double worst = 0.0;
    std::string where;
    for (const auto& name : fixtures::catalog_names()) {
        const auto m = fixtures::measure(name);
        for (std::size_t n : {4u, 64u, 1024u, 8192u}) {
            const double d = std::abs(moment(m, n) - moment_via_tail(m, n));
            if (d >= worst) {
                worst = d;
                where = name + " n=" + std::to_string(n);
            }
        }
    }
    return {worst <= 1e-9, fmt("max |moment - moment_via_tail| %.3g (%s), %zu measures", worst, where.c_str(),
                               fixtures::catalog_names().size())};
}

Outcome power_law() {
    bool ok = true;
    std::string detail;
    for (double s : {0.5, 1.0, 2.0}) {
        const auto mu = moments(RadialMeasure::power(s), 8192);
        const double e = fit_moment_decay(mu, 64, 8192, false).exponent;
        ok = ok && std::abs(e + s) <= 0.05;
        detail += fmt("s=%g: %.4f  ", s, e);
    }
    return {ok, detail};
}

Outcome log_factor() {
    const auto mu = moments(fixtures::measure("powerlog"), 16384);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t n = 256; n <= 16384; ++n) {
        const double v = mu[n] * (n + 1.0) * std::log(n + 1.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {hi / lo < 2.0, fmt("normalized range [%.4f, %.4f], ratio %.4f", lo, hi, hi / lo)};
}

Outcome representation() {
    const std::size_t n = 4096;
    const std::vector<PowerSeries> fs{PowerSeries::monomial(0), PowerSeries::monomial(1), log_one_over_one_minus_z(n),
                                      test_function(0.9, 2.0, n)};
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& name : fixtures::catalog_names()) {
        const auto m = fixtures::measure(name);
        const auto mu = moments(m, n);
        for (const auto& f : fs) {
            const auto g = cesaro_like(mu, f.resized(n));
            for (double r : {0.5, 0.9})
                for (int k = 0; k < 8; ++k) {
                    const auto z = EvalPoint::polar(r, 2.0 * std::numbers::pi * k / 8.0);
                    const cplx a = g.eval(z.value()), b = cesaro_like_integral_eval(m, f, z);
                    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
                    ++count;
                }
        }
    }
    return {worst <= 1e-8, fmt("max relative difference %.3g over %zu evaluations", worst, count)};
}

Outcome classical_cesaro() {
    const auto mu = moments(RadialMeasure::lebesgue(), 256);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto a = oracle::random_coeffs(256, seed);
        const auto b = cesaro_like(mu, PowerSeries(a));
        std::complex<long double> s{};
        for (std::size_t k = 0; k <= 256; ++k) {
            s += std::complex<long double>(a[k].real(), a[k].imag());
            const cplx ref(static_cast<double>(s.real() / (k + 1)), static_cast<double>(s.imag() / (k + 1)));
            worst = std::max(worst, std::abs(b[k] - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    return {worst <= 1e-12, fmt("max error %.3g over 20 random degree-256 inputs", worst)};
}

Outcome parseval() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto a = oracle::random_coeffs(1024, 1000 + seed);
        const PowerSeries f(a);
        for (double r : {0.5, 1.0 - std::ldexp(1.0, -10)}) {
            const double m = integral_mean(f, r, 2.0, true);
            const double ref = oracle::parseval_derivative_mean2(a, r);
            worst = std::max(worst, std::abs(m * m - ref) / ref);
        }
    }
    return {worst <= 1e-10, fmt("max relative error %.3g on squared means", worst)};
}

Outcome ordering() {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto names = fixtures::catalog_names();
    std::vector<RadialMeasure> ms;
    for (const auto& n : names) ms.push_back(fixtures::measure(n));
    std::size_t samples = 0, violations = 0;
    double worst = 0.0;
    while (samples < 600) {
        const auto& m = ms[samples % ms.size()];
        CarlesonParams pp{0.25 + 2.75 * uni(gen), 2.0 * uni(gen), 0.25 + 2.75 * uni(gen), 0.0};
        pp.r_exp = 0.9 * pp.s * uni(gen);
        const double gap = std::pow(2.0, -14.0 * uni(gen));
        const double theta = 2.0 * std::numbers::pi * uni(gen);
        const double v4 = carleson_integral(m, gap, theta, pp, IntegralVariant::iv);
        const double v3 = carleson_integral(m, gap, theta, pp, IntegralVariant::iii);
        const double v2 = carleson_integral(m, gap, 0.0, pp, IntegralVariant::ii);
        // Separate quadratures only agree to their tolerance.
        const double slack = 1e-12;
        const double excess = std::max(v4 - v3 * (1.0 + slack), v3 - v2 * (1.0 + slack));
        if (excess > 0.0) ++violations;
        worst = std::max(worst, std::max(v4 / v3, v3 / v2));
        ++samples;
    }
    return {violations == 0 && samples >= 500,
            fmt("%zu violations over %zu samples, max neighbouring ratio %.15f", violations, samples, worst)};
}

Outcome criterion_agreement() {
    const std::vector<std::pair<double, double>> grid{{1.0, 0.0}, {1.0, 0.5}, {2.0, 0.0}, {0.5, 1.0}};
    const auto a = proposition21_experiment(fixtures::catalog(), grid);
    std::string bad;
    for (const auto& c : a.cells)
        if (c.conclusive && !c.agree) bad += " " + c.measure;
    return {a.cells.size() >= 24 && a.agreeing_cells == a.conclusive_cells,
            fmt("%zu cells, %zu conclusive, %zu agreeing%s", a.cells.size(), a.conclusive_cells, a.agreeing_cells,
                bad.c_str())};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

Outcome dichotomy() {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;

    const auto leb = boundedness_experiment(RadialMeasure::lebesgue(), 2.0, 2.0);
    bool grows = true;
    for (std::size_t i = 1; i < leb.ladder.size(); ++i) grows = grows && leb.ladder[i].ratio > leb.ladder[i - 1].ratio;
    const double ln = leb.lower_bound.back().value;
    ok = ok && grows && ln > 3.0 && leb.lower_bound.back().n == 16384 && leb.verdict == "not bounded" &&
         leb.lower_bound_fit.label == Label::diverging;
    detail += fmt("lebesgue: %s, R %s, L_16384 = %.4f; ", leb.verdict.c_str(), grows ? "increasing" : "not increasing",
                  ln);

    for (const char* name : {"atom09", "powerlog"}) {
        const auto r = boundedness_experiment(fixtures::measure(name), 2.0, 2.0);
        std::vector<double> rs;
        for (const auto& e : r.ladder) rs.push_back(e.ratio);
        const double med = median(rs);
        const double spread = std::max(*std::max_element(rs.begin(), rs.end()) / med,
                                       med / *std::min_element(rs.begin(), rs.end()));
        ok = ok && spread <= 3.0 && r.verdict == "bounded";
        detail += fmt("%s: %s, max deviation from median x%.3f; ", name, r.verdict.c_str(), spread);
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 600.0;
    detail += fmt("%.0f s", elapsed);
    return {ok, detail};
}

Outcome compactness() {
    const auto atom = compactness_experiment(RadialMeasure::point(1.0, 0.9), 2.0, 2.0);
    const auto leb = compactness_experiment(RadialMeasure::lebesgue(), 2.0, 2.0);
    auto last_over_peak = [](const VerificationReport& r) {
        double peak = 0.0;
        for (const auto& e : r.ladder) peak = std::max(peak, e.lipschitz);
        return r.ladder.back().lipschitz / peak;
    };
    const double a = last_over_peak(atom), l = last_over_peak(leb);
    return {a < 0.1 && l >= 0.1 && atom.verdict == "compact-consistent" && leb.verdict == "not compact",
            fmt("delta_0.9: j=12 norm at %.1f%% of peak (%s); lebesgue: %.1f%% of peak (%s)", 100.0 * a,
                atom.verdict.c_str(), 100.0 * l, leb.verdict.c_str())};
}

Outcome norm_sanity() {
    const double b1 = bloch_norm(PowerSeries::monomial(1)).value;
    const double b2 = besov_norm(PowerSeries::monomial(1), 2.0).value;
    const double bl = bloch_norm(log_one_over_one_minus_z(4096)).value;
    const bool ok = std::abs(b1 - 1.0) <= 1e-6 && std::abs(b2 - 1.0) <= 1e-6 && std::abs(bl - 2.0) <= 1e-3;
    return {ok, fmt("bloch(z) = %.12f, besov(z, 2) = %.12f, bloch(log, N=4096) = %.6f (truncation sup %.6f)", b1, b2,
                    bl, oracle::truncated_log_bloch(4096))};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& checks() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
        {"moment-exactness", moment_exactness},
        {"tail-oracle", tail_oracle},
        {"power-law", power_law},
        {"log-factor", log_factor},
        {"representation", representation},
        {"classical-cesaro", classical_cesaro},
        {"parseval", parseval},
        {"ordering", ordering},
        {"criterion-agreement", criterion_agreement},
        {"dichotomy", dichotomy},
        {"compactness", compactness},
        {"norm-sanity", norm_sanity},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failures = 0, ran = 0;
    for (const auto& [name, fn] : checks()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
        ++ran;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no such check\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
