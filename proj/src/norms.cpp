#include "cesaro/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace cesaro {

namespace {

// In-place backward DFT plans keyed by size. FFTW's planner is not re-entrant,
// so plan creation and execution share one lock.
class FftCache {
public:
    static FftCache& instance() {
        static FftCache cache;
        return cache;
    }

    // out[j] = sum_k in[k] e^{+2 pi i j k / M}
    void backward(std::vector<cplx>& data) {
        const std::size_t n = data.size();
        std::lock_guard<std::mutex> lock(mutex_);
        auto& e = entry(n);
        std::copy(data.begin(), data.end(), reinterpret_cast<cplx*>(e.buffer));
        fftw_execute(e.plan);
        std::copy(reinterpret_cast<cplx*>(e.buffer), reinterpret_cast<cplx*>(e.buffer) + n, data.begin());
    }

    ~FftCache() {
        for (auto& [n, e] : entries_) {
            fftw_destroy_plan(e.plan);
            fftw_free(e.buffer);
        }
    }

private:
    struct Entry {
        fftw_complex* buffer = nullptr;
        fftw_plan plan = nullptr;
    };

    Entry& entry(std::size_t n) {
        auto it = entries_.find(n);
        if (it != entries_.end()) return it->second;
        Entry e;
        e.buffer = fftw_alloc_complex(n);
        if (e.buffer == nullptr) throw std::bad_alloc();
        e.plan = fftw_plan_dft_1d(static_cast<int>(n), e.buffer, e.buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        return entries_.emplace(n, e).first->second;
    }

    std::mutex mutex_;
    std::map<std::size_t, Entry> entries_;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// c_k r^k, trimmed to the effective degree at r.
std::vector<cplx> scaled_coefficients(std::span<const cplx> c, double r) {
    std::vector<cplx> s(c.size());
    if (r == 0.0) {
        s.resize(1);
        s[0] = c[0];
        return s;
    }
    const double log_r = std::log(r);
    for (std::size_t k = 0; k < c.size(); ++k) s[k] = c[k] * std::exp(static_cast<double>(k) * log_r);
    double total = 0.0;
    for (const auto& x : s) total += std::abs(x);
    double suffix = 0.0;
    std::size_t keep = s.size();
    while (keep > 1) {
        suffix += std::abs(s[keep - 1]);
        if (suffix > 1e-17 * total) break;
        --keep;
    }
    s.resize(keep);
    return s;
}

std::vector<cplx> sample(std::span<const cplx> scaled, std::size_t points) {
    std::vector<cplx> buf(points, cplx{});
    for (std::size_t k = 0; k < scaled.size(); ++k) buf[k % points] += scaled[k];
    FftCache::instance().backward(buf);
    return buf;
}

double mean_power(const std::vector<cplx>& vals, double p) {
    quad::CompensatedSum<double> s;
    if (p == 2.0)
        for (const auto& v : vals) s.add(std::norm(v));
    else
        for (const auto& v : vals) s.add(std::pow(std::abs(v), p));
    return s.value() / static_cast<double>(vals.size());
}

// (1/2pi) int |g|^p on the circle of radius r, g given by its coefficients.
double mean_pth_power(std::span<const cplx> coeffs, double r, double p, const AngularOptions& opts) {
    const auto scaled = scaled_coefficients(coeffs, r);
    if (scaled.size() == 1) return std::pow(std::abs(scaled[0]), p);
    std::size_t m = std::max(opts.min_points, next_pow2(2 * scaled.size()));
    double prev = mean_power(sample(scaled, m), p);
    // |g|^2 is a trigonometric polynomial of degree < m: the rule is already exact.
    if (p == 2.0) return prev;
    while (m < opts.max_points) {
        m *= 2;
        const double cur = mean_power(sample(scaled, m), p);
        const double change = std::abs(cur - prev);
        prev = cur;
        if (change <= opts.rel_tol * std::abs(cur) * p || cur == 0.0) break;
    }
    return prev;
}

void check_p(double p, double lo, const char* what) {
    if (!(p >= lo) || !std::isfinite(p)) throw std::domain_error(std::string(what) + ": exponent out of range");
}

}  // namespace

std::vector<double> radial_ladder(int max_exponent, int level) {
    if (max_exponent < 0 || level < 0) throw std::invalid_argument("radial_ladder: negative depth");
    const int steps = max_exponent << level;
    std::vector<double> r(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) r[static_cast<std::size_t>(k)] = -std::expm1(-std::ldexp(k, -level) * std::log(2.0));
    return r;
}

double integral_mean(const PowerSeries& f, double r, double p, bool use_derivative, const AngularOptions& opts) {
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("integral_mean: r must lie in [0,1)");
    check_p(p, 1.0, "integral_mean");
    const PowerSeries g = use_derivative ? f.derivative() : f;
    return std::pow(mean_pth_power(g.coeffs(), r, p, opts), 1.0 / p);
}

double circle_max(const PowerSeries& g, double r, std::size_t min_points) {
    const auto scaled = scaled_coefficients(g.coeffs(), r);
    if (scaled.size() == 1) return std::abs(scaled[0]);
    const std::size_t m = std::max({std::size_t{64}, min_points, next_pow2(4 * scaled.size())});
    double best = 0.0;
    for (const auto& v : sample(scaled, m)) best = std::max(best, std::abs(v));
    return best;
}

NormEstimate bloch_norm(const PowerSeries& f, const NormGrid& grid) {
    NormEstimate est;
    const PowerSeries df = f.derivative();
    const double f0 = std::abs(f[0]);
    double sup = 0.0;
    for (int level = 0; level < std::max(grid.levels, 1); ++level) {
        const std::size_t min_points = std::size_t{64} << level;
        for (double r : radial_ladder(grid.max_exponent, level)) {
            const double v = (1.0 - r) * (1.0 + r) * circle_max(df, r, min_points);
            sup = std::max(sup, v);
        }
        est.history.push_back(f0 + sup);
        est.angular_points = std::max(est.angular_points, min_points);
        est.radii = radial_ladder(grid.max_exponent, level);
    }
    est.value = est.history.back();
    return est;
}

std::vector<ProfilePoint> mean_lipschitz_profile(const PowerSeries& f, double p, double alpha, const NormGrid& grid) {
    check_p(p, 1.0, "mean_lipschitz_profile");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("mean_lipschitz: alpha must lie in (0,1]");
    const PowerSeries df = f.derivative();
    std::vector<ProfilePoint> out;
    for (double r : radial_ladder(grid.max_exponent, std::max(grid.levels, 1) - 1)) {
        const double mp = std::pow(mean_pth_power(df.coeffs(), r, p, grid.angular), 1.0 / p);
        out.push_back({r, std::pow(1.0 - r, 1.0 - alpha) * mp});
    }
    return out;
}

NormEstimate mean_lipschitz_norm(const PowerSeries& f, double p, double alpha, const NormGrid& grid) {
    check_p(p, 1.0, "mean_lipschitz_norm");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("mean_lipschitz: alpha must lie in (0,1]");
    NormEstimate est;
    const PowerSeries df = f.derivative();
    const double f0 = std::abs(f[0]);
    double sup = 0.0;
    // Level l re-uses every radius of level l-1; only the new ones are evaluated.
    for (int level = 0; level < std::max(grid.levels, 1); ++level) {
        const auto radii = radial_ladder(grid.max_exponent, level);
        for (std::size_t k = 0; k < radii.size(); ++k) {
            if (level > 0 && k % 2 == 0) continue;
            const double r = radii[k];
            const double mp = std::pow(mean_pth_power(df.coeffs(), r, p, grid.angular), 1.0 / p);
            sup = std::max(sup, std::pow(1.0 - r, 1.0 - alpha) * mp);
        }
        est.history.push_back(f0 + sup);
        est.radii = radii;
    }
    est.angular_points = next_pow2(2 * df.coeffs().size());
    est.value = est.history.back();
    return est;
}

NormEstimate besov_norm(const PowerSeries& f, double p, const BesovOptions& opts) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::domain_error("besov_norm: p must be > 1");
    NormEstimate est;
    const PowerSeries df = f.derivative();
    const double f0 = std::abs(f[0]);

    // int_D |f'|^p (1-|z|^2)^{p-2} dA = int_0^1 2r M_p^p(r,f') (1-r^2)^{p-2} dr; with 1 - r = e^{-u}
    // the integrand becomes 2r M_p^p(r,f') (2 - e^{-u})^{p-2} e^{-(p-1)u}.
    auto integrand = [&](double u) {
        const double y = std::exp(-u);
        const double r = -std::expm1(-u);
        const double mpp = mean_pth_power(df.coeffs(), r, p, opts.angular);
        return 2.0 * r * mpp * std::pow(2.0 - y, p - 2.0) * std::exp(-(p - 1.0) * u);
    };
    const double upper = std::log(1.0 / opts.tail_cut) / (p - 1.0);
    const double ln2 = std::log(2.0);
    std::vector<double> cuts;
    for (int k = 2; k * ln2 < upper; k += 2) cuts.push_back(k * ln2);
    cuts.push_back(upper);

    quad::CompensatedSum<double> acc;
    double lo = 0.0;
    const quad::Options qo{0.0, opts.rel_tol, 4000};
    for (double hi : cuts) {
        const std::vector<double> br{lo, hi};
        const auto res = quad::integrate<double>(integrand, br, qo);
        if (!res.converged && res.error > 1e-8 * std::max(std::abs(res.value), 1e-300))
            throw quad::QuadratureError("besov_norm: radial quadrature did not converge", res.error);
        acc.add(res.value);
        est.history.push_back(f0 + std::pow(std::max(acc.value(), 0.0), 1.0 / p));
        est.radii.push_back(-std::expm1(-hi));
        lo = hi;
    }
    est.angular_points = next_pow2(2 * df.coeffs().size());
    est.value = est.history.back();
    return est;
}

double growth_ratio(const PowerSeries& f, double p, std::span<const cplx> ladder, const BesovOptions& opts) {
    if (!(p > 1.0)) throw std::domain_error("growth_ratio: p must be > 1");
    const double q = p / (p - 1.0);
    const double b = besov_norm(f, p, opts).value;
    if (b == 0.0) return 0.0;
    double best = 0.0;
    for (const cplx z : ladder) {
        const double m2 = std::norm(z);
        if (!(m2 < 1.0)) throw std::domain_error("growth_ratio: ladder points must lie in the open disk");
        const double denom = b * std::pow(std::log(2.0 / (1.0 - m2)), 1.0 / q);
        best = std::max(best, std::abs(f.eval(z)) / denom);
    }
    return best;
}

}  // namespace cesaro
