#pragma once

// Grid and quadrature estimators for the Bloch, Besov B_p and mean Lipschitz
// Lambda^p_alpha norms of a truncated power series, built on integral means
//
//     M_p(r, g) = ( (1/2pi) int_0^{2pi} |g(r e^{i theta})|^p d theta )^{1/p}.
//
// Values on a circle are obtained with one FFT of the scaled coefficients; the
// sample count is a power of two at least twice the effective degree at r.

#include <cstddef>
#include <span>
#include <vector>

#include "cesaro/series.hpp"

namespace cesaro {

struct AngularOptions {
    /// Doubling the sample count must change M_p by less than this (relative).
    double rel_tol = 1e-10;
    std::size_t min_points = 64;
    std::size_t max_points = std::size_t{1} << 22;
};

/// Nested radial grids r = 1 - 2^{-k / 2^level}, 0 <= k / 2^level <= max_exponent.
struct NormGrid {
    int max_exponent = 12;
    int levels = 3;
    AngularOptions angular{};
};

struct BesovOptions {
    double rel_tol = 1e-10;
    /// Relative size of the neglected part of the radial integral.
    double tail_cut = 1e-16;
    AngularOptions angular{};
};

struct NormEstimate {
    double value = 0.0;
    /// Radii of the finest grid (sup norms) or the radial cutoffs of the history (Besov).
    std::vector<double> radii;
    /// Largest angular sample count used.
    std::size_t angular_points = 0;
    /// Estimates on successively refined (nested) grids; nondecreasing.
    std::vector<double> history;
};

struct ProfilePoint {
    double r = 0.0;
    double value = 0.0;
};

/// Radii of a refinement level, ascending.
std::vector<double> radial_ladder(int max_exponent, int level);

/// M_p(r, f) or, with use_derivative, M_p(r, f').
double integral_mean(const PowerSeries& f, double r, double p, bool use_derivative,
                     const AngularOptions& opts = {});

/// max over the M-point circle grid of |g(r e^{i theta})|.
double circle_max(const PowerSeries& g, double r, std::size_t min_points = 0);

NormEstimate bloch_norm(const PowerSeries& f, const NormGrid& grid = {});
NormEstimate besov_norm(const PowerSeries& f, double p, const BesovOptions& opts = {});
NormEstimate mean_lipschitz_norm(const PowerSeries& f, double p, double alpha, const NormGrid& grid = {});

/// (r_j, (1 - r_j)^{1-alpha} M_p(r_j, f')) on the finest grid.
std::vector<ProfilePoint> mean_lipschitz_profile(const PowerSeries& f, double p, double alpha,
                                                 const NormGrid& grid = {});

/// sup over the ladder of |f(z)| / (||f||_{B_p} (log(2/(1-|z|^2)))^{1/q}), 1/p + 1/q = 1.
double growth_ratio(const PowerSeries& f, double p, std::span<const cplx> ladder,
                    const BesovOptions& opts = {});

}  // namespace cesaro
