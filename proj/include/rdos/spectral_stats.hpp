#pragma once

#include <span>
#include <vector>

#include "rdos/capacitance.hpp"
#include "rdos/geometry.hpp"

namespace rdos {

/// Exact step CDF: strictly increasing support with positive point masses.
/// total need not be 1; unnormalised CDFs share a caller-chosen normaliser.
struct StepCDF {
    std::vector<double> support;
    std::vector<double> mass;
    double total = 0.0;

    /// CDF value just right of x.
    double value_at(double x) const;
};

/// Equal mass 1/N per eigenvalue, duplicates merged.
StepCDF ecdf(const Spectrum& spectrum);

/// Step CDF from (not necessarily sorted) values with a fixed mass per
/// point; duplicates merged.
StepCDF make_step_cdf(std::span<const double> values, double point_mass);

/// Exact l1 distance between the CDFs, integrated over the whole line.
/// Requires equal totals (within 1e-9), throws otherwise.
double wasserstein(const StepCDF& u, const StepCDF& v);

/// Same integral truncated to [lo, hi]; no total-mass requirement, so
/// sub-probability CDFs with a common normaliser can be compared.
double wasserstein_on_interval(const StepCDF& u, const StepCDF& v, double lo, double hi);

/// l1 distance over the window between the two spectra's CDFs, both
/// normalised by the same count (typically the resonator count N of the
/// direct system). Zero when both sets are empty.
double window_wasserstein_error(std::span<const double> direct,
                                std::span<const double> estimate, double window_lo,
                                double window_hi, std::size_t normaliser);

/// Gaussian kernel density estimate evaluated on a grid.
struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> values;
    double bandwidth = 0.0;
};

/// 0.9 min(sd, IQR/1.34) N^{-1/5}; falls back to 1e-3 for degenerate
/// samples.
double silverman_bandwidth(std::span<const double> sample);

/// Pointwise density (1/(N h)) sum phi((x - x_i)/h).
double kde_at(std::span<const double> sample, double bandwidth, double x);

/// bandwidth <= 0 selects the Silverman rule. OpenMP over the grid.
DensityEstimate kde(std::span<const double> sample, double bandwidth,
                    std::span<const double> grid);

/// Uniform grid padded by pad_bandwidths * h beyond the sample range.
std::vector<double> kde_grid(std::span<const double> sample, double bandwidth,
                             std::size_t points, double pad_bandwidths = 5.0);

/// Empirical symbol-1 autocovariance of a two-symbol sequence at lags
/// 0..r_max: K(r) = S2(r) - p1^2 with S2 the fraction of positions j with
/// chi_j = chi_{j+r} = 1.
struct Autocovariance {
    std::vector<double> values; // index = lag
    std::vector<double> densities; // empirical p_d, d = 1..D
};

Autocovariance autocovariance(const BlockSequence& chi, std::size_t r_max);

/// Truncated symmetric Fourier sum K(0) + 2 sum_r K(r) cos(r k); the
/// optional Hann lag taper is off by default.
std::vector<double> structure_factor(const Autocovariance& acf,
                                     std::span<const double> k_grid,
                                     bool taper = false);

/// Variance over all centred sliding windows of radius R of the count of
/// `symbol`, one entry per radius. Sublinear growth in R is the
/// hyperuniformity diagnostic.
std::vector<double> window_count_variance(const BlockSequence& chi, int symbol,
                                          std::span<const std::size_t> radii);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

namespace serial {
DensityEstimate kde(std::span<const double> sample, double bandwidth,
                    std::span<const double> grid);
Autocovariance autocovariance(const BlockSequence& chi, std::size_t r_max);
} // namespace serial

} // namespace rdos
