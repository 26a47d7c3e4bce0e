#include "rdos/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rdos {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

StepCDF from_sorted(std::vector<double> sorted, double point_mass) {
    StepCDF cdf;
    for (double x : sorted) {
        if (!cdf.support.empty() && x == cdf.support.back()) {
            cdf.mass.back() += point_mass;
        } else {
            cdf.support.push_back(x);
            cdf.mass.push_back(point_mass);
        }
        cdf.total += point_mass;
    }
    return cdf;
}

} // namespace

double StepCDF::value_at(double x) const {
    const auto it = std::upper_bound(support.begin(), support.end(), x);
    double cum = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(it - support.begin()); ++i) {
        cum += mass[i];
    }
    return cum;
}

StepCDF ecdf(const Spectrum& spectrum) {
    if (spectrum.values.empty()) {
        throw std::invalid_argument("ecdf of an empty spectrum");
    }
    std::vector<double> sorted = spectrum.values;
    std::sort(sorted.begin(), sorted.end());
    return from_sorted(std::move(sorted), 1.0 / static_cast<double>(spectrum.size()));
}

StepCDF make_step_cdf(std::span<const double> values, double point_mass) {
    if (!(point_mass > 0.0)) throw std::invalid_argument("point mass must be positive");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return from_sorted(std::move(sorted), point_mass);
}

namespace {

// Piecewise-constant |U - V| integrated across merged breakpoints in
// [lo, hi]. The running sums walk both supports once.
double l1_between(const StepCDF& u, const StepCDF& v, double lo, double hi) {
    std::size_t iu = 0, iv = 0;
    double cu = 0.0, cv = 0.0;
    // advance to lo
    while (iu < u.support.size() && u.support[iu] <= lo) cu += u.mass[iu++];
    while (iv < v.support.size() && v.support[iv] <= lo) cv += v.mass[iv++];
    double x = lo;
    double integral = 0.0;
    while (x < hi) {
        double next = hi;
        if (iu < u.support.size()) next = std::min(next, u.support[iu]);
        if (iv < v.support.size()) next = std::min(next, v.support[iv]);
        integral += std::abs(cu - cv) * (next - x);
        x = next;
        while (iu < u.support.size() && u.support[iu] <= x) cu += u.mass[iu++];
        while (iv < v.support.size() && v.support[iv] <= x) cv += v.mass[iv++];
    }
    return integral;
}

} // namespace

double wasserstein(const StepCDF& u, const StepCDF& v) {
    const double scale = std::max({1.0, u.total, v.total});
    if (std::abs(u.total - v.total) > 1e-9 * scale) {
        throw std::invalid_argument("wasserstein requires equal total masses");
    }
    if (u.support.empty() || v.support.empty()) return 0.0;
    const double lo = std::min(u.support.front(), v.support.front());
    const double hi = std::max(u.support.back(), v.support.back());
    // nudge the left edge so the first breakpoint masses are picked up inside
    return l1_between(u, v, lo - 1.0, hi);
}

double wasserstein_on_interval(const StepCDF& u, const StepCDF& v, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval");
    return l1_between(u, v, lo, hi);
}

double window_wasserstein_error(std::span<const double> direct,
                                std::span<const double> estimate, double window_lo,
                                double window_hi, std::size_t normaliser) {
    if (direct.empty() && estimate.empty()) return 0.0;
    if (normaliser == 0) throw std::invalid_argument("normaliser must be positive");
    const double mass = 1.0 / static_cast<double>(normaliser);
    const StepCDF u = make_step_cdf(direct, mass);
    const StepCDF v = make_step_cdf(estimate, mass);
    return wasserstein_on_interval(u, v, window_lo, window_hi);
}

double silverman_bandwidth(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n == 0) throw std::invalid_argument("empty sample");
    if (n == 1) return 1e-3;
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    double mean = 0.0;
    for (double x : sorted) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : sorted) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const auto i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        if (i + 1 >= n) return sorted[n - 1];
        return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
    };
    const double iqr = quantile(0.75) - quantile(0.25);

    const double spread = std::min(sd, iqr / 1.34);
    const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    if (!(h > 0.0) || !std::isfinite(h)) return 1e-3;
    return h;
}

double kde_at(std::span<const double> sample, double bandwidth, double x) {
    const double inv_h = 1.0 / bandwidth;
    double sum = 0.0;
    for (double xi : sample) {
        const double z = (x - xi) * inv_h;
        sum += std::exp(-0.5 * z * z);
    }
    return kInvSqrt2Pi * inv_h * sum / static_cast<double>(sample.size());
}

DensityEstimate kde(std::span<const double> sample, double bandwidth,
                    std::span<const double> grid) {
    if (sample.empty()) throw std::invalid_argument("kde of an empty sample");
    const double h = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(sample);
    DensityEstimate est;
    est.bandwidth = h;
    est.grid.assign(grid.begin(), grid.end());
    est.values.assign(grid.size(), 0.0);
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        est.values[static_cast<std::size_t>(i)] =
            kde_at(sample, h, grid[static_cast<std::size_t>(i)]);
    }
    return est;
}

std::vector<double> kde_grid(std::span<const double> sample, double bandwidth,
                             std::size_t points, double pad_bandwidths) {
    if (sample.empty() || points < 2) throw std::invalid_argument("kde_grid needs data");
    const auto [mn, mx] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *mn - pad_bandwidths * bandwidth;
    const double hi = *mx + pad_bandwidths * bandwidth;
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

namespace {

Autocovariance autocovariance_impl(const BlockSequence& chi, std::size_t r_max,
                                   bool parallel) {
    const std::size_t m = chi.size();
    if (m < 2 || r_max >= (m + 1) / 2) {
        throw std::invalid_argument("autocovariance needs r_max < M/2");
    }
    int max_symbol = 0;
    for (int s : chi.symbols) max_symbol = std::max(max_symbol, s);

    Autocovariance acf;
    acf.densities.assign(static_cast<std::size_t>(std::max(max_symbol, 1)), 0.0);
    for (int s : chi.symbols) acf.densities[static_cast<std::size_t>(s) - 1] += 1.0;
    for (double& p : acf.densities) p /= static_cast<double>(m);

    // indicator of symbol 1
    std::vector<char> one(m);
    for (std::size_t j = 0; j < m; ++j) one[j] = chi.symbols[j] == 1 ? 1 : 0;
    const double p1 = acf.densities[0];

    acf.values.assign(r_max + 1, 0.0);
    const long rmax = static_cast<long>(r_max);
#pragma omp parallel for schedule(static) if (parallel)
    for (long r = 0; r <= rmax; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        std::size_t hits = 0;
        for (std::size_t j = 0; j + ur < m; ++j) {
            hits += static_cast<std::size_t>(one[j] & one[j + ur]);
        }
        const double s2 = static_cast<double>(hits) / static_cast<double>(m - ur);
        acf.values[ur] = s2 - p1 * p1;
    }
    return acf;
}

} // namespace

Autocovariance autocovariance(const BlockSequence& chi, std::size_t r_max) {
    return autocovariance_impl(chi, r_max, true);
}

std::vector<double> structure_factor(const Autocovariance& acf,
                                     std::span<const double> k_grid, bool taper) {
    const std::size_t r_max = acf.values.empty() ? 0 : acf.values.size() - 1;
    std::vector<double> out(k_grid.size(), 0.0);
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        const double k = k_grid[i];
        double sum = acf.values.empty() ? 0.0 : acf.values[0];
        for (std::size_t r = 1; r <= r_max; ++r) {
            double w = 1.0;
            if (taper) {
                w = 0.5 * (1.0 + std::cos(M_PI * static_cast<double>(r) /
                                          static_cast<double>(r_max + 1)));
            }
            sum += 2.0 * w * acf.values[r] * std::cos(static_cast<double>(r) * k);
        }
        out[i] = sum;
    }
    return out;
}

std::vector<double> window_count_variance(const BlockSequence& chi, int symbol,
                                          std::span<const std::size_t> radii) {
    const std::size_t m = chi.size();
    std::vector<std::size_t> prefix(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        prefix[j + 1] = prefix[j] + (chi.symbols[j] == symbol ? 1 : 0);
    }
    std::vector<double> out;
    out.reserve(radii.size());
    for (std::size_t R : radii) {
        const std::size_t w = 2 * R + 1;
        if (w > m) throw std::invalid_argument("window larger than the sequence");
        const std::size_t count = m - w + 1;
        double mean = 0.0, ss = 0.0;
        for (std::size_t c = 0; c < count; ++c) {
            const auto x = static_cast<double>(prefix[c + w] - prefix[c]);
            const double d = x - mean;
            mean += d / static_cast<double>(c + 1);
            ss += d * (x - mean);
        }
        out.push_back(count > 1 ? ss / static_cast<double>(count - 1) : 0.0);
    }
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope needs matching samples");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace serial {

DensityEstimate kde(std::span<const double> sample, double bandwidth,
                    std::span<const double> grid) {
    if (sample.empty()) throw std::invalid_argument("kde of an empty sample");
    const double h = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(sample);
    DensityEstimate est;
    est.bandwidth = h;
    est.grid.assign(grid.begin(), grid.end());
    est.values.reserve(grid.size());
    for (double x : grid) est.values.push_back(kde_at(sample, h, x));
    return est;
}

Autocovariance autocovariance(const BlockSequence& chi, std::size_t r_max) {
    return autocovariance_impl(chi, r_max, false);
}

} // namespace serial

} // namespace rdos
