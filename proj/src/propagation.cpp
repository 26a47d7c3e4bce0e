#include "rdos/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace rdos {

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    return Mat2{lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

std::string region_name(SpectralRegion region) {
    switch (region) {
        case SpectralRegion::SharedPassBand: return "shared";
        case SpectralRegion::Bandgap: return "gap";
        case SpectralRegion::Hybridisation: return "hybridisation";
    }
    return "unknown";
}

Mat2 propagation_matrix(double ell, double s, double v, double lambda) {
    const double w = ell / (v * v) * lambda;
    return Mat2{1.0 - s * w, s, -w, 1.0};
}

Mat2 block_propagation(const Block& block, double lambda) {
    Mat2 p;
    for (std::size_t k = 0; k < block.size(); ++k) {
        p = propagation_matrix(block.lengths[k], block.spacings[k], block.speeds[k],
                               lambda) *
            p;
    }
    return p;
}

Mat2 total_propagation(const ResonatorArray& array, double lambda) {
    Mat2 p;
    for (std::size_t i = 0; i < array.size(); ++i) {
        p = propagation_matrix(array.lengths[i], array.spacings[i], array.speeds[i],
                               lambda) *
            p;
    }
    return p;
}

double larger_eigenvalue_modulus(const Mat2& m) {
    if (std::abs(m.det() - 1.0) > 1e-10) {
        throw std::invalid_argument("larger_eigenvalue_modulus expects a unimodular matrix");
    }
    const double t = std::abs(m.trace());
    if (t <= 2.0) return 1.0;
    return 0.5 * (t + std::sqrt(t * t - 4.0));
}

SpectralRegion classify_frequency(const BlockSet& blocks, double lambda) {
    bool all_pass = true, all_gap = true;
    for (const Block& b : blocks.blocks) {
        const double t = std::abs(block_propagation(b, lambda).trace());
        if (t > 2.0) {
            all_pass = false;
        } else {
            all_gap = false;
        }
    }
    if (all_pass) return SpectralRegion::SharedPassBand;
    if (all_gap) return SpectralRegion::Bandgap;
    return SpectralRegion::Hybridisation;
}

std::vector<SpectralRegion> classify_grid(const BlockSet& blocks,
                                          const std::vector<double>& lambdas) {
    std::vector<SpectralRegion> out(lambdas.size());
    const long n = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            classify_frequency(blocks, lambdas[static_cast<std::size_t>(i)]);
    }
    return out;
}

namespace serial {

std::vector<SpectralRegion> classify_grid(const BlockSet& blocks,
                                          const std::vector<double>& lambdas) {
    std::vector<SpectralRegion> out(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        out[i] = classify_frequency(blocks, lambdas[i]);
    }
    return out;
}

} // namespace serial

BandIntervals hybridisation_intervals(const BlockSet& blocks, double lambda_max,
                                      int grid_points) {
    if (!(lambda_max > 0.0) || grid_points < 2) {
        throw std::invalid_argument(
            "hybridisation_intervals needs lambda_max > 0 and >= 2 grid points");
    }
    auto inside = [&](double lambda) {
        return classify_frequency(blocks, lambda) == SpectralRegion::Hybridisation;
    };
    auto refine = [&](double lo, double hi) {
        bool in_lo = inside(lo);
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (inside(mid) == in_lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    BandIntervals bands;
    const double step = lambda_max / static_cast<double>(grid_points - 1);
    bool in_band = inside(0.0);
    double start = 0.0;
    for (int i = 1; i < grid_points; ++i) {
        const double x = static_cast<double>(i) * step;
        const bool hit = inside(x);
        if (hit == in_band) continue;
        const double edge = refine(x - step, x);
        if (in_band) {
            bands.intervals.emplace_back(start, edge);
        } else {
            start = edge;
        }
        in_band = hit;
    }
    if (in_band) bands.intervals.emplace_back(start, lambda_max);
    return bands;
}

BandIntervals band_intervals(const Block& block, double lambda_max, int grid_points) {
    if (!(lambda_max > 0.0) || grid_points < 2) {
        throw std::invalid_argument("band_intervals needs lambda_max > 0 and >= 2 grid points");
    }
    auto excess = [&](double lambda) {
        return std::abs(block_propagation(block, lambda).trace()) - 2.0;
    };
    auto refine = [&](double lo, double hi) {
        // sign change bracketed in [lo, hi]; 60 halvings reach ~1e-10 easily
        double flo = excess(lo);
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = excess(mid);
            if ((flo <= 0.0) == (fmid <= 0.0)) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    BandIntervals bands;
    const double step = lambda_max / static_cast<double>(grid_points - 1);
    bool in_band = excess(0.0) <= 0.0;
    double start = 0.0;
    for (int i = 1; i < grid_points; ++i) {
        const double x = static_cast<double>(i) * step;
        const bool pass = excess(x) <= 0.0;
        if (pass == in_band) continue;
        const double edge = refine(x - step, x);
        if (in_band) {
            bands.intervals.emplace_back(start, edge);
        } else {
            start = edge;
        }
        in_band = pass;
    }
    if (in_band) bands.intervals.emplace_back(start, lambda_max);
    return bands;
}

} // namespace rdos
