#include "rdos/thouless.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rdos/spectral_stats.hpp"

namespace rdos {

namespace {

BandFunctions band_functions_impl(const ResonatorArray& array,
                                  std::span<const double> alphas, const EigOptions& opts,
                                  bool parallel) {
    BandFunctions out;
    out.alphas.assign(alphas.begin(), alphas.end());
    out.bands.resize(alphas.size());
    out.cell_length = total_length(array);
    const long n = static_cast<long>(alphas.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const HermitianPeriodicTridiagonal m =
            quasiperiodic_capacitance(array, alphas[ui]);
        out.bands[ui] = eig_hermitian_dense(m, opts).values;
    }
    const double tie_tol = 1e-12;
    for (const auto& band : out.bands) {
        for (std::size_t i = 0; i + 1 < band.size(); ++i) {
            if (band[i + 1] - band[i] < tie_tol * std::max(1.0, std::abs(band[i]))) {
                out.ties_found = true;
            }
        }
    }
    return out;
}

std::size_t find_alpha(const BandFunctions& bands, double alpha) {
    const double tol = 1e-9 * std::max(1.0, std::abs(alpha));
    for (std::size_t i = 0; i < bands.alphas.size(); ++i) {
        if (std::abs(bands.alphas[i] - alpha) <= tol) return i;
    }
    throw std::invalid_argument("level_shift: required quasimomentum missing from grid");
}

} // namespace

BandFunctions band_functions(const ResonatorArray& array, std::span<const double> alphas,
                             const EigOptions& opts) {
    return band_functions_impl(array, alphas, opts, true);
}

namespace serial {
BandFunctions band_functions(const ResonatorArray& array, std::span<const double> alphas,
                             const EigOptions& opts) {
    return band_functions_impl(array, alphas, opts, false);
}
} // namespace serial

std::vector<double> brillouin_grid(const ResonatorArray& array, std::size_t n) {
    if (n < 3) throw std::invalid_argument("brillouin_grid needs at least 3 points");
    if (n % 2 == 0) ++n; // keep 0 on the grid
    const double edge = M_PI / total_length(array);
    std::vector<double> alphas(n);
    for (std::size_t i = 0; i < n; ++i) {
        alphas[i] = -edge + 2.0 * edge * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    alphas[(n - 1) / 2] = 0.0;
    alphas.back() = edge;
    return alphas;
}

std::vector<double> level_shift(const BandFunctions& bands, ShiftMode mode) {
    if (bands.bands.empty()) throw std::invalid_argument("level_shift: empty band data");
    const std::size_t nbands = bands.bands.front().size();
    const double edge = M_PI / bands.cell_length;
    const std::size_t i0 = find_alpha(bands, 0.0);
    std::vector<double> shifts(nbands, 0.0);

    if (mode == ShiftMode::TwoPoint) {
        const std::size_t ipi = find_alpha(bands, edge);
        for (std::size_t b = 0; b < nbands; ++b) {
            shifts[b] = std::abs(bands.bands[ipi][b] - bands.bands[i0][b]);
        }
        return shifts;
    }

    if (bands.alphas.size() < 8) {
        throw std::invalid_argument("quadrature level_shift needs at least 8 grid points");
    }
    // trapezoid of |lambda_b(alpha) - lambda_b(0)| with the printed 1/(2 pi L)
    const double prefactor = 1.0 / (2.0 * M_PI * bands.cell_length);
    for (std::size_t b = 0; b < nbands; ++b) {
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < bands.alphas.size(); ++i) {
            const double f0 = std::abs(bands.bands[i][b] - bands.bands[i0][b]);
            const double f1 = std::abs(bands.bands[i + 1][b] - bands.bands[i0][b]);
            integral += 0.5 * (f0 + f1) * (bands.alphas[i + 1] - bands.alphas[i]);
        }
        shifts[b] = prefactor * integral;
    }
    return shifts;
}

ThoulessReport thouless_ratios(const Spectrum& spectrum, std::span<const double> shifts,
                               const ResonatorArray& array, double bandwidth,
                               ThoulessThresholds thresholds) {
    const std::size_t n = spectrum.size();
    if (shifts.size() != n) {
        throw std::invalid_argument("thouless_ratios: spectrum and shifts must align");
    }
    if (n == 0) return {};
    (void)array; // geometry enters through the band functions producing `shifts`

    ThoulessReport report;
    const std::span<const double> values{spectrum.values};
    report.bandwidth = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(values);
    const double range =
        spectrum.values.back() - spectrum.values.front();
    const double range_cap = range > 0.0 ? range : 1.0;

    report.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ThoulessEntry& e = report.entries[i];
        e.lambda = spectrum.values[i];
        e.delta_lambda = shifts[i];
        const double density = static_cast<double>(n) * kde_at(values, report.bandwidth, e.lambda);
        double spacing = density > 0.0 ? 1.0 / density : std::numeric_limits<double>::infinity();
        if (!(spacing <= range_cap)) {
            spacing = range_cap;
            e.spacing_capped = true;
        }
        e.spacing = spacing;
        e.g = e.delta_lambda / spacing;
        if (e.g < thresholds.localised) {
            e.tag = "localised";
        } else if (e.g > thresholds.delocalised) {
            e.tag = "delocalised";
        } else {
            e.tag = "intermediate";
        }
    }
    return report;
}

void annotate_regions(ThoulessReport& report, const BlockSet& blocks) {
    for (ThoulessEntry& e : report.entries) {
        e.region = classify_frequency(blocks, e.lambda);
    }
}

} // namespace rdos
