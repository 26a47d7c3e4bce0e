#pragma once

#include <span>
#include <string>
#include <vector>

#include "rdos/capacitance.hpp"
#include "rdos/eigensolver.hpp"
#include "rdos/geometry.hpp"
#include "rdos/propagation.hpp"

namespace rdos {

/// Band functions lambda_i(alpha) of the periodised array, matched across
/// alpha by sorted index (bands cannot cross; near-ties are flagged, never
/// reordered).
struct BandFunctions {
    std::vector<double> alphas;
    std::vector<std::vector<double>> bands; // bands[a][i], ascending in i
    double cell_length = 0.0;
    bool ties_found = false;
};

enum class ShiftMode { TwoPoint, Quadrature };

/// Eigenvalues of the quasiperiodic symmetrised capacitance matrix at each
/// alpha; parallel over alphas.
BandFunctions band_functions(const ResonatorArray& array, std::span<const double> alphas,
                             const EigOptions& opts = {});

/// Uniform grid of n alphas spanning [-pi/L, pi/L], always containing
/// -pi/L, 0 and pi/L (n odd is enforced).
std::vector<double> brillouin_grid(const ResonatorArray& array, std::size_t n);

/// TwoPoint: |lambda_i(pi/L) - lambda_i(0)| (requires both alphas present).
/// Quadrature: trapezoid of |lambda_i(alpha) - lambda_i(0)| over the grid
/// with the 1/(2 pi L) prefactor.
std::vector<double> level_shift(const BandFunctions& bands, ShiftMode mode);

struct ThoulessThresholds {
    double localised = 0.1;
    double delocalised = 0.5;
};

struct ThoulessEntry {
    double lambda = 0.0;
    double delta_lambda = 0.0;
    double spacing = 0.0;
    double g = 0.0;
    SpectralRegion region = SpectralRegion::SharedPassBand;
    std::string tag;
    bool spacing_capped = false;
};

struct ThoulessReport {
    std::vector<ThoulessEntry> entries;
    double bandwidth = 0.0;
};

/// g_i = delta_lambda_i / spacing_i with spacing_i = 1 / (N kde(lambda_i)).
/// bandwidth <= 0 selects the Silverman rule; a vanishing local density
/// caps the spacing at the spectral range (flagged). Regions are filled by
/// annotate_regions.
ThoulessReport thouless_ratios(const Spectrum& spectrum, std::span<const double> shifts,
                               const ResonatorArray& array, double bandwidth,
                               ThoulessThresholds thresholds = {});

/// Classifies each entry's frequency against the block set.
void annotate_regions(ThoulessReport& report, const BlockSet& blocks);

namespace serial {
BandFunctions band_functions(const ResonatorArray& array, std::span<const double> alphas,
                             const EigOptions& opts = {});
} // namespace serial

} // namespace rdos
