#pragma once

#include <string>
#include <vector>

#include "rdos/geometry.hpp"

namespace rdos {

/// Real 2x2 matrix; propagation products are unimodular.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);

enum class SpectralRegion { SharedPassBand, Bandgap, Hybridisation };

std::string region_name(SpectralRegion region);

/// Sorted, disjoint closed pass-band intervals.
struct BandIntervals {
    std::vector<std::pair<double, double>> intervals;
};

/// Propagation matrix of one resonator-plus-spacing cell at frequency
/// lambda; determinant 1 by construction.
Mat2 propagation_matrix(double ell, double s, double v, double lambda);

/// Ordered product over the block's resonators, the first resonator acting
/// first (its matrix is right-most in the product).
Mat2 block_propagation(const Block& block, double lambda);

/// Same product over a whole assembled array.
Mat2 total_propagation(const ResonatorArray& array, double lambda);

/// |xi_2| = (|t| + sqrt(t^2 - 4)) / 2 for |t| > 2, else 1. Throws
/// std::invalid_argument when |det - 1| > 1e-10.
double larger_eigenvalue_modulus(const Mat2& m);

/// SharedPassBand iff every block passes (|tr| <= 2), Bandgap iff none
/// does, Hybridisation otherwise.
SpectralRegion classify_frequency(const BlockSet& blocks, double lambda);

/// Region per grid point; OpenMP over the grid, identical to the serial
/// reference for any thread count.
std::vector<SpectralRegion> classify_grid(const BlockSet& blocks,
                                          const std::vector<double>& lambdas);

/// Pass-band intervals of a block on [0, lambda_max]: sign changes of
/// |tr| - 2 on a uniform grid, refined by bisection to 1e-10.
BandIntervals band_intervals(const Block& block, double lambda_max,
                             int grid_points = 2000);

/// Maximal intervals on [0, lambda_max] classified Hybridisation, edges
/// refined like band_intervals. Natural defect-mode windows for block sets
/// other than the standard pair.
BandIntervals hybridisation_intervals(const BlockSet& blocks, double lambda_max,
                                      int grid_points = 2000);

namespace serial {
std::vector<SpectralRegion> classify_grid(const BlockSet& blocks,
                                          const std::vector<double>& lambdas);
} // namespace serial

} // namespace rdos
