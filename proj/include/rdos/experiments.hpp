#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rdos/config.hpp"
#include "rdos/metaatom.hpp"
#include "rdos/spectral_stats.hpp"
#include "rdos/thouless.hpp"

namespace rdos {

// Seed streams (rng.hpp derive_seed): 1 = convergence reference,
// 2+si then rep = convergence realisations, 3 = dos, 100+si = accuracy
// sweep sampler si, 200+si = hyperuniformity sampler si.

/// Full spectrum of the assembled system (symmetrised capacitance).
Spectrum direct_spectrum(const BlockSet& blocks, const BlockSequence& chi,
                         const EigOptions& opts = {});

/// Eigenvalues inside the open window only.
Spectrum direct_upper_spectrum(const BlockSet& blocks, const BlockSequence& chi,
                               Window window, const EigOptions& opts = {});

struct ConvergencePoint {
    std::size_t M = 0;
    double mean_wasserstein = 0.0;
    double standard_error = 0.0;
};

struct ConvergenceCurve {
    std::vector<ConvergencePoint> points;
    std::size_t reference_M = 0;
};

/// Mean Wasserstein distance of size-M eCDFs to one large reference
/// realisation, averaged over cfg.repetitions fresh realisations per size.
/// Realisations run concurrently; the aggregation order is fixed.
ConvergenceCurve run_convergence(const ExperimentConfig& cfg);

struct AccuracyPoint {
    std::string sampler;
    int L = 0;
    double wasserstein = 0.0;
};

/// Estimation error per (sampler, L) on one fixed-seed realisation per
/// sampler; P scales as floor(L/2).
std::vector<AccuracyPoint> run_accuracy_sweep(const ExperimentConfig& cfg);

struct DosResult {
    Spectrum upper;
    DensityEstimate density;
    std::vector<std::pair<std::string, double>> defect_modes;
    std::size_t total_resonators = 0;
};

/// Direct upper-window density of states with the defect-mode overlay for
/// meta-atoms up to the configured (L, P).
DosResult run_dos(const ExperimentConfig& cfg);

struct HyperuniformityCurve {
    std::string sampler;
    std::vector<double> k;
    std::vector<double> khat;
    std::vector<std::size_t> radii;
    std::vector<double> window_variance;
    double variance_slope = 0.0;
};

/// Structure factor and window-count variance per sampler (defaults: iid,
/// bound_length, chunk, softmax).
std::vector<HyperuniformityCurve> run_hyperuniformity(const ExperimentConfig& cfg);

/// Median wall-clock seconds of estimate_upper_spectrum over `runs` calls.
double time_estimation(const BlockSequence& chi, const DefectModeTable& table, int runs);

// CSV emitters (fixed headers, 17 significant digits, '\n' endings).
void write_sequence_csv(const std::string& path, const BlockSequence& chi);
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);
void write_estimated_csv(const std::string& path, const EstimatedSpectrum& est);
void write_cdf_csv(const std::string& path, const StepCDF& cdf);
void write_dos_csv(const std::string& path, const DensityEstimate& density);
void write_khat_csv(const std::string& path, const std::vector<double>& k,
                    const std::vector<double>& khat);
void write_bands_csv(const std::string& path, const BlockSet& blocks,
                     const std::vector<double>& lambdas);
void write_thouless_csv(const std::string& path, const ThoulessReport& report);
void write_convergence_csv(const std::string& path, const ConvergenceCurve& curve);
void write_accuracy_csv(const std::string& path, const std::vector<AccuracyPoint>& points);
void write_defect_modes_csv(const std::string& path,
                            const std::vector<std::pair<std::string, double>>& modes);

/// manifest.json: experiment name, seed, parameters, wall time, outputs.
void write_manifest(const std::string& path, const std::string& experiment,
                    std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& parameters,
                    double wall_seconds, const std::vector<std::string>& outputs);

} // namespace rdos
