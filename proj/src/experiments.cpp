#include "rdos/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "rdos/csv.hpp"
#include "rdos/propagation.hpp"
#include "rdos/rng.hpp"

namespace rdos {

Spectrum direct_spectrum(const BlockSet& blocks, const BlockSequence& chi,
                         const EigOptions& opts) {
    return eig_sym_tridiag(symmetrized_capacitance(assemble(blocks, chi)), opts);
}

Spectrum direct_upper_spectrum(const BlockSet& blocks, const BlockSequence& chi,
                               Window window, const EigOptions& opts) {
    return eig_sym_tridiag_range(symmetrized_capacitance(assemble(blocks, chi)),
                                 window.lo, window.hi, opts);
}

ConvergenceCurve run_convergence(const ExperimentConfig& cfg) {
    std::vector<std::size_t> sizes = cfg.sizes;
    if (sizes.empty()) {
        for (std::size_t m = 16; m <= 1024; m *= 2) sizes.push_back(m);
    }

    const BlockSequence ref_seq =
        sample(cfg.sampling, cfg.reference_M, derive_seed(cfg.seed, 1));
    const StepCDF reference = ecdf(direct_spectrum(cfg.blocks, ref_seq));

    ConvergenceCurve curve;
    curve.reference_M = cfg.reference_M;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::uint64_t size_seed = derive_seed(cfg.seed, 2 + si);
        std::vector<double> distances(cfg.repetitions, 0.0);
        const long reps = static_cast<long>(cfg.repetitions);
#pragma omp parallel for schedule(dynamic)
        for (long r = 0; r < reps; ++r) {
            const BlockSequence seq =
                sample(cfg.sampling, sizes[si],
                       derive_seed(size_seed, static_cast<std::uint64_t>(r)));
            const StepCDF cdf = ecdf(direct_spectrum(cfg.blocks, seq));
            distances[static_cast<std::size_t>(r)] = wasserstein(cdf, reference);
        }
        double mean = 0.0;
        for (double d : distances) mean += d;
        mean /= static_cast<double>(distances.size());
        double ss = 0.0;
        for (double d : distances) ss += (d - mean) * (d - mean);
        const double stderr_ =
            distances.size() > 1
                ? std::sqrt(ss / static_cast<double>(distances.size() - 1)) /
                      std::sqrt(static_cast<double>(distances.size()))
                : 0.0;
        curve.points.push_back({sizes[si], mean, stderr_});
    }
    return curve;
}

std::vector<AccuracyPoint> run_accuracy_sweep(const ExperimentConfig& cfg) {
    const std::vector<SamplerSpec> samplers =
        cfg.samplers.empty() ? default_comparison_samplers() : cfg.samplers;
    std::vector<int> sweep = cfg.sweep_L;
    if (sweep.empty()) sweep = {3, 4, 5, 6, 7, 8, 9};

    std::vector<AccuracyPoint> out;
    for (std::size_t si = 0; si < samplers.size(); ++si) {
        const BlockSequence chi =
            sample(samplers[si], cfg.M, derive_seed(cfg.seed, 100 + si));
        const ResonatorArray array = assemble(cfg.blocks, chi);
        const Spectrum direct = eig_sym_tridiag_range(symmetrized_capacitance(array),
                                                      cfg.window.lo, cfg.window.hi);
        for (int L : sweep) {
            const DefectModeTable table =
                build_table(L, L / 2, cfg.R, cfg.blocks, cfg.window);
            const EstimatedSpectrum est = estimate_upper_spectrum(chi, table);
            const double err =
                window_wasserstein_error(direct.values, est.values, cfg.window.lo,
                                         cfg.window.hi, array.size());
            out.push_back({sampler_name(samplers[si].kind), L, err});
        }
    }
    return out;
}

DosResult run_dos(const ExperimentConfig& cfg) {
    const BlockSequence chi = sample(cfg.sampling, cfg.M, derive_seed(cfg.seed, 3));
    const ResonatorArray array = assemble(cfg.blocks, chi);

    DosResult result;
    result.total_resonators = array.size();
    result.upper = eig_sym_tridiag_range(symmetrized_capacitance(array), cfg.window.lo,
                                         cfg.window.hi);
    if (result.upper.values.empty()) return result;

    const std::span<const double> values{result.upper.values};
    const double h = cfg.bandwidth > 0.0 ? cfg.bandwidth : silverman_bandwidth(values);
    const std::vector<double> grid = kde_grid(values, h, cfg.dos_grid);
    result.density = kde(values, h, grid);

    const int P = cfg.P >= 0 ? cfg.P : cfg.L / 2;
    const DefectModeTable table = build_table(cfg.L, P, cfg.R, cfg.blocks, cfg.window);
    for (const auto& entry : table.entries()) {
        std::string name;
        for (int sym : entry.atom.symbols) name += static_cast<char>('0' + sym);
        for (double mode : entry.modes) result.defect_modes.emplace_back(name, mode);
    }
    return result;
}

std::vector<HyperuniformityCurve> run_hyperuniformity(const ExperimentConfig& cfg) {
    std::vector<SamplerSpec> samplers = cfg.samplers;
    if (samplers.empty()) {
        samplers = default_comparison_samplers();
        samplers.pop_back(); // fibonacci: deterministic, not part of the default set
    }

    std::vector<HyperuniformityCurve> out;
    for (std::size_t si = 0; si < samplers.size(); ++si) {
        HyperuniformityCurve curve;
        curve.sampler = sampler_name(samplers[si].kind);
        const BlockSequence chi =
            sample(samplers[si], cfg.M, derive_seed(cfg.seed, 200 + si));

        const Autocovariance acf = autocovariance(chi, cfg.r_max);
        curve.k.resize(cfg.k_points);
        for (std::size_t i = 0; i < cfg.k_points; ++i) {
            curve.k[i] = 2.0 * M_PI * static_cast<double>(i + 1) /
                         static_cast<double>(cfg.k_points);
        }
        curve.khat = structure_factor(acf, curve.k);

        curve.radii = {16, 32, 64, 128, 256, 512, 1024};
        while (!curve.radii.empty() && 2 * curve.radii.back() + 1 > chi.size()) {
            curve.radii.pop_back();
        }
        curve.window_variance =
            window_count_variance(chi, 2, std::span<const std::size_t>{curve.radii});
        std::vector<double> rd(curve.radii.begin(), curve.radii.end());
        curve.variance_slope = loglog_slope(rd, curve.window_variance);
        out.push_back(std::move(curve));
    }
    return out;
}

double time_estimation(const BlockSequence& chi, const DefectModeTable& table, int runs) {
    using clock = std::chrono::steady_clock;
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(std::max(runs, 1)));
    volatile double sink = 0.0;
    for (int i = 0; i < std::max(runs, 1); ++i) {
        const auto t0 = clock::now();
        const EstimatedSpectrum est = estimate_upper_spectrum(chi, table);
        const auto t1 = clock::now();
        if (!est.values.empty()) sink = sink + est.values.front();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void write_sequence_csv(const std::string& path, const BlockSequence& chi) {
    CsvWriter csv(path, {"index", "symbol"});
    for (std::size_t i = 0; i < chi.size(); ++i) {
        csv.field(static_cast<std::uint64_t>(i))
            .field(static_cast<std::uint64_t>(chi.symbols[i]));
        csv.end_row();
    }
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
    CsvWriter csv(path, {"index", "lambda"});
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        csv.field(static_cast<std::uint64_t>(i)).field(spectrum.values[i]);
        csv.end_row();
    }
}

void write_estimated_csv(const std::string& path, const EstimatedSpectrum& est) {
    CsvWriter csv(path, {"index", "lambda"});
    for (std::size_t i = 0; i < est.size(); ++i) {
        csv.field(static_cast<std::uint64_t>(i)).field(est.values[i]);
        csv.end_row();
    }
}

void write_cdf_csv(const std::string& path, const StepCDF& cdf) {
    CsvWriter csv(path, {"lambda", "cdf"});
    double cum = 0.0;
    for (std::size_t i = 0; i < cdf.support.size(); ++i) {
        cum += cdf.mass[i];
        csv.field(cdf.support[i]).field(cum);
        csv.end_row();
    }
}

void write_dos_csv(const std::string& path, const DensityEstimate& density) {
    CsvWriter csv(path, {"lambda", "density"});
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        csv.field(density.grid[i]).field(density.values[i]);
        csv.end_row();
    }
}

void write_khat_csv(const std::string& path, const std::vector<double>& k,
                    const std::vector<double>& khat) {
    CsvWriter csv(path, {"k", "khat"});
    for (std::size_t i = 0; i < k.size(); ++i) {
        csv.field(k[i]).field(khat[i]);
        csv.end_row();
    }
}

void write_bands_csv(const std::string& path, const BlockSet& blocks,
                     const std::vector<double>& lambdas) {
    std::vector<std::string> header{"lambda"};
    for (std::size_t d = 1; d <= blocks.count(); ++d) {
        header.push_back("abs_trace_block_" + std::to_string(d));
    }
    header.push_back("region");
    const std::vector<SpectralRegion> regions = classify_grid(blocks, lambdas);
    CsvWriter csv(path, header);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        csv.field(lambdas[i]);
        for (const Block& b : blocks.blocks) {
            csv.field(std::abs(block_propagation(b, lambdas[i]).trace()));
        }
        csv.field(region_name(regions[i]));
        csv.end_row();
    }
}

void write_thouless_csv(const std::string& path, const ThoulessReport& report) {
    CsvWriter csv(path, {"lambda", "delta_lambda", "spacing", "g", "region", "tag"});
    for (const ThoulessEntry& e : report.entries) {
        csv.field(e.lambda)
            .field(e.delta_lambda)
            .field(e.spacing)
            .field(e.g)
            .field(region_name(e.region))
            .field(e.tag);
        csv.end_row();
    }
}

void write_convergence_csv(const std::string& path, const ConvergenceCurve& curve) {
    CsvWriter csv(path, {"M", "mean_wasserstein", "stderr"});
    for (const ConvergencePoint& p : curve.points) {
        csv.field(static_cast<std::uint64_t>(p.M))
            .field(p.mean_wasserstein)
            .field(p.standard_error);
        csv.end_row();
    }
}

void write_accuracy_csv(const std::string& path, const std::vector<AccuracyPoint>& points) {
    CsvWriter csv(path, {"sampler", "L", "wasserstein"});
    for (const AccuracyPoint& p : points) {
        csv.field(p.sampler).field(static_cast<std::uint64_t>(p.L)).field(p.wasserstein);
        csv.end_row();
    }
}

void write_defect_modes_csv(const std::string& path,
                            const std::vector<std::pair<std::string, double>>& modes) {
    CsvWriter csv(path, {"meta_atom", "lambda"});
    for (const auto& [name, mode] : modes) {
        csv.field(name).field(mode);
        csv.end_row();
    }
}

void write_manifest(const std::string& path, const std::string& experiment,
                    std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& parameters,
                    double wall_seconds, const std::vector<std::string>& outputs) {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : parameters) params[key] = value;
    j["parameters"] = params;
    j["wall_time_seconds"] = wall_seconds;
    j["outputs"] = outputs;
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << '\n';
}

} // namespace rdos
