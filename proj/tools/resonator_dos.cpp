// Command-line front end: sampling, spectra, band classification, density
// of states, meta-atom estimation, Thouless analysis and the comparison
// experiments, all driven by one JSON config.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rdos/csv.hpp"
#include "rdos/experiments.hpp"
#include "rdos/parallel.hpp"
#include "rdos/rng.hpp"

namespace {

using namespace rdos;

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> M;
    int threads = 0;
    int verbosity = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config JSON");
    cmd->add_option("--output-dir", args.output_dir, "directory for CSV outputs");
    cmd->add_option("--seed", args.seed, "seed override");
    cmd->add_option("--M", args.M, "number of sampled blocks");
    cmd->add_option("--threads", args.threads, "worker thread cap");
    cmd->add_flag("-v,--verbose", args.verbosity, "verbose progress on stderr");
}

ExperimentConfig resolve(const CommonArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        cfg = load_experiment_config(args.config_path);
    } else {
        cfg.blocks = make_standard_blocks();
        cfg.sampling.kind = SamplerKind::Iid;
        cfg.sampling.probs = {0.5, 0.5};
    }
    if (args.seed) cfg.seed = *args.seed;
    if (args.M) cfg.M = *args.M;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    configure_threads(args.threads);
    std::filesystem::create_directories(cfg.output_dir);
    return cfg;
}

std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note(const CommonArgs& args, const std::string& message) {
    if (args.verbosity > 0) std::cerr << message << '\n';
}

int cmd_sample(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    const BlockSequence chi = sample(cfg.sampling, cfg.M, cfg.seed);
    const std::string out = join(cfg.output_dir, "sample.csv");
    write_sequence_csv(out, chi);
    write_manifest(join(cfg.output_dir, "manifest.json"), "sample", cfg.seed,
                   {{"sampler", sampler_name(cfg.sampling.kind)},
                    {"M", std::to_string(cfg.M)}},
                   watch.seconds(), {out});
    return 0;
}

int cmd_spectrum(const CommonArgs& args, const std::string& dump_matrix) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    const BlockSequence chi = sample(cfg.sampling, cfg.M, cfg.seed);
    const ResonatorArray array = assemble(cfg.blocks, chi);
    const SymTridiagonal matrix = symmetrized_capacitance(array);
    if (!dump_matrix.empty()) {
        std::ofstream out(dump_matrix, std::ios::binary);
        write_triplets(out, matrix);
    }
    const Spectrum spectrum = eig_sym_tridiag(matrix);
    const std::string out = join(cfg.output_dir, "spectrum.csv");
    write_spectrum_csv(out, spectrum);
    write_manifest(join(cfg.output_dir, "manifest.json"), "spectrum", cfg.seed,
                   {{"sampler", sampler_name(cfg.sampling.kind)},
                    {"M", std::to_string(cfg.M)},
                    {"N", std::to_string(array.size())}},
                   watch.seconds(), {out});
    return 0;
}

int cmd_bands(const CommonArgs& args, double lambda_max_flag) {
    Stopwatch watch;
    ExperimentConfig cfg = resolve(args);
    if (lambda_max_flag > 0.0) cfg.lambda_max = lambda_max_flag;
    std::vector<double> lambdas(static_cast<std::size_t>(cfg.grid_points));
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        lambdas[i] = cfg.lambda_max * static_cast<double>(i) /
                     static_cast<double>(lambdas.size() - 1);
    }
    const std::string out = join(cfg.output_dir, "bands.csv");
    write_bands_csv(out, cfg.blocks, lambdas);
    write_manifest(join(cfg.output_dir, "manifest.json"), "bands", cfg.seed,
                   {{"lambda_max", format_double(cfg.lambda_max)},
                    {"grid_points", std::to_string(cfg.grid_points)}},
                   watch.seconds(), {out});
    return 0;
}

int cmd_dos(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    note(args, "dos: sampling M=" + std::to_string(cfg.M) + " and solving the window");
    const DosResult result = run_dos(cfg);
    const std::string dos_path = join(cfg.output_dir, "dos.csv");
    const std::string cdf_path = join(cfg.output_dir, "cdf.csv");
    const std::string modes_path = join(cfg.output_dir, "defect_modes.csv");
    write_dos_csv(dos_path, result.density);
    if (!result.upper.values.empty()) {
        write_cdf_csv(cdf_path, ecdf(result.upper));
    } else {
        CsvWriter empty(cdf_path, {"lambda", "cdf"});
    }
    write_defect_modes_csv(modes_path, result.defect_modes);
    write_manifest(join(cfg.output_dir, "manifest.json"), "dos", cfg.seed,
                   {{"M", std::to_string(cfg.M)},
                    {"upper_modes", std::to_string(result.upper.size())},
                    {"bandwidth", format_double(result.density.bandwidth)}},
                   watch.seconds(), {dos_path, cdf_path, modes_path});
    return 0;
}

int cmd_meta_atom(const CommonArgs& args, int L, int P, int R, double window_lo,
                  double window_hi, bool compare_direct) {
    Stopwatch watch;
    ExperimentConfig cfg = resolve(args);
    if (L > 0) cfg.L = L;
    if (P >= 0) cfg.P = P;
    if (R >= 0) cfg.R = R;
    if (window_lo < window_hi) cfg.window = Window{window_lo, window_hi};
    const int p_eff = cfg.P >= 0 ? cfg.P : cfg.L / 2;

    const BlockSequence chi = sample(cfg.sampling, cfg.M, cfg.seed);
    const DefectModeTable table = build_table(cfg.L, p_eff, cfg.R, cfg.blocks, cfg.window);
    const EstimatedSpectrum est = estimate_upper_spectrum(chi, table);
    const std::string out = join(cfg.output_dir, "estimated_spectrum.csv");
    write_estimated_csv(out, est);

    std::vector<std::pair<std::string, std::string>> params{
        {"M", std::to_string(cfg.M)},       {"L", std::to_string(cfg.L)},
        {"P", std::to_string(p_eff)},       {"R", std::to_string(cfg.R)},
        {"window_lo", format_double(cfg.window.lo)},
        {"window_hi", format_double(cfg.window.hi)}};
    if (compare_direct) {
        const ResonatorArray array = assemble(cfg.blocks, chi);
        const Spectrum direct = eig_sym_tridiag_range(symmetrized_capacitance(array),
                                                      cfg.window.lo, cfg.window.hi);
        const double err = window_wasserstein_error(
            direct.values, est.values, cfg.window.lo, cfg.window.hi, array.size());
        std::printf("wasserstein_error=%.17g\n", err);
        params.emplace_back("wasserstein_error", format_double(err));
    }
    write_manifest(join(cfg.output_dir, "manifest.json"), "meta-atom", cfg.seed, params,
                   watch.seconds(), {out});
    return 0;
}

int cmd_thouless(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    const BlockSequence chi = sample(cfg.sampling, cfg.M, cfg.seed);
    const ResonatorArray array = assemble(cfg.blocks, chi);

    const Spectrum spectrum = eig_sym_tridiag(symmetrized_capacitance(array));
    const double edge = M_PI / total_length(array);
    const std::vector<double> alphas{0.0, edge};
    const BandFunctions bands = band_functions(array, alphas);
    const std::vector<double> shifts = level_shift(bands, ShiftMode::TwoPoint);
    ThoulessReport report = thouless_ratios(spectrum, shifts, array, cfg.bandwidth);
    annotate_regions(report, cfg.blocks);

    const std::string out = join(cfg.output_dir, "thouless.csv");
    write_thouless_csv(out, report);
    write_manifest(join(cfg.output_dir, "manifest.json"), "thouless", cfg.seed,
                   {{"M", std::to_string(cfg.M)},
                    {"N", std::to_string(array.size())},
                    {"bandwidth", format_double(report.bandwidth)}},
                   watch.seconds(), {out});
    return 0;
}

int cmd_converge(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    note(args, "converge: reference M=" + std::to_string(cfg.reference_M));
    const ConvergenceCurve curve = run_convergence(cfg);
    const std::string out = join(cfg.output_dir, "convergence.csv");
    write_convergence_csv(out, curve);
    write_manifest(join(cfg.output_dir, "manifest.json"), "converge", cfg.seed,
                   {{"reference_M", std::to_string(cfg.reference_M)},
                    {"repetitions", std::to_string(cfg.repetitions)}},
                   watch.seconds(), {out});
    return 0;
}

int cmd_hyperuniform(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    const std::vector<HyperuniformityCurve> curves = run_hyperuniformity(cfg);
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const HyperuniformityCurve& c = curves[i];
        const std::string path =
            join(cfg.output_dir, i == 0 ? "khat.csv" : "khat_" + c.sampler + ".csv");
        write_khat_csv(path, c.k, c.khat);
        outputs.push_back(path);
    }
    const std::string wv_path = join(cfg.output_dir, "window_variance.csv");
    {
        CsvWriter csv(wv_path, {"sampler", "radius", "variance", "slope"});
        for (const HyperuniformityCurve& c : curves) {
            for (std::size_t i = 0; i < c.radii.size(); ++i) {
                csv.field(c.sampler)
                    .field(static_cast<std::uint64_t>(c.radii[i]))
                    .field(c.window_variance[i])
                    .field(c.variance_slope);
                csv.end_row();
            }
        }
    }
    outputs.push_back(wv_path);
    write_manifest(join(cfg.output_dir, "manifest.json"), "hyperuniform", cfg.seed,
                   {{"M", std::to_string(cfg.M)},
                    {"r_max", std::to_string(cfg.r_max)},
                    {"k_points", std::to_string(cfg.k_points)}},
                   watch.seconds(), outputs);
    return 0;
}

int cmd_accuracy_sweep(const CommonArgs& args) {
    Stopwatch watch;
    const ExperimentConfig cfg = resolve(args);
    const std::vector<AccuracyPoint> points = run_accuracy_sweep(cfg);
    const std::string out = join(cfg.output_dir, "accuracy_sweep.csv");
    write_accuracy_csv(out, points);
    write_manifest(join(cfg.output_dir, "manifest.json"), "accuracy-sweep", cfg.seed,
                   {{"M", std::to_string(cfg.M)}, {"R", std::to_string(cfg.R)}},
                   watch.seconds(), {out});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-disordered subwavelength resonator spectra"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string dump_matrix;
    double lambda_max = 0.0;
    int L = 0, P = -1, R = -1;
    double window_lo = 0.0, window_hi = 0.0;
    bool compare_direct = false;

    CLI::App* c_sample = app.add_subcommand("sample", "emit a block sequence");
    add_common(c_sample, args);
    CLI::App* c_spectrum = app.add_subcommand("spectrum", "eigenvalues of a sampled system");
    add_common(c_spectrum, args);
    c_spectrum->add_option("--dump-matrix", dump_matrix,
                           "write the symmetrised capacitance matrix as row,col,value");
    CLI::App* c_bands = app.add_subcommand("bands", "pass band / gap classification grid");
    add_common(c_bands, args);
    c_bands->add_option("--lambda-max", lambda_max, "upper end of the frequency grid");
    CLI::App* c_dos = app.add_subcommand("dos", "density of states with defect overlays");
    add_common(c_dos, args);
    CLI::App* c_meta = app.add_subcommand("meta-atom", "fast upper-spectrum estimate");
    add_common(c_meta, args);
    c_meta->add_option("--L", L, "maximal meta-atom length");
    c_meta->add_option("--P", P, "maximal singles per meta-atom");
    c_meta->add_option("--R", R, "padding singles per side");
    c_meta->add_option("--window-lo", window_lo, "window lower edge");
    c_meta->add_option("--window-hi", window_hi, "window upper edge");
    c_meta->add_flag("--compare-direct", compare_direct,
                     "also solve directly and print the Wasserstein error");
    CLI::App* c_thouless = app.add_subcommand("thouless", "localisation report");
    add_common(c_thouless, args);
    CLI::App* c_converge = app.add_subcommand("converge", "eCDF convergence experiment");
    add_common(c_converge, args);
    CLI::App* c_hyper = app.add_subcommand("hyperuniform", "structure factor comparison");
    add_common(c_hyper, args);
    CLI::App* c_sweep = app.add_subcommand("accuracy-sweep", "estimation error vs L");
    add_common(c_sweep, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (c_sample->parsed()) return cmd_sample(args);
        if (c_spectrum->parsed()) return cmd_spectrum(args, dump_matrix);
        if (c_bands->parsed()) return cmd_bands(args, lambda_max);
        if (c_dos->parsed()) return cmd_dos(args);
        if (c_meta->parsed()) {
            return cmd_meta_atom(args, L, P, R, window_lo, window_hi, compare_direct);
        }
        if (c_thouless->parsed()) return cmd_thouless(args);
        if (c_converge->parsed()) return cmd_converge(args);
        if (c_hyper->parsed()) return cmd_hyperuniform(args);
        if (c_sweep->parsed()) return cmd_accuracy_sweep(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
