// Serial vs OpenMP timings for the hot kernels. Each kernel's parallel
// version must agree with its serial reference; speedups are printed per
// kernel.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "rdos/eigensolver.hpp"
#include "rdos/experiments.hpp"
#include "rdos/parallel.hpp"
#include "rdos/propagation.hpp"
#include "rdos/rng.hpp"
#include "rdos/sampling.hpp"
#include "rdos/spectral_stats.hpp"
#include "rdos/thouless.hpp"

namespace {

using namespace rdos;

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
    return best;
}

void report(const char* name, double serial, double parallel, double max_diff) {
    std::printf("%-28s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  max|diff| %.3g\n",
                name, serial, parallel, serial / parallel, max_diff);
}

} // namespace

int main(int argc, char** argv) {
    int threads = 0;
    if (argc > 1) threads = std::atoi(argv[1]);
    configure_threads(threads);
    std::printf("threads: %d\n", max_threads());

    const BlockSet blocks = make_standard_blocks();
    SamplerSpec iid;
    iid.kind = SamplerKind::Iid;
    iid.probs = {0.5, 0.5};

    { // tridiagonal eigensolver
        const BlockSequence chi = sample_iid(iid, 4000, 7);
        const SymTridiagonal m = symmetrized_capacitance(assemble(blocks, chi));
        Spectrum s_serial, s_parallel;
        const double ts = best_of(3, [&] { s_serial = serial::eig_sym_tridiag(m); });
        const double tp = best_of(3, [&] { s_parallel = eig_sym_tridiag(m); });
        double diff = 0.0;
        for (std::size_t i = 0; i < s_serial.size(); ++i) {
            diff = std::max(diff, std::abs(s_serial.values[i] - s_parallel.values[i]));
        }
        report("eig_sym_tridiag (N=6000)", ts, tp, diff);
    }

    { // kernel density estimate
        const BlockSequence chi = sample_iid(iid, 20000, 11);
        const Spectrum upper = direct_upper_spectrum(blocks, chi, Window{2.0, 3.0});
        const std::span<const double> values{upper.values};
        const double h = silverman_bandwidth(values);
        const std::vector<double> grid = kde_grid(values, h, 4096);
        DensityEstimate d_serial, d_parallel;
        const double ts = best_of(3, [&] { d_serial = serial::kde(values, h, grid); });
        const double tp = best_of(3, [&] { d_parallel = kde(values, h, grid); });
        double diff = 0.0;
        for (std::size_t i = 0; i < d_serial.values.size(); ++i) {
            diff = std::max(diff, std::abs(d_serial.values[i] - d_parallel.values[i]));
        }
        report("kde (10k pts, 4096 grid)", ts, tp, diff);
    }

    { // autocovariance
        const BlockSequence chi = sample_iid(iid, 400000, 13);
        Autocovariance a_serial, a_parallel;
        const double ts = best_of(3, [&] { a_serial = serial::autocovariance(chi, 2000); });
        const double tp = best_of(3, [&] { a_parallel = autocovariance(chi, 2000); });
        double diff = 0.0;
        for (std::size_t i = 0; i < a_serial.values.size(); ++i) {
            diff = std::max(diff, std::abs(a_serial.values[i] - a_parallel.values[i]));
        }
        report("autocovariance (M=4e5)", ts, tp, diff);
    }

    { // band functions over the Brillouin zone
        const BlockSequence chi = sample_iid(iid, 80, 17);
        const ResonatorArray array = assemble(blocks, chi);
        const std::vector<double> alphas = brillouin_grid(array, 33);
        BandFunctions b_serial, b_parallel;
        const double ts =
            best_of(3, [&] { b_serial = serial::band_functions(array, alphas); });
        const double tp = best_of(3, [&] { b_parallel = band_functions(array, alphas); });
        double diff = 0.0;
        for (std::size_t a = 0; a < b_serial.bands.size(); ++a) {
            for (std::size_t i = 0; i < b_serial.bands[a].size(); ++i) {
                diff = std::max(diff,
                                std::abs(b_serial.bands[a][i] - b_parallel.bands[a][i]));
            }
        }
        report("band_functions (33 alphas)", ts, tp, diff);
    }

    { // lambda-grid classification
        std::vector<double> lambdas(200000);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            lambdas[i] = 10.0 * static_cast<double>(i) / static_cast<double>(lambdas.size());
        }
        std::vector<SpectralRegion> r_serial, r_parallel;
        const double ts = best_of(3, [&] { r_serial = serial::classify_grid(blocks, lambdas); });
        const double tp = best_of(3, [&] { r_parallel = classify_grid(blocks, lambdas); });
        double diff = 0.0;
        for (std::size_t i = 0; i < r_serial.size(); ++i) {
            if (r_serial[i] != r_parallel[i]) diff = 1.0;
        }
        report("classify_grid (2e5 pts)", ts, tp, diff);
    }

    return 0;
}
