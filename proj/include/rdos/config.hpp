#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdos/geometry.hpp"
#include "rdos/metaatom.hpp"
#include "rdos/sampling.hpp"

namespace rdos {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One JSON document drives every experiment. Field names as documented in
/// the README; unknown keys are rejected to catch typos.
struct ExperimentConfig {
    BlockSet blocks;                    // "blocks"; default: standard blocks
    SamplerSpec sampling;               // "sampling"; default: iid (1/2, 1/2)
    std::vector<SamplerSpec> samplers;  // "samplers"; sweep / hyperuniformity
    std::uint64_t seed = 0;             // "seed"
    std::size_t M = 100;                // "M"
    std::vector<std::size_t> sizes;     // "sizes" (convergence sweep)
    std::size_t repetitions = 20;       // "repetitions"
    std::size_t reference_M = 8192;     // "reference_M"
    int L = 8;                          // "L"
    int P = -1;                         // "P"; negative = floor(L/2)
    int R = 4;                          // "R"
    std::vector<int> sweep_L;           // "sweep_L"; default 2..10
    Window window{2.0, 3.0};            // "window": [lo, hi]
    double bandwidth = 0.0;             // "bandwidth"; <= 0 = Silverman
    double lambda_max = 5.0;            // "lambda_max" (bands)
    int grid_points = 2000;             // "grid_points" (bands)
    std::size_t dos_grid = 1024;        // "dos_grid" (kde evaluation points)
    std::size_t r_max = 500;            // "r_max" (autocovariance lag cutoff)
    std::size_t k_points = 64;          // "k_points" (structure factor grid)
    std::string output_dir = ".";       // "output_dir"
};

BlockSet parse_block_set_text(const std::string& json_text);
SamplerSpec parse_sampler_text(const std::string& json_text);

ExperimentConfig parse_experiment_config_text(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// iid, bound_length (inf, 2), chunk ((2,1),(1,2)), softmax (beta 1) and
/// fibonacci, all with probs (1/2, 1/2): the sampler line-up the comparison
/// experiments default to.
std::vector<SamplerSpec> default_comparison_samplers();

} // namespace rdos
