#include "rdos/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rdos {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("invalid JSON");
    return j;
}

void check_keys(const json& j, const std::set<std::string>& known, const char* where) {
    for (const auto& item : j.items()) {
        if (known.find(item.key()) == known.end()) {
            throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " + where);
        }
    }
}

std::vector<double> double_list(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(std::string(what) + " entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

BlockSet parse_block_set_json(const json& j) {
    if (!j.is_object() || !j.contains("blocks")) {
        throw ConfigError("block set document needs a \"blocks\" array");
    }
    BlockSet set;
    for (const auto& b : j.at("blocks")) {
        check_keys(b, {"lengths", "spacings", "speeds"}, "block");
        if (!b.contains("lengths") || !b.contains("spacings") || !b.contains("speeds")) {
            throw ConfigError("each block needs lengths, spacings and speeds");
        }
        try {
            set.blocks.push_back(make_block(double_list(b.at("lengths"), "lengths"),
                                            double_list(b.at("spacings"), "spacings"),
                                            double_list(b.at("speeds"), "speeds")));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (set.blocks.empty()) throw ConfigError("block set must contain at least one block");
    return set;
}

SamplerSpec parse_sampler_json(const json& j, std::size_t D) {
    if (!j.is_object() || !j.contains("type")) {
        throw ConfigError("sampler needs a \"type\"");
    }
    check_keys(j, {"type", "probs", "bounds", "chunks", "beta", "order"}, "sampler");
    SamplerSpec spec;
    const std::string type = j.at("type").get<std::string>();
    if (type == "iid") {
        spec.kind = SamplerKind::Iid;
    } else if (type == "bound_length") {
        spec.kind = SamplerKind::BoundLength;
    } else if (type == "chunk") {
        spec.kind = SamplerKind::Chunk;
    } else if (type == "softmax") {
        spec.kind = SamplerKind::Softmax;
    } else if (type == "fibonacci") {
        spec.kind = SamplerKind::Fibonacci;
    } else {
        throw ConfigError("unknown sampler type \"" + type + "\"");
    }
    if (j.contains("probs")) spec.probs = double_list(j.at("probs"), "probs");
    if (j.contains("beta")) spec.beta = j.at("beta").get<double>();
    if (j.contains("order")) spec.order = j.at("order").get<int>();
    if (j.contains("bounds")) {
        for (const auto& b : j.at("bounds")) {
            if (b.is_null() || (b.is_string() && b.get<std::string>() == "unbounded")) {
                spec.bounds.push_back(kUnbounded);
            } else if (b.is_number_integer() || b.is_number_unsigned()) {
                const auto v = b.get<std::int64_t>();
                if (v < 0) throw ConfigError("bounds must be non-negative");
                spec.bounds.push_back(static_cast<std::uint64_t>(v));
            } else {
                throw ConfigError("bounds entries must be integers, null or \"unbounded\"");
            }
        }
    }
    if (j.contains("chunks")) {
        for (const auto& c : j.at("chunks")) {
            if (!c.is_array()) throw ConfigError("chunks must be arrays of symbols");
            std::vector<int> chunk;
            for (const auto& s : c) chunk.push_back(s.get<int>());
            spec.chunks.push_back(std::move(chunk));
        }
    }

    // fill scheme-specific defaults for the common uniform two-block case
    const std::vector<double> uniform(D, 1.0 / static_cast<double>(D));
    if (spec.probs.empty() && (spec.kind == SamplerKind::Iid ||
                               spec.kind == SamplerKind::BoundLength ||
                               spec.kind == SamplerKind::Softmax)) {
        spec.probs = uniform;
    }
    if (spec.kind == SamplerKind::BoundLength && spec.bounds.empty()) {
        spec.bounds.assign(D, kUnbounded);
    }
    if (spec.kind == SamplerKind::Chunk && spec.chunks.empty()) {
        if (D != 2) throw ConfigError("default chunks exist only for two-block sets");
        spec.chunks = {{2, 1}, {1, 2}};
    }
    try {
        validate_sampler(spec, D);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

template <typename T>
T positive_value(const json& j, const char* what) {
    const auto v = j.get<double>();
    if (!(v > 0)) throw ConfigError(std::string(what) + " must be positive");
    return static_cast<T>(v);
}

} // namespace

BlockSet parse_block_set_text(const std::string& json_text) {
    return parse_block_set_json(parse_json(json_text));
}

SamplerSpec parse_sampler_text(const std::string& json_text) {
    const json j = parse_json(json_text);
    return parse_sampler_json(j, j.contains("probs") ? j.at("probs").size() : 2);
}

std::vector<SamplerSpec> default_comparison_samplers() {
    SamplerSpec iid;
    iid.kind = SamplerKind::Iid;
    iid.probs = {0.5, 0.5};

    SamplerSpec bound = iid;
    bound.kind = SamplerKind::BoundLength;
    bound.bounds = {kUnbounded, 2};

    SamplerSpec chunk;
    chunk.kind = SamplerKind::Chunk;
    chunk.chunks = {{2, 1}, {1, 2}};

    SamplerSpec softmax = iid;
    softmax.kind = SamplerKind::Softmax;
    softmax.beta = 1.0;

    SamplerSpec fibonacci;
    fibonacci.kind = SamplerKind::Fibonacci;

    return {iid, bound, chunk, softmax, fibonacci};
}

ExperimentConfig parse_experiment_config_text(const std::string& json_text) {
    const json j = parse_json(json_text);
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    check_keys(j,
               {"blocks", "sampling", "samplers", "seed", "M", "sizes", "repetitions",
                "reference_M", "L", "P", "R", "sweep_L", "window", "bandwidth",
                "lambda_max", "grid_points", "dos_grid", "r_max", "k_points",
                "output_dir"},
               "experiment config");

    ExperimentConfig cfg;
    if (j.contains("blocks")) {
        cfg.blocks = parse_block_set_json(j);
    } else {
        cfg.blocks = make_standard_blocks();
    }
    const std::size_t D = cfg.blocks.count();

    if (j.contains("sampling")) {
        cfg.sampling = parse_sampler_json(j.at("sampling"), D);
    } else {
        cfg.sampling.kind = SamplerKind::Iid;
        cfg.sampling.probs.assign(D, 1.0 / static_cast<double>(D));
    }
    if (j.contains("samplers")) {
        for (const auto& s : j.at("samplers")) {
            cfg.samplers.push_back(parse_sampler_json(s, D));
        }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("M")) cfg.M = positive_value<std::size_t>(j.at("M"), "M");
    if (j.contains("sizes")) {
        for (const auto& s : j.at("sizes")) {
            cfg.sizes.push_back(positive_value<std::size_t>(s, "sizes entry"));
        }
    }
    if (j.contains("repetitions")) {
        cfg.repetitions = positive_value<std::size_t>(j.at("repetitions"), "repetitions");
    }
    if (j.contains("reference_M")) {
        cfg.reference_M = positive_value<std::size_t>(j.at("reference_M"), "reference_M");
    }
    if (j.contains("L")) cfg.L = positive_value<int>(j.at("L"), "L");
    if (j.contains("P")) cfg.P = j.at("P").get<int>();
    if (j.contains("R")) {
        cfg.R = j.at("R").get<int>();
        if (cfg.R < 0) throw ConfigError("R must be non-negative");
    }
    if (j.contains("sweep_L")) {
        for (const auto& l : j.at("sweep_L")) {
            cfg.sweep_L.push_back(positive_value<int>(l, "sweep_L entry"));
        }
    }
    if (j.contains("window")) {
        const auto w = double_list(j.at("window"), "window");
        if (w.size() != 2 || !(w[0] < w[1])) {
            throw ConfigError("window must be [lo, hi] with lo < hi");
        }
        cfg.window = Window{w[0], w[1]};
    }
    if (j.contains("bandwidth")) cfg.bandwidth = j.at("bandwidth").get<double>();
    if (j.contains("lambda_max")) {
        cfg.lambda_max = positive_value<double>(j.at("lambda_max"), "lambda_max");
    }
    if (j.contains("grid_points")) {
        cfg.grid_points = positive_value<int>(j.at("grid_points"), "grid_points");
    }
    if (j.contains("dos_grid")) {
        cfg.dos_grid = positive_value<std::size_t>(j.at("dos_grid"), "dos_grid");
    }
    if (j.contains("r_max")) {
        cfg.r_max = positive_value<std::size_t>(j.at("r_max"), "r_max");
    }
    if (j.contains("k_points")) {
        cfg.k_points = positive_value<std::size_t>(j.at("k_points"), "k_points");
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment_config_text(text.str());
}

} // namespace rdos
