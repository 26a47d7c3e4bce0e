#include "rdos/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdos/rng.hpp"

namespace rdos {

std::string sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Iid: return "iid";
        case SamplerKind::BoundLength: return "bound_length";
        case SamplerKind::Chunk: return "chunk";
        case SamplerKind::Softmax: return "softmax";
        case SamplerKind::Fibonacci: return "fibonacci";
    }
    return "unknown";
}

namespace {

bool needs_probs(SamplerKind kind) {
    return kind == SamplerKind::Iid || kind == SamplerKind::BoundLength ||
           kind == SamplerKind::Softmax;
}

// Cumulative-scan draw over the admissible symbols. Comparing u * total
// against the running sum avoids a renormalising division, so a vacuous
// mask reproduces the unconstrained stream bit for bit.
int draw_symbol(const std::vector<double>& probs, const std::vector<char>& allowed,
                double u) {
    double total = 0.0;
    for (std::size_t d = 0; d < probs.size(); ++d) {
        if (allowed[d]) total += probs[d];
    }
    if (!(total > 0.0)) {
        throw std::runtime_error("sampling infeasible: no admissible symbol has mass");
    }
    const double target = u * total;
    double cum = 0.0;
    int last = 0;
    for (std::size_t d = 0; d < probs.size(); ++d) {
        if (!allowed[d]) continue;
        cum += probs[d];
        last = static_cast<int>(d) + 1;
        if (target < cum) return last;
    }
    return last;
}

} // namespace

void validate_sampler(const SamplerSpec& spec, std::size_t D) {
    if (D == 0) throw std::invalid_argument("block set is empty");
    if (needs_probs(spec.kind)) {
        if (spec.probs.size() != D) {
            throw std::invalid_argument("sampler probs must list one entry per block");
        }
        double sum = 0.0;
        for (double p : spec.probs) {
            if (!(p >= 0.0) || !(p <= 1.0)) {
                throw std::invalid_argument("sampler probs must lie in [0,1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("sampler probs must sum to 1");
        }
    }
    if (spec.kind == SamplerKind::BoundLength && spec.bounds.size() != D) {
        throw std::invalid_argument("bound_length sampler needs one bound per block");
    }
    if (spec.kind == SamplerKind::Chunk) {
        if (spec.chunks.empty()) throw std::invalid_argument("chunk sampler needs chunks");
        const std::size_t len = spec.chunks.front().size();
        for (const auto& chunk : spec.chunks) {
            if (chunk.empty() || chunk.size() != len) {
                throw std::invalid_argument("chunks must be non-empty and of equal length");
            }
            std::vector<std::size_t> count(D, 0);
            for (int sym : chunk) {
                if (sym < 1 || static_cast<std::size_t>(sym) > D) {
                    throw std::invalid_argument("chunk symbol out of range");
                }
                ++count[static_cast<std::size_t>(sym) - 1];
            }
            for (std::size_t d = 1; d < D; ++d) {
                if (count[d] != count[0]) {
                    throw std::invalid_argument(
                        "chunks must contain every symbol equally often");
                }
            }
        }
    }
    if (spec.kind == SamplerKind::Softmax && !(spec.beta >= 0.0)) {
        throw std::invalid_argument("softmax temperature must be non-negative");
    }
    if (spec.kind == SamplerKind::Fibonacci && spec.order && *spec.order < 0) {
        throw std::invalid_argument("fibonacci order must be non-negative");
    }
}

BlockSequence sample_iid(const SamplerSpec& spec, std::size_t M, std::uint64_t seed) {
    validate_sampler(spec, spec.probs.size());
    BlockSequence seq;
    seq.meta = {"iid", seed};
    seq.symbols.reserve(M);
    Rng rng(seed);
    const std::vector<char> all(spec.probs.size(), 1);
    for (std::size_t i = 0; i < M; ++i) {
        seq.symbols.push_back(draw_symbol(spec.probs, all, rng.uniform()));
    }
    return seq;
}

BlockSequence sample_bound_length(const SamplerSpec& spec, std::size_t M,
                                  std::uint64_t seed) {
    const std::size_t D = spec.probs.size();
    validate_sampler(spec, D);
    bool any_positive = false;
    for (std::uint64_t b : spec.bounds) any_positive = any_positive || b > 0;
    if (!any_positive) {
        throw std::runtime_error("bound_length sampling infeasible: all bounds are zero");
    }

    BlockSequence seq;
    seq.meta = {"bound_length", seed};
    seq.symbols.reserve(M);
    Rng rng(seed);
    std::vector<char> allowed(D, 1);
    int run_symbol = 0;
    std::uint64_t run_length = 0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t d = 0; d < D; ++d) {
            allowed[d] = spec.bounds[d] > 0;
        }
        if (run_symbol > 0 && run_length >= spec.bounds[run_symbol - 1]) {
            allowed[run_symbol - 1] = 0;
        }
        const int sym = draw_symbol(spec.probs, allowed, rng.uniform());
        if (sym == run_symbol) {
            ++run_length;
        } else {
            run_symbol = sym;
            run_length = 1;
        }
        seq.symbols.push_back(sym);
    }
    return seq;
}

BlockSequence sample_chunks(const SamplerSpec& spec, std::size_t M, std::uint64_t seed) {
    int max_symbol = 1;
    for (const auto& chunk : spec.chunks) {
        for (int sym : chunk) max_symbol = std::max(max_symbol, sym);
    }
    validate_sampler(spec, static_cast<std::size_t>(max_symbol));
    const std::size_t len = spec.chunks.front().size();
    if (M % len != 0) {
        throw std::invalid_argument("chunk sampling needs M divisible by the chunk length");
    }
    BlockSequence seq;
    seq.meta = {"chunk", seed};
    seq.symbols.reserve(M);
    Rng rng(seed);
    const std::size_t draws = M / len;
    const std::size_t K = spec.chunks.size();
    for (std::size_t i = 0; i < draws; ++i) {
        auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(K));
        if (idx >= K) idx = K - 1;
        const auto& chunk = spec.chunks[idx];
        seq.symbols.insert(seq.symbols.end(), chunk.begin(), chunk.end());
    }
    return seq;
}

BlockSequence sample_softmax(const SamplerSpec& spec, std::size_t M, std::uint64_t seed) {
    const std::size_t D = spec.probs.size();
    validate_sampler(spec, D);
    BlockSequence seq;
    seq.meta = {"softmax", seed};
    if (M == 0) return seq;

    Rng rng(seed);
    const std::vector<char> all(D, 1);
    const int centre = draw_symbol(spec.probs, all, rng.uniform());
    std::vector<double> counts(D, 0.0);
    counts[static_cast<std::size_t>(centre) - 1] += 1.0;

    const std::size_t rounds = M / 2; // after r rounds the window [-r, r] is filled
    std::vector<int> left, right;
    left.reserve(rounds);
    right.reserve(rounds);
    std::vector<double> weights(D), probs(D);
    for (std::size_t j = 0; j < rounds; ++j) {
        double wmax = -std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < D; ++d) {
            weights[d] =
                spec.beta * (spec.probs[d] * static_cast<double>(2 * j + 1) - counts[d]);
            wmax = std::max(wmax, weights[d]);
        }
        double z = 0.0;
        for (std::size_t d = 0; d < D; ++d) {
            probs[d] = std::exp(weights[d] - wmax);
            z += probs[d];
        }
        for (std::size_t d = 0; d < D; ++d) probs[d] /= z;
        // both new symbols use the distribution of the window [-j, j]
        const int r = draw_symbol(probs, all, rng.uniform());
        const int l = draw_symbol(probs, all, rng.uniform());
        right.push_back(r);
        left.push_back(l);
        counts[static_cast<std::size_t>(r) - 1] += 1.0;
        counts[static_cast<std::size_t>(l) - 1] += 1.0;
    }

    seq.symbols.reserve(M);
    seq.symbols.assign(left.rbegin(), left.rend());
    seq.symbols.push_back(centre);
    // even M: drop the rightmost element, the left side keeps the extra one
    const std::size_t keep_right = M - 1 - rounds;
    seq.symbols.insert(seq.symbols.end(), right.begin(),
                       right.begin() + static_cast<long>(keep_right));
    return seq;
}

std::uint64_t fibonacci_length(int order) {
    if (order < 0) throw std::invalid_argument("fibonacci order must be non-negative");
    std::uint64_t a = 1, b = 1; // F_0, F_1
    for (int i = 0; i < order; ++i) {
        const std::uint64_t next = a + b;
        a = b;
        b = next;
    }
    return a;
}

BlockSequence fibonacci_sequence(int order) {
    if (order < 0) throw std::invalid_argument("fibonacci order must be non-negative");
    if (order > 35) {
        throw std::invalid_argument("fibonacci order too large (sequence would exceed memory)");
    }
    std::vector<int> cur{1};
    for (int i = 0; i < order; ++i) {
        std::vector<int> next;
        next.reserve(cur.size() * 2);
        for (int sym : cur) {
            if (sym == 1) {
                next.push_back(2);
            } else {
                next.push_back(2);
                next.push_back(1);
            }
        }
        cur = std::move(next);
    }
    BlockSequence seq;
    seq.symbols = std::move(cur);
    seq.meta = {"fibonacci", std::nullopt};
    return seq;
}

BlockSequence sample(const SamplerSpec& spec, std::size_t M, std::uint64_t seed) {
    switch (spec.kind) {
        case SamplerKind::Iid: return sample_iid(spec, M, seed);
        case SamplerKind::BoundLength: return sample_bound_length(spec, M, seed);
        case SamplerKind::Chunk: return sample_chunks(spec, M, seed);
        case SamplerKind::Softmax: return sample_softmax(spec, M, seed);
        case SamplerKind::Fibonacci: {
            int order = 0;
            if (spec.order) {
                order = *spec.order;
                if (fibonacci_length(order) < M) {
                    throw std::invalid_argument(
                        "fibonacci order too small for the requested length");
                }
            } else {
                while (fibonacci_length(order) < M) ++order;
            }
            BlockSequence seq = fibonacci_sequence(order);
            if (seq.symbols.size() > M) seq.symbols.resize(M);
            return seq;
        }
    }
    throw std::invalid_argument("unknown sampler kind");
}

} // namespace rdos
