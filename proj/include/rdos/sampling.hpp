#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rdos/geometry.hpp"

namespace rdos {

enum class SamplerKind { Iid, BoundLength, Chunk, Softmax, Fibonacci };

std::string sampler_name(SamplerKind kind);

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

/// Parameters for the five sampling schemes. probs applies to iid,
/// bound_length and softmax; bounds to bound_length (kUnbounded allowed);
/// chunks to chunk sampling; beta to softmax; order to fibonacci (empty
/// means: derive from the requested length).
struct SamplerSpec {
    SamplerKind kind = SamplerKind::Iid;
    std::vector<double> probs;
    std::vector<std::uint64_t> bounds;
    std::vector<std::vector<int>> chunks;
    double beta = 0.0;
    std::optional<int> order;
};

/// Throws std::invalid_argument when the spec is inconsistent for a block
/// set of D symbols (probs not summing to 1 within 1e-12, unbalanced
/// chunks, negative beta, ...).
void validate_sampler(const SamplerSpec& spec, std::size_t D);

// All samplers are pure functions of (spec, M, seed) and consume one
// uniform draw per decision from a single mt19937_64 stream seeded with
// `seed`. Draw order: iid and bound_length draw positions 0..M-1 in order;
// chunk draws one uniform per chunk; softmax draws the centre, then per
// round one uniform for the right symbol followed by one for the left.

BlockSequence sample_iid(const SamplerSpec& spec, std::size_t M, std::uint64_t seed);

/// Sequential variant of the run-length constraint: once the current run of
/// symbol d reaches bounds[d-1], the next draw renormalises over the other
/// symbols. Throws std::runtime_error when no symbol is admissible.
BlockSequence sample_bound_length(const SamplerSpec& spec, std::size_t M,
                                  std::uint64_t seed);

/// Concatenation of M/|chunk| uniformly drawn chunks. M must be divisible
/// by the common chunk length.
BlockSequence sample_chunks(const SamplerSpec& spec, std::size_t M, std::uint64_t seed);

/// Two-sided growth from a centre symbol with occurrence-count
/// regularisation of strength beta. For even M the left side keeps the
/// extra element.
BlockSequence sample_softmax(const SamplerSpec& spec, std::size_t M, std::uint64_t seed);

/// Substitution sequence with rules 1 -> (2), 2 -> (2,1), starting from (1).
BlockSequence fibonacci_sequence(int order);

/// Length of the order-j sequence (Fibonacci numbers, F_0 = F_1 = 1).
std::uint64_t fibonacci_length(int order);

/// Dispatch on spec.kind, producing a length-M sequence. For fibonacci an
/// explicit order must yield at least M symbols (the sequence is truncated
/// to M); without one the smallest sufficient order is used.
BlockSequence sample(const SamplerSpec& spec, std::size_t M, std::uint64_t seed);

} // namespace rdos
