#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <map>

#include "rdos/sampling.hpp"

using namespace rdos;

namespace {

SamplerSpec iid_spec(std::vector<double> probs) {
    SamplerSpec spec;
    spec.kind = SamplerKind::Iid;
    spec.probs = std::move(probs);
    return spec;
}

std::size_t longest_run(const std::vector<int>& symbols, int symbol) {
    std::size_t best = 0, run = 0;
    for (int s : symbols) {
        run = s == symbol ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

} // namespace

TEST_SUITE("sampling") {

TEST_CASE("iid degenerate distribution") {
    const BlockSequence seq = sample_iid(iid_spec({1.0, 0.0}), 5, 42);
    CHECK(seq.symbols == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(sample_iid(iid_spec({0.5, 0.5}), 0, 1).symbols.empty());
}

TEST_CASE("iid empirical frequency stays inside the binomial band") {
    // P(|f - 1/2| > 0.01) = 2 exp(-2e5 * 1e-4) < 1e-8 for M = 1e5
    const BlockSequence seq = sample_iid(iid_spec({0.5, 0.5}), 100000, 7);
    const auto twos = static_cast<double>(
        std::count(seq.symbols.begin(), seq.symbols.end(), 2));
    const double f = twos / static_cast<double>(seq.size());
    CHECK(f > 0.49);
    CHECK(f < 0.51);
}

TEST_CASE("deterministic given (spec, M, seed)") {
    const SamplerSpec spec = iid_spec({0.3, 0.7});
    CHECK(sample_iid(spec, 1000, 9).symbols == sample_iid(spec, 1000, 9).symbols);
    CHECK(sample_iid(spec, 1000, 9).symbols != sample_iid(spec, 1000, 10).symbols);

    SamplerSpec sm = spec;
    sm.kind = SamplerKind::Softmax;
    sm.beta = 1.5;
    CHECK(sample_softmax(sm, 501, 3).symbols == sample_softmax(sm, 501, 3).symbols);
}

TEST_CASE("bound_length respects the run-length constraint") {
    SamplerSpec spec = iid_spec({0.5, 0.5});
    spec.kind = SamplerKind::BoundLength;
    spec.bounds = {kUnbounded, 1};
    const BlockSequence seq = sample_bound_length(spec, 5000, 21);
    CHECK(longest_run(seq.symbols, 2) <= 1);

    spec.bounds = {kUnbounded, 3};
    const BlockSequence seq3 = sample_bound_length(spec, 5000, 22);
    CHECK(longest_run(seq3.symbols, 2) <= 3);
    CHECK(longest_run(seq3.symbols, 2) == 3); // the bound is actually reached
}

TEST_CASE("bound_length (1,1) alternates strictly") {
    SamplerSpec spec = iid_spec({0.5, 0.5});
    spec.kind = SamplerKind::BoundLength;
    spec.bounds = {1, 1};
    const BlockSequence seq = sample_bound_length(spec, 200, 5);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        CHECK(seq.symbols[i] != seq.symbols[i + 1]);
    }
}

TEST_CASE("vacuous bounds reproduce the iid stream bit for bit") {
    SamplerSpec spec = iid_spec({0.25, 0.75});
    spec.kind = SamplerKind::BoundLength;
    spec.bounds = {kUnbounded, kUnbounded};
    CHECK(sample_bound_length(spec, 3000, 77).symbols ==
          sample_iid(iid_spec({0.25, 0.75}), 3000, 77).symbols);
}

TEST_CASE("bound_length infeasible cases") {
    SamplerSpec spec = iid_spec({0.5, 0.5});
    spec.kind = SamplerKind::BoundLength;
    spec.bounds = {0, 0};
    CHECK_THROWS_AS(sample_bound_length(spec, 10, 1), std::runtime_error);

    // all probability mass on a symbol that must pause
    spec.probs = {1.0, 0.0};
    spec.bounds = {1, kUnbounded};
    CHECK_THROWS_AS(sample_bound_length(spec, 10, 1), std::runtime_error);
}

TEST_CASE("chunk sampling balances symbol counts exactly") {
    SamplerSpec spec;
    spec.kind = SamplerKind::Chunk;
    spec.chunks = {{2, 1}, {1, 2}};
    const BlockSequence seq = sample_chunks(spec, 1000, 3);
    CHECK(std::count(seq.symbols.begin(), seq.symbols.end(), 1) == 500);
    CHECK(std::count(seq.symbols.begin(), seq.symbols.end(), 2) == 500);

    CHECK_THROWS_AS(sample_chunks(spec, 1001, 3), std::invalid_argument);
}

TEST_CASE("chunk window counts deviate from R by at most one") {
    SamplerSpec spec;
    spec.kind = SamplerKind::Chunk;
    spec.chunks = {{2, 1}, {1, 2}};
    const BlockSequence seq = sample_chunks(spec, 1000, 11);
    // brute force over all centred windows of all radii
    std::vector<int> prefix(seq.size() + 1, 0);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        prefix[j + 1] = prefix[j] + (seq.symbols[j] == 2 ? 1 : 0);
    }
    for (std::size_t centre = 0; centre < seq.size(); ++centre) {
        const std::size_t max_r = std::min(centre, seq.size() - 1 - centre);
        for (std::size_t r = 0; r <= max_r; ++r) {
            const int count = prefix[centre + r + 1] - prefix[centre - r];
            CHECK(std::abs(count - static_cast<int>(r)) <= 1);
        }
    }
}

TEST_CASE("chunk sampler validates balance") {
    SamplerSpec spec;
    spec.kind = SamplerKind::Chunk;
    spec.chunks = {{2, 2}};
    CHECK_THROWS_AS(sample_chunks(spec, 10, 1), std::invalid_argument);
}

TEST_CASE("softmax at beta 0 ignores the probabilities") {
    SamplerSpec spec = iid_spec({0.999999999999, 1e-12});
    spec.kind = SamplerKind::Softmax;
    spec.beta = 0.0;
    const BlockSequence seq = sample_softmax(spec, 20001, 17);
    const auto twos = static_cast<double>(
        std::count(seq.symbols.begin(), seq.symbols.end(), 2));
    const double f = twos / static_cast<double>(seq.size());
    CHECK(f > 0.48); // uniform despite the degenerate probs
    CHECK(f < 0.52);
}

TEST_CASE("softmax first-ring probability matches the hand evaluation") {
    // p = (1/2,1/2), beta = 2, centre drawn as 1: the next ring uses
    // p_1 = e^{-1} / (e^{-1} + e^{1}) ~ 0.1192
    SamplerSpec spec = iid_spec({0.5, 0.5});
    spec.kind = SamplerKind::Softmax;
    spec.beta = 2.0;
    std::size_t ones = 0, total = 0, centres1 = 0;
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        const BlockSequence seq = sample_softmax(spec, 3, seed);
        REQUIRE(seq.size() == 3);
        const int centre = seq.symbols[1];
        if (centre != 1) continue;
        ++centres1;
        ones += seq.symbols[0] == 1 ? 1 : 0;
        ones += seq.symbols[2] == 1 ? 1 : 0;
        total += 2;
    }
    REQUIRE(centres1 > 1500);
    const double expected = std::exp(-1.0) / (std::exp(-1.0) + std::exp(1.0));
    const double freq = static_cast<double>(ones) / static_cast<double>(total);
    CHECK(freq == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("softmax suppresses window-count fluctuations at high beta") {
    SamplerSpec sm = iid_spec({0.5, 0.5});
    sm.kind = SamplerKind::Softmax;
    sm.beta = 5.0;
    const std::size_t M = 100001;
    const BlockSequence soft = sample_softmax(sm, M, 23);
    const BlockSequence flat = sample_iid(iid_spec({0.5, 0.5}), M, 23);

    auto sliding_variance = [](const BlockSequence& seq, std::size_t w) {
        std::vector<int> prefix(seq.size() + 1, 0);
        for (std::size_t j = 0; j < seq.size(); ++j) {
            prefix[j + 1] = prefix[j] + (seq.symbols[j] == 2 ? 1 : 0);
        }
        double mean = 0.0, ss = 0.0;
        const std::size_t count = seq.size() - w + 1;
        for (std::size_t c = 0; c < count; ++c) {
            const double x = prefix[c + w] - prefix[c];
            const double d = x - mean;
            mean += d / static_cast<double>(c + 1);
            ss += d * (x - mean);
        }
        return ss / static_cast<double>(count - 1);
    };
    // sublinear growth vs the iid linear benchmark
    const double v_soft = sliding_variance(soft, 2049);
    const double v_iid = sliding_variance(flat, 2049);
    CHECK(v_soft < 0.2 * v_iid);
}

TEST_CASE("softmax is hyperuniform for centred windows across seeds") {
    // ensemble variance of the centred dimer count stays bounded while the
    // iid count variance grows with the radius
    SamplerSpec sm = iid_spec({0.5, 0.5});
    sm.kind = SamplerKind::Softmax;
    sm.beta = 1.0;
    for (const std::size_t radius : {64, 512}) {
        const std::size_t M = 2 * radius + 1;
        double mean = 0.0, ss = 0.0;
        const int seeds = 150;
        for (int s = 0; s < seeds; ++s) {
            const BlockSequence seq = sample_softmax(sm, M, 5000 + static_cast<std::uint64_t>(s));
            const auto x = static_cast<double>(
                std::count(seq.symbols.begin(), seq.symbols.end(), 2));
            const double d = x - mean;
            mean += d / static_cast<double>(s + 1);
            ss += d * (x - mean);
        }
        const double variance = ss / static_cast<double>(seeds - 1);
        CHECK(variance < 0.05 * static_cast<double>(radius)); // iid would be ~radius/2
    }
}

TEST_CASE("fibonacci substitution sequence") {
    CHECK(fibonacci_sequence(0).symbols == std::vector<int>{1});
    CHECK(fibonacci_sequence(1).symbols == std::vector<int>{2});
    CHECK(fibonacci_sequence(4).symbols == std::vector<int>{2, 1, 2, 2, 1});

    for (int order = 0; order <= 20; ++order) {
        const BlockSequence seq = fibonacci_sequence(order);
        CHECK(seq.size() == fibonacci_length(order));
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            CHECK(!(seq.symbols[i] == 1 && seq.symbols[i + 1] == 1));
        }
        CHECK(longest_run(seq.symbols, 2) <= 2);
    }
    CHECK(fibonacci_length(0) == 1);
    CHECK(fibonacci_length(1) == 1);
    CHECK(fibonacci_length(20) == 10946);
}

TEST_CASE("dispatcher handles fibonacci lengths") {
    SamplerSpec spec;
    spec.kind = SamplerKind::Fibonacci;
    CHECK(sample(spec, 100, 0).size() == 100);
    spec.order = 10;
    CHECK(sample(spec, 50, 0).size() == 50);
    CHECK_THROWS_AS(sample(spec, 1000, 0), std::invalid_argument);
}

TEST_CASE("spec validation") {
    SamplerSpec spec = iid_spec({0.5, 0.6});
    CHECK_THROWS_AS(validate_sampler(spec, 2), std::invalid_argument);
    spec.probs = {0.5, 0.5};
    CHECK_NOTHROW(validate_sampler(spec, 2));
    spec.kind = SamplerKind::Softmax;
    spec.beta = -1.0;
    CHECK_THROWS_AS(validate_sampler(spec, 2), std::invalid_argument);
}

} // TEST_SUITE
