#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "rdos/geometry.hpp"

using namespace rdos;

TEST_SUITE("geometry") {

TEST_CASE("standard blocks match the canonical example") {
    const BlockSet set = make_standard_blocks();
    REQUIRE(set.count() == 2);
    const Block& single = set.at_symbol(1);
    CHECK(single.size() == 1);
    CHECK(single.lengths[0] == 2.0);
    CHECK(single.spacings[0] == 2.0);
    const Block& dimer = set.at_symbol(2);
    CHECK(dimer.size() == 2);
    CHECK(dimer.spacings[0] == 1.0);
    CHECK(dimer.spacings[1] == 2.0);
    for (const Block& b : set.blocks) {
        for (double v : b.speeds) CHECK(v == 1.0);
    }
}

TEST_CASE("block validation") {
    CHECK_THROWS_AS(make_block({}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_block({1.0}, {1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_block({0.0}, {1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_block({1.0}, {-2.0}, {1.0}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_block({inf}, {1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("assemble concatenates blocks in sequence order") {
    const BlockSet set = make_standard_blocks();
    const ResonatorArray array = assemble(set, BlockSequence{{1, 2, 1}, {}});
    REQUIRE(array.size() == 4);
    CHECK(array.lengths == std::vector<double>{2.0, 1.0, 1.0, 2.0});
    CHECK(array.spacings == std::vector<double>{2.0, 1.0, 2.0, 2.0});

    const ResonatorArray dimer_only = assemble(set, BlockSequence{{2}, {}});
    CHECK(dimer_only.lengths == std::vector<double>{1.0, 1.0});
    CHECK(dimer_only.spacings == std::vector<double>{1.0, 2.0});
}

TEST_CASE("assemble rejects bad sequences") {
    const BlockSet set = make_standard_blocks();
    CHECK_THROWS_AS(assemble(set, BlockSequence{{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble(set, BlockSequence{{1, 3}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble(set, BlockSequence{{0}, {}}), std::invalid_argument);
}

TEST_CASE("total length includes the trailing spacing") {
    const BlockSet set = make_standard_blocks();
    CHECK(total_length(assemble(set, BlockSequence{{1}, {}})) == doctest::Approx(4.0));
    CHECK(total_length(assemble(set, BlockSequence{{2}, {}})) == doctest::Approx(5.0));
    CHECK(total_length(assemble(set, BlockSequence{{1, 2, 1}, {}})) == doctest::Approx(13.0));
}

TEST_CASE("assembly is associative over sequence concatenation") {
    const BlockSet set = make_standard_blocks();
    const std::vector<int> left{2, 1, 1}, right{1, 2, 2, 1};
    std::vector<int> both = left;
    both.insert(both.end(), right.begin(), right.end());

    const ResonatorArray a = assemble(set, BlockSequence{both, {}});
    const ResonatorArray b1 = assemble(set, BlockSequence{left, {}});
    const ResonatorArray b2 = assemble(set, BlockSequence{right, {}});
    ResonatorArray joined = b1;
    joined.lengths.insert(joined.lengths.end(), b2.lengths.begin(), b2.lengths.end());
    joined.spacings.insert(joined.spacings.end(), b2.spacings.begin(), b2.spacings.end());
    joined.speeds.insert(joined.speeds.end(), b2.speeds.begin(), b2.speeds.end());
    CHECK(a.lengths == joined.lengths);
    CHECK(a.spacings == joined.spacings);
    CHECK(a.speeds == joined.speeds);
}

TEST_CASE("resonator count dominates block count") {
    const BlockSet set = make_standard_blocks();
    for (std::size_t m = 1; m <= 6; ++m) {
        std::vector<int> chi(m, 2);
        CHECK(assemble(set, BlockSequence{chi, {}}).size() >= m);
    }
}

} // TEST_SUITE
