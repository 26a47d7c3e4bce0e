#include "rdos/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace rdos {

namespace {

void check_positive_finite(const std::vector<double>& xs, const char* what) {
    for (double x : xs) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::invalid_argument(std::string("block ") + what +
                                        " must be positive and finite");
        }
    }
}

} // namespace

Block make_block(std::vector<double> lengths, std::vector<double> spacings,
                 std::vector<double> speeds) {
    if (lengths.empty()) {
        throw std::invalid_argument("block must contain at least one resonator");
    }
    if (spacings.size() != lengths.size() || speeds.size() != lengths.size()) {
        throw std::invalid_argument("block lists must have equal sizes");
    }
    check_positive_finite(lengths, "lengths");
    check_positive_finite(spacings, "spacings");
    check_positive_finite(speeds, "speeds");
    return Block{std::move(lengths), std::move(spacings), std::move(speeds)};
}

const Block& BlockSet::at_symbol(int d) const {
    if (d < 1 || static_cast<std::size_t>(d) > blocks.size()) {
        throw std::invalid_argument("invalid sequence: symbol " + std::to_string(d) +
                                    " outside 1.." + std::to_string(blocks.size()));
    }
    return blocks[static_cast<std::size_t>(d) - 1];
}

BlockSet make_standard_blocks() {
    BlockSet set;
    set.blocks.push_back(make_block({2.0}, {2.0}, {1.0}));
    set.blocks.push_back(make_block({1.0, 1.0}, {1.0, 2.0}, {1.0, 1.0}));
    return set;
}

BlockSet make_modified_dimer_blocks(double dimer_s1) {
    BlockSet set;
    set.blocks.push_back(make_block({2.0}, {2.0}, {1.0}));
    set.blocks.push_back(make_block({1.0, 1.0}, {dimer_s1, 2.0}, {1.0, 1.0}));
    return set;
}

ResonatorArray assemble(const BlockSet& blocks, const BlockSequence& chi) {
    if (chi.symbols.empty()) {
        throw std::invalid_argument("cannot assemble an empty block sequence");
    }
    ResonatorArray array;
    for (int d : chi.symbols) {
        const Block& b = blocks.at_symbol(d);
        array.lengths.insert(array.lengths.end(), b.lengths.begin(), b.lengths.end());
        array.spacings.insert(array.spacings.end(), b.spacings.begin(), b.spacings.end());
        array.speeds.insert(array.speeds.end(), b.speeds.begin(), b.speeds.end());
    }
    return array;
}

double total_length(const ResonatorArray& array) {
    double sum = 0.0;
    for (double l : array.lengths) sum += l;
    for (double s : array.spacings) sum += s;
    return sum;
}

} // namespace rdos
