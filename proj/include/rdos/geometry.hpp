#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rdos {

/// One building block: per-resonator length, trailing spacing and wave speed.
/// All three lists have the same size and strictly positive finite entries.
struct Block {
    std::vector<double> lengths;
    std::vector<double> spacings;
    std::vector<double> speeds;

    std::size_t size() const { return lengths.size(); }
};

/// Validating constructor; throws std::invalid_argument on empty lists,
/// mismatched sizes or non-positive entries.
Block make_block(std::vector<double> lengths, std::vector<double> spacings,
                 std::vector<double> speeds);

/// Ordered set of D >= 1 blocks; symbol d in 1..D indexes blocks[d-1].
struct BlockSet {
    std::vector<Block> blocks;

    std::size_t count() const { return blocks.size(); }
    const Block& at_symbol(int d) const;
};

/// The two-block set used throughout: a single resonator (l = s = 2) and a
/// dimer (l = (1,1), s = (1,2)), all wave speeds 1.
BlockSet make_standard_blocks();

/// Same but with the dimer's first spacing replaced, shifting its upper pass
/// band to (2/s1, 2/s1 + 1).
BlockSet make_modified_dimer_blocks(double dimer_s1);

struct SequenceMeta {
    std::string sampler;
    std::optional<std::uint64_t> seed;
};

/// Finite symbol sequence over {1,..,D} plus provenance.
struct BlockSequence {
    std::vector<int> symbols;
    SequenceMeta meta;

    std::size_t size() const { return symbols.size(); }
};

/// Flat chain of N resonators. spacings[i] is the gap after resonator i;
/// the final entry is the trailing spacing used for periodisation and is
/// not part of the finite capacitance matrix.
struct ResonatorArray {
    std::vector<double> lengths;
    std::vector<double> spacings;
    std::vector<double> speeds;

    std::size_t size() const { return lengths.size(); }
};

/// Concatenates the blocks selected by chi. Throws std::invalid_argument on
/// an empty sequence or a symbol outside 1..D.
ResonatorArray assemble(const BlockSet& blocks, const BlockSequence& chi);

/// Unit-cell length: sum of all lengths and spacings including the trailing
/// spacing.
double total_length(const ResonatorArray& array);

} // namespace rdos
