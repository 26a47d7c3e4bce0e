#pragma once

#include <cstdint>
#include <vector>

#include "rdos/capacitance.hpp"
#include "rdos/eigensolver.hpp"
#include "rdos/geometry.hpp"

namespace rdos {

/// Two-symbol sequence starting and ending with a dimer symbol (2).
struct MetaAtom {
    std::vector<int> symbols;

    std::size_t size() const { return symbols.size(); }
};

/// Open frequency interval.
struct Window {
    double lo = 2.0;
    double hi = 3.0;
};

/// All sequences over {1,2} of length <= L with at most P ones, starting
/// and ending with 2. Deterministic (lexicographic) order.
std::vector<MetaAtom> enumerate_meta_atoms(int L, int P);

/// Closed form sum_{p=0}^{P+1} binom(L-1, p).
std::uint64_t meta_atom_count(int L, int P);

/// The equivalent double sum 1 + sum_{p<=P} sum_{l=p}^{L-2} binom(l, p);
/// kept separate so tests can check the two forms agree.
std::uint64_t meta_atom_count_double_sum(int L, int P);

/// Eigenvalues of the free-ended system (1)^R zeta (1)^R inside the open
/// window, ascending.
std::vector<double> defect_modes(const MetaAtom& zeta, int R, const BlockSet& blocks,
                                 Window window, const EigOptions& opts = {});

/// Memoised defect-mode sets for all of M_L^P plus a prefix trie for
/// longest-match lookups in O(len) per query.
class DefectModeTable {
  public:
    struct Entry {
        MetaAtom atom;
        std::vector<double> modes;
    };

    DefectModeTable(int L, int P, int R, Window window, std::vector<Entry> entries);

    int max_length() const { return L_; }
    int max_singles() const { return P_; }
    int padding() const { return R_; }
    Window window() const { return window_; }
    const std::vector<Entry>& entries() const { return entries_; }

    /// Modes of one meta-atom; nullptr when absent.
    const std::vector<double>* lookup(const std::vector<int>& symbols) const;

    struct Match {
        int length = 0;    // symbols consumed, 0 = no match
        int entry = -1;
    };

    /// Longest meta-atom matching chi at position j whose end is flanked by
    /// a single or the sequence end; falls back to the longest plain match
    /// inside over-long dimer runs.
    Match longest_match(const std::vector<int>& symbols, std::size_t j) const;

  private:
    int L_, P_, R_;
    Window window_;
    std::vector<Entry> entries_;

    struct Node {
        int child[2] = {-1, -1};
        int entry = -1;
    };
    std::vector<Node> trie_;
};

/// Builds the table over all of M_L^P; parallel over meta-atoms.
DefectModeTable build_table(int L, int P, int R, const BlockSet& blocks, Window window,
                            const EigOptions& opts = {});

/// Multiset of estimated upper-window frequencies, ascending.
struct EstimatedSpectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Greedy scan of Algorithm-style longest matches: matched meta-atoms
/// contribute their tabulated modes, single symbols are skipped.
EstimatedSpectrum estimate_upper_spectrum(const BlockSequence& chi,
                                          const DefectModeTable& table);

} // namespace rdos
