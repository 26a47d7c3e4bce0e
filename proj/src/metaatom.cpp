#include "rdos/metaatom.hpp"

#include <algorithm>
#include <stdexcept>

namespace rdos {

std::vector<MetaAtom> enumerate_meta_atoms(int L, int P) {
    if (L < 1 || P < 0) throw std::invalid_argument("enumerate_meta_atoms needs L >= 1, P >= 0");
    std::vector<MetaAtom> out;
    std::vector<int> prefix;
    // depth-first over strings starting with 2, pruning on the ones budget
    auto rec = [&](auto&& self, int ones) -> void {
        if (!prefix.empty() && prefix.back() == 2) {
            out.push_back(MetaAtom{prefix});
        }
        if (static_cast<int>(prefix.size()) >= L) return;
        if (ones < P) {
            prefix.push_back(1);
            self(self, ones + 1);
            prefix.pop_back();
        }
        prefix.push_back(2);
        self(self, ones);
        prefix.pop_back();
    };
    prefix.push_back(2);
    rec(rec, 0);
    return out;
}

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

} // namespace

std::uint64_t meta_atom_count(int L, int P) {
    if (L < 1 || P < 0) throw std::invalid_argument("meta_atom_count needs L >= 1, P >= 0");
    std::uint64_t sum = 0;
    for (int p = 0; p <= P + 1; ++p) {
        sum += binom(static_cast<std::uint64_t>(L - 1), static_cast<std::uint64_t>(p));
    }
    return sum;
}

std::uint64_t meta_atom_count_double_sum(int L, int P) {
    if (L < 1 || P < 0) throw std::invalid_argument("meta_atom_count needs L >= 1, P >= 0");
    std::uint64_t sum = 1;
    for (int p = 0; p <= P; ++p) {
        for (int l = p; l <= L - 2; ++l) {
            sum += binom(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(p));
        }
    }
    return sum;
}

std::vector<double> defect_modes(const MetaAtom& zeta, int R, const BlockSet& blocks,
                                 Window window, const EigOptions& opts) {
    if (R < 0) throw std::invalid_argument("padding count must be non-negative");
    BlockSequence padded;
    padded.symbols.reserve(zeta.symbols.size() + 2 * static_cast<std::size_t>(R));
    padded.symbols.insert(padded.symbols.end(), static_cast<std::size_t>(R), 1);
    padded.symbols.insert(padded.symbols.end(), zeta.symbols.begin(), zeta.symbols.end());
    padded.symbols.insert(padded.symbols.end(), static_cast<std::size_t>(R), 1);
    const SymTridiagonal j = symmetrized_capacitance(assemble(blocks, padded));
    return eig_sym_tridiag_range(j, window.lo, window.hi, opts).values;
}

DefectModeTable::DefectModeTable(int L, int P, int R, Window window,
                                 std::vector<Entry> entries)
    : L_(L), P_(P), R_(R), window_(window), entries_(std::move(entries)) {
    trie_.emplace_back();
    for (std::size_t idx = 0; idx < entries_.size(); ++idx) {
        int node = 0;
        for (int sym : entries_[idx].atom.symbols) {
            if (sym != 1 && sym != 2) {
                throw std::invalid_argument("meta-atom symbols must be 1 or 2");
            }
            int next = trie_[static_cast<std::size_t>(node)].child[sym - 1];
            if (next < 0) {
                next = static_cast<int>(trie_.size());
                trie_[static_cast<std::size_t>(node)].child[sym - 1] = next;
                trie_.emplace_back();
            }
            node = next;
        }
        trie_[static_cast<std::size_t>(node)].entry = static_cast<int>(idx);
    }
}

const std::vector<double>* DefectModeTable::lookup(const std::vector<int>& symbols) const {
    int node = 0;
    for (int sym : symbols) {
        if (sym < 1 || sym > 2) return nullptr;
        node = trie_[static_cast<std::size_t>(node)].child[sym - 1];
        if (node < 0) return nullptr;
    }
    const int entry = trie_[static_cast<std::size_t>(node)].entry;
    return entry >= 0 ? &entries_[static_cast<std::size_t>(entry)].modes : nullptr;
}

DefectModeTable::Match DefectModeTable::longest_match(const std::vector<int>& symbols,
                                                      std::size_t j) const {
    Match flanked, any;
    int node = 0;
    const std::size_t m = symbols.size();
    for (std::size_t k = j; k < m; ++k) {
        const int sym = symbols[k];
        if (sym < 1 || sym > 2) {
            throw std::invalid_argument("estimate requires a two-symbol sequence");
        }
        node = trie_[static_cast<std::size_t>(node)].child[sym - 1];
        if (node < 0) break;
        const int entry = trie_[static_cast<std::size_t>(node)].entry;
        if (entry >= 0) {
            const int len = static_cast<int>(k - j + 1);
            any = {len, entry};
            if (k + 1 == m || symbols[k + 1] == 1) flanked = {len, entry};
        }
    }
    return flanked.length > 0 ? flanked : any;
}

DefectModeTable build_table(int L, int P, int R, const BlockSet& blocks, Window window,
                            const EigOptions& opts) {
    if (!(window.lo < window.hi)) throw std::invalid_argument("empty defect window");
    std::vector<MetaAtom> atoms = enumerate_meta_atoms(L, P);
    std::vector<DefectModeTable::Entry> entries(atoms.size());
    const long n = static_cast<long>(atoms.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        entries[ui].atom = atoms[ui];
        entries[ui].modes = defect_modes(atoms[ui], R, blocks, window, opts);
    }
    return DefectModeTable(L, P, R, window, std::move(entries));
}

EstimatedSpectrum estimate_upper_spectrum(const BlockSequence& chi,
                                          const DefectModeTable& table) {
    EstimatedSpectrum out;
    const std::vector<int>& symbols = chi.symbols;
    std::size_t j = 0;
    while (j < symbols.size()) {
        const DefectModeTable::Match match = table.longest_match(symbols, j);
        if (match.length == 0) {
            ++j; // a single carries no upper-window mode
            continue;
        }
        const auto& modes = table.entries()[static_cast<std::size_t>(match.entry)].modes;
        out.values.insert(out.values.end(), modes.begin(), modes.end());
        j += static_cast<std::size_t>(match.length);
    }
    std::sort(out.values.begin(), out.values.end());
    return out;
}

} // namespace rdos
