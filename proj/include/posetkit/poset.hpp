#ifndef POSETKIT_POSET_HPP
#define POSETKIT_POSET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "posetkit/errors.hpp"

namespace posetkit {

// Elements of one instance are dense ids 0..n-1.
using ElementId = int;

// Three-valued answer to "how does x relate to y".
enum class RelationVerdict : std::uint8_t {
    Dominates,    // x > y
    DominatedBy,  // y > x
    Incomparable,
};

inline RelationVerdict reversed(RelationVerdict v) {
    switch (v) {
    case RelationVerdict::Dominates: return RelationVerdict::DominatedBy;
    case RelationVerdict::DominatedBy: return RelationVerdict::Dominates;
    default: return RelationVerdict::Incomparable;
    }
}

const char* to_string(RelationVerdict v);

/** A complete partial order held as its transitive closure in a dense bit
 *  matrix. Immutable after construction; this is the ground truth that
 *  simulated oracles answer from and that every algorithm's output is
 *  verified against. n is desk-scale, so O(n^2) bits buy O(1) lookups. */
class GroundTruthPoset {
public:
    GroundTruthPoset() = default;

    // Builds the closure of the given "u dominates v" edges. Throws CycleError
    // if the closure would violate irreflexivity/antisymmetry.
    static GroundTruthPoset from_edges(int n, const std::vector<std::pair<ElementId, ElementId>>& edges);

    // Adopts a bit matrix that must already be a strict order; validated.
    static GroundTruthPoset from_closure_rows(int n, std::vector<std::uint64_t> rows);

    int size() const { return n_; }
    int row_words() const { return words_; }

    bool dominates(ElementId x, ElementId y) const {
        return (down_[static_cast<std::size_t>(x) * words_ + (y >> 6)] >> (y & 63)) & 1u;
    }
    bool comparable(ElementId x, ElementId y) const { return dominates(x, y) || dominates(y, x); }

    // x != y required.
    RelationVerdict relation(ElementId x, ElementId y) const {
        if (x == y) throw SelfQuery();
        if (dominates(x, y)) return RelationVerdict::Dominates;
        if (dominates(y, x)) return RelationVerdict::DominatedBy;
        return RelationVerdict::Incomparable;
    }

    const std::uint64_t* row(ElementId x) const { return down_.data() + static_cast<std::size_t>(x) * words_; }

    std::vector<std::pair<ElementId, ElementId>> closure_edges() const;
    std::size_t relation_count() const;

    // Restriction to the given elements, relabelled 0..ids.size()-1 in order.
    GroundTruthPoset induced(const std::vector<ElementId>& ids) const;

    bool operator==(const GroundTruthPoset& o) const { return n_ == o.n_ && down_ == o.down_; }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> down_;  // row x, bit y: x dominates y

    void close_and_check();
    // Adopt rows that are closed by construction; generators only.
    static GroundTruthPoset from_trusted_closure(int n, std::vector<std::uint64_t> rows);
    friend GroundTruthPoset generate_chain_union(int, int, std::uint64_t);
    friend GroundTruthPoset generate_width_bounded(int, int, std::uint64_t);
};

/** Partition of [0, n) into chains, each listed ascending (smallest first). */
struct ChainDecomposition {
    std::vector<std::vector<ElementId>> chains;

    int size() const { return static_cast<int>(chains.size()); }
    int element_count() const;
};

// True iff the chains partition [0, p.size()) and every chain ascends under p.
bool decomposition_valid(const GroundTruthPoset& p, const ChainDecomposition& d);

// Poset file format: first nonempty line "n <count>", then "<u> <v>" lines
// meaning u dominates v; '#' starts a comment. The loader closes transitively.
GroundTruthPoset load_poset(std::istream& in);
GroundTruthPoset load_poset_text(const std::string& text);
GroundTruthPoset load_poset_file(const std::string& path);
std::string dump_poset(const GroundTruthPoset& p);

// Random union of w chains: each element joins a uniform chain, each chain is
// ordered by a uniform permutation, chains stay mutually incomparable.
GroundTruthPoset generate_chain_union(int n, int w, std::uint64_t seed);

// Chain union plus random cross-chain edges (probability 1/w per still-
// incomparable ordered pair, scanned lexicographically), re-closed after each
// accepted edge. Width never exceeds w since adding relations cannot grow an
// antichain. A convention of this artifact, not a canonical model; see README.
GroundTruthPoset generate_width_bounded(int n, int w, std::uint64_t seed);

// Maximum antichain size, via minimum path cover on the closure (n minus a
// maximum bipartite matching).
int width(const GroundTruthPoset& p);

// A decomposition into width(p) chains, extracted from the same matching.
ChainDecomposition min_chain_decomposition(const GroundTruthPoset& p);

// h(x) = number of elements in a longest chain strictly below x.
std::vector<int> heights_bruteforce(const GroundTruthPoset& p);

// All elements of height at most k-1. k >= 1.
std::vector<ElementId> kselect_bruteforce(const GroundTruthPoset& p, int k);

// Two-sided bound, in log2 space, on the number of labelled posets with n
// elements and width at most w.
struct LogCountBounds {
    double lower = 0.0;
    double upper = 0.0;
};
LogCountBounds nposets_bounds(std::int64_t n, std::int64_t w);

} // namespace posetkit

#endif
