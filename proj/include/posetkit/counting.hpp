#ifndef POSETKIT_COUNTING_HPP
#define POSETKIT_COUNTING_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "posetkit/poset.hpp"

namespace posetkit {

// Pairs of required / forbidden "a dominates b" relations. The two sets must
// be disjoint; enforced pairs are applied before prohibited ones, and any
// contradiction simply yields a count of zero.
struct ConstraintSet {
    std::vector<std::pair<ElementId, ElementId>> enforced;
    std::vector<std::pair<ElementId, ElementId>> prohibited;
};

// The exhaustive counter refuses universes above this cap. Default 8,
// overridable (up to 12) via POSETKIT_EXHAUSTIVE_CAP.
int exhaustive_cap();

// One completed extension, universe size m <= 12, handed to enumeration
// callbacks. down[i] bit j set means i dominates j (transitively closed).
struct SmallPoset {
    int m = 0;
    std::array<std::uint16_t, 12> down{};

    bool dominates(int i, int j) const { return (down[static_cast<std::size_t>(i)] >> j) & 1u; }
    GroundTruthPoset to_poset() const;
};

using ExtensionVisitor = std::function<void(const SmallPoset&)>;

/** Exact number of posets on |known| + num_unknown elements whose width is at
 *  most w, whose restriction to the first |known| ids equals `known`, and
 *  which contain every enforced and no prohibited pair. Backtracks over
 *  undecided ordered pairs with eager transitive propagation; decided
 *  incomparabilities are pruned against the width bound through incremental
 *  clique checks. Throws CapExceeded past the configured cap. */
std::uint64_t count_width_extensions(const GroundTruthPoset& known, int num_unknown, const ConstraintSet& c,
                                     int w, int cap = -1);

// Same search, but invokes `visit` on every completed extension instead of
// just counting; returns the count. Used for bucketed counts and sampling.
std::uint64_t for_each_width_extension(const GroundTruthPoset& known, int num_unknown, const ConstraintSet& c,
                                       int w, const ExtensionVisitor& visit, int cap = -1);

} // namespace posetkit

#endif
