#ifndef POSETKIT_LINEXT_HPP
#define POSETKIT_LINEXT_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "posetkit/oracle.hpp"
#include "posetkit/poset.hpp"

namespace posetkit {

/** Ternary search tree over a poset: each node splits its universe into the
 *  elements below the root, incomparable to it, and above it. */
struct TernaryTreeNode {
    ElementId root;
    std::unique_ptr<TernaryTreeNode> below, middle, above;
};

struct TernaryTree {
    std::unique_ptr<TernaryTreeNode> root;
    int size = 0;
    // Sum over internal nodes of their subtree sizes; equals the number of
    // oracle queries spent building the tree.
    std::uint64_t weight = 0;
};

/** Random-root recursive construction; n-1 comparisons per node against its
 *  subuniverse. Expected weight O(n(log n + w)). */
TernaryTree build_ternary_tree(int n, OracleInterface& oracle, std::uint64_t seed);

/** below ++ root ++ incomparable ++ above, recursively; a valid linear
 *  extension, no further queries. */
std::vector<ElementId> linear_extension(const TernaryTree& tree);

// No dominated element may appear after its dominator.
bool extension_valid(const GroundTruthPoset& p, const std::vector<ElementId>& ext);

/** Heights from a valid linear extension: scan left to right keeping the set
 *  S(h) of already-placed elements of each height h (at most w apiece), and
 *  binary-search the levels for each arrival; a level test costs at most w
 *  queries. Throws InvalidExtension when a frontier set grows past w. */
std::vector<int> heights_from_extension(const std::vector<ElementId>& ext, OracleInterface& oracle, int w);

} // namespace posetkit

#endif
