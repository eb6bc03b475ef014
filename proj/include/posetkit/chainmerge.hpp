#ifndef POSETKIT_CHAINMERGE_HPP
#define POSETKIT_CHAINMERGE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "posetkit/oracle.hpp"
#include "posetkit/poset.hpp"

namespace posetkit {

/** Constant-time relation lookup over a chain decomposition.
 *
 *  Per element x in chain C_i it stores the position of x in C_i and, for
 *  every chain C_j, the position of the largest element of C_j dominated by x
 *  (-1 when none; for j == i this is simply pos(x) - 1). Built with one
 *  bottom-up merge scan per ordered chain pair, at most |C_i| + |C_j| - 1
 *  queries each and at most 2qn in total; lookups touch no oracle.
 *
 *  The universe is whatever ids the chains carry; it need not be dense. */
class ChainMergeIndex {
public:
    ChainMergeIndex() = default;

    static ChainMergeIndex build(OracleInterface& oracle, ChainDecomposition d);

    // Build onto a decomposition of an already fully determined element set,
    // answering every scan from `table`; zero oracle involvement.
    static ChainMergeIndex build_from_table(const RelationStore& table, ChainDecomposition d);

    int size() const { return static_cast<int>(ids_.size()); }
    int chain_count() const { return static_cast<int>(chains_.chains.size()); }
    const ChainDecomposition& decomposition() const { return chains_; }
    const std::vector<ElementId>& elements() const { return ids_; }

    bool indexed(ElementId x) const {
        return x >= 0 && x < static_cast<ElementId>(local_.size()) && local_[static_cast<std::size_t>(x)] >= 0;
    }
    int chain_of(ElementId x) const { return chain_of_[loc(x)]; }
    int position_of(ElementId x) const { return pos_of_[loc(x)]; }
    int reach(ElementId x, int chain) const { return reach_[loc(x) * static_cast<std::size_t>(chain_count()) + chain]; }

    // Queries made against the oracle during build.
    std::uint64_t build_queries() const { return build_queries_; }

    /** Relation of x and y from stored positions alone. Same chain: compare
     *  positions. Cross chain: x > y iff x's reach into y's chain covers y's
     *  position, then the symmetric test, else incomparable. */
    RelationVerdict lookup(ElementId x, ElementId y) const;

    bool dominates(ElementId x, ElementId y) const {
        std::size_t lx = loc(x), ly = loc(y);
        int cy = chain_of_[ly];
        if (chain_of_[lx] == cy) return pos_of_[lx] > pos_of_[ly];
        return reach_[lx * static_cast<std::size_t>(chain_count()) + cy] >= pos_of_[ly];
    }

    // Materialized verdict table; requires a dense [0, n) universe. No queries.
    GroundTruthPoset relation_table() const;
    // Record every indexed pair's verdict into a store over the parent universe.
    void fill_store(RelationStore& store) const;

    std::string dump() const;

private:
    ChainDecomposition chains_;
    std::vector<ElementId> ids_;
    std::vector<int> local_;  // element id -> local index, -1 when absent
    std::vector<int> chain_of_, pos_of_;
    std::vector<int> reach_;
    std::uint64_t build_queries_ = 0;

    std::size_t loc(ElementId x) const {
        internal_check(indexed(x), "element is not in this index");
        return static_cast<std::size_t>(local_[static_cast<std::size_t>(x)]);
    }

    void init_positions();
    template <typename QueryFn>
    void scan_all(QueryFn&& dominates_query);
};

} // namespace posetkit

#endif
