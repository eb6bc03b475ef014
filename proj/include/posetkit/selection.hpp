#ifndef POSETKIT_SELECTION_HPP
#define POSETKIT_SELECTION_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "posetkit/oracle.hpp"
#include "posetkit/poset.hpp"

namespace posetkit {

// Test hook: called after each processed element with every id that is still
// alive (candidates plus deferred); soundness means no true answer element
// ever leaves this set.
using SelectionObserver = std::function<void(ElementId processed, const std::vector<ElementId>& alive)>;

/** Height-0 elements by streaming: each arrival is compared against the
 *  candidate antichain; it is dropped on dominating any candidate, otherwise
 *  it replaces the candidates it is dominated by. At most wn queries. */
std::vector<ElementId> minimals_det(int n, OracleInterface& oracle, int w,
                                    const SelectionObserver& observer = {});

/** Same scheme with a uniformly random arrival order and per-step random
 *  probe order; expected queries (w+1)n/2 + (w^2-w)/2 * (ln n - ln w). */
std::vector<ElementId> minimals_rand(int n, OracleInterface& oracle, int w, std::uint64_t seed,
                                     const SelectionObserver& observer = {});

struct KSelectReport {
    int flushes = 0;
    int max_sort_size = 0;
    std::uint64_t comparison_queries = 0;  // randomized variant: non-sort queries
};

/** Bottom k levels by batched sorting: repeatedly sort the survivors plus the
 *  next wk arrivals and keep the elements of height <= k-1. The mergesort
 *  instantiation gives <= 8wn*log2(2k) queries; the entropy instantiation is
 *  available for universes within the exhaustive cap. */
std::vector<ElementId> kselect_det(int n, OracleInterface& oracle, int w, int k,
                                   KSelectReport* report = nullptr, bool use_entropy_sorter = false,
                                   const SelectionObserver& observer = {});

/** Randomized bottom-k: sort a random first batch, then compare each arrival
 *  against the maximal candidates in random order. An arrival is discarded
 *  only on proof of height >= k (it dominates a candidate of snapshot height
 *  k-1); every other comparable outcome, and full incomparability, defers it
 *  to the next flush. Flushes sort at most 2wk elements. */
std::vector<ElementId> kselect_rand(int n, OracleInterface& oracle, int w, int k, std::uint64_t seed,
                                    KSelectReport* report = nullptr,
                                    const SelectionObserver& observer = {});

} // namespace posetkit

#endif
