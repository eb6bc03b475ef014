#ifndef POSETKIT_SORTING_HPP
#define POSETKIT_SORTING_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "posetkit/chainmerge.hpp"
#include "posetkit/oracle.hpp"
#include "posetkit/poset.hpp"

namespace posetkit {

/** Unit interval split into intervals proportional to integer weights, kept
 *  exactly as prefix sums over the common denominator. Interval j (1-based)
 *  is [prefix[j-1]/total, prefix[j]/total). */
class WeightedIntervalPartition {
public:
    static WeightedIntervalPartition from_weights(const std::vector<std::uint64_t>& weights);

    int interval_count() const { return static_cast<int>(prefix_.size()) - 1; }
    std::uint64_t total() const { return total_; }
    std::uint64_t weight(int j) const {
        return prefix_[static_cast<std::size_t>(j)] - prefix_[static_cast<std::size_t>(j) - 1];
    }
    std::uint64_t boundary_numerator(int j) const { return prefix_[static_cast<std::size_t>(j)]; }

    // Interval containing the dyadic point num/2^k (must lie in [0,1)).
    int locate(std::uint64_t num, int k) const;

private:
    std::vector<std::uint64_t> prefix_;
    std::uint64_t total_ = 0;
};

enum class ProbeResult { Stop, LookBelow, LookAbove };

struct WeightedSearchOutcome {
    int index = 0;   // the stopping interval
    int rounds = 0;  // probe rounds performed
};

/** Halving walk over [0,1): start at 1/2 with step 1/4, probe the interval
 *  under the current point, move down on LookBelow / up on LookAbove, halve
 *  the step, stop on Stop. Finds the unique stopping interval of weight
 *  lambda within 1 + floor(log2(1/lambda)) rounds; throws InconsistentProbe
 *  when answers violate cut monotonicity. */
WeightedSearchOutcome weighted_binary_search(const WeightedIntervalPartition& part,
                                             const std::function<ProbeResult(int)>& probe);

// Largest r >= 0 with b * 2^r <= a (a >= b >= 1).
int floor_log2_ratio(std::uint64_t a, std::uint64_t b);

/** Insertion sort with two plain binary searches per chain per element; a
 *  minimum chain decomposition of the known sub-order (no oracle cost) is
 *  recomputed before every insertion. At most 2wn*ceil(log2 n) queries. */
ChainMergeIndex bin_insertion_sort(int n, OracleInterface& oracle, int w);

struct EntropySortReport {
    std::uint64_t queries = 0;
    double log2_initial_extensions = 0.0;  // log2 of the count before any insertion
};

/** Insertion sort whose per-chain searches are weighted by exact counts of
 *  width-bounded extensions, so uninformative placements cost few queries.
 *  Exhaustive counting caps the usable n (POSETKIT_EXHAUSTIVE_CAP, default 8).
 *  Total queries <= 2*log2(#width-w posets on n) + 4wn, enforced per run. */
ChainMergeIndex entropy_sort(int n, OracleInterface& oracle, int w, EntropySortReport* report = nullptr);

using PeelObserver = std::function<void(const ChainDecomposition& input, const ChainDecomposition& output)>;

/** Reduce a decomposition of at most 2w chains to exactly w chains. All
 *  oracle spend is the index build (<= 2qn); the peeling iterations
 *  themselves only look relations up. Throws WidthExceeded when the top
 *  elements of some iteration form an antichain wider than w. */
ChainDecomposition peel(OracleInterface& oracle, ChainDecomposition d, int w);

// The iterations alone, driven by an already built index; zero oracle cost.
ChainDecomposition peel_iterations(const ChainMergeIndex& idx, int w);

struct MergesortReport {
    std::uint64_t recursion_queries = 0;
    std::uint64_t final_build_queries = 0;
    int peel_calls = 0;
};

/** Halve by id range, recurse, concatenate the two <= w-chain decompositions
 *  and peel back down to w chains; the final index is built on the returned
 *  decomposition. Relations a finished sub-range already determined are
 *  served from a run-wide store, so recursion queries stay within
 *  2wn*log2(n/w) and the final build within 2wn. */
ChainMergeIndex poset_mergesort(int n, OracleInterface& oracle, int w, MergesortReport* report = nullptr,
                                const PeelObserver& observer = {});

struct UnknownWidthReport {
    std::vector<int> attempted_bounds;  // 2, 4, 8, ... until success
    MergesortReport last_run;
};

/** Runs the failing variant of the mergesort with width bounds 2, 4, 8, ...
 *  until a run completes. Needs no width hint. */
ChainMergeIndex sort_unknown_width(int n, OracleInterface& oracle, UnknownWidthReport* report = nullptr);

struct TransitiveSortReport {
    std::uint64_t phase1_inner_queries = 0;  // sorting the induced poset
    std::uint64_t phase2_inner_queries = 0;  // recovering the extra relations
    MergesortReport mergesort;
};

/** Sort a transitive relation: phase 1 sorts the minimally induced poset
 *  through the adapter, phase 2 recovers the dropped directions with at most
 *  2nq extra inner queries (q <= w chains). */
TransitiveRelation sort_transitive(int n, TransitiveOracleAdapter& adapter, int w,
                                   TransitiveSortReport* report = nullptr);

} // namespace posetkit

#endif
