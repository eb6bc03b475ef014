#include "posetkit/selection.hpp"

#include <algorithm>

#include "posetkit/rng.hpp"
#include "posetkit/sorting.hpp"

namespace posetkit {

namespace {

void check_candidate_bound(std::size_t size, int w) {
    if (static_cast<int>(size) > w)
        throw CandidateOverflow("candidate antichain grew past the width bound " + std::to_string(w));
}

// Core streaming filter shared by both minimal-element variants. `arrivals`
// fixes the processing order; `probe_order` permutes the candidate scan for
// one step (identity when empty).
std::vector<ElementId> run_minimals(OracleInterface& oracle, int w, const std::vector<ElementId>& arrivals,
                                    Rng* probe_rng, const SelectionObserver& observer) {
    std::vector<ElementId> cands;
    std::vector<std::size_t> order;
    for (ElementId x : arrivals) {
        order.resize(cands.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (probe_rng) rng_shuffle(*probe_rng, order);
        bool dropped = false;
        std::vector<char> removed(cands.size(), 0);
        for (std::size_t i : order) {
            RelationVerdict v = oracle.query(x, cands[i]);
            if (v == RelationVerdict::Dominates) {  // x sits above a candidate
                dropped = true;
                break;
            }
            if (v == RelationVerdict::DominatedBy) removed[i] = 1;
        }
        if (!dropped) {
            std::vector<ElementId> next;
            next.reserve(cands.size() + 1);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (!removed[i]) next.push_back(cands[i]);
            }
            next.push_back(x);
            cands = std::move(next);
            check_candidate_bound(cands.size(), w);
        }
        if (observer) observer(x, cands);
    }
    std::sort(cands.begin(), cands.end());
    return cands;
}

} // namespace

std::vector<ElementId> minimals_det(int n, OracleInterface& oracle, int w, const SelectionObserver& observer) {
    internal_check(n >= 0 && w >= 1, "minimals_det: bad arguments");
    std::vector<ElementId> arrivals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) arrivals[static_cast<std::size_t>(i)] = i;
    return run_minimals(oracle, w, arrivals, nullptr, observer);
}

std::vector<ElementId> minimals_rand(int n, OracleInterface& oracle, int w, std::uint64_t seed,
                                     const SelectionObserver& observer) {
    internal_check(n >= 0 && w >= 1, "minimals_rand: bad arguments");
    Rng rng(seed);
    std::vector<ElementId> arrivals = rng_permutation(rng, n);
    return run_minimals(oracle, w, arrivals, &rng, observer);
}

namespace {

// One flush: sort `members` through the oracle and keep heights <= k-1.
// Returns the kept ids plus their snapshot heights and maximal flags.
struct FlushResult {
    std::vector<ElementId> kept;
    std::vector<int> height_of;    // indexed like kept
    std::vector<char> maximal_of;  // maximal within the kept set
};

FlushResult flush_sort(OracleInterface& oracle, std::vector<ElementId> members, int w, int k,
                       bool use_entropy, KSelectReport& rep) {
    rep.flushes += 1;
    rep.max_sort_size = std::max(rep.max_sort_size, static_cast<int>(members.size()));
    std::sort(members.begin(), members.end());
    SubsetOracle sub(oracle, members);
    const int m = static_cast<int>(members.size());
    ChainMergeIndex idx = use_entropy ? entropy_sort(m, sub, w) : poset_mergesort(m, sub, w);
    GroundTruthPoset table = idx.relation_table();
    std::vector<int> h = heights_bruteforce(table);
    FlushResult out;
    std::vector<int> kept_local;
    for (int l = 0; l < m; ++l) {
        if (h[static_cast<std::size_t>(l)] <= k - 1) kept_local.push_back(l);
    }
    for (int l : kept_local) {
        out.kept.push_back(members[static_cast<std::size_t>(l)]);
        out.height_of.push_back(h[static_cast<std::size_t>(l)]);
        bool maximal = true;
        for (int o : kept_local) {
            if (o != l && table.dominates(o, l)) {
                maximal = false;
                break;
            }
        }
        out.maximal_of.push_back(maximal ? 1 : 0);
    }
    return out;
}

std::vector<ElementId> sorted_copy(std::vector<ElementId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

std::vector<ElementId> kselect_det(int n, OracleInterface& oracle, int w, int k, KSelectReport* report,
                                   bool use_entropy_sorter, const SelectionObserver& observer) {
    internal_check(n >= 0 && w >= 1 && k >= 1, "kselect_det: bad arguments");
    KSelectReport local;
    KSelectReport& rep = report ? *report : local;
    rep = KSelectReport{};
    const std::int64_t batch = static_cast<std::int64_t>(w) * k;
    std::vector<ElementId> kept;
    int consumed = 0;
    while (consumed < n) {
        std::vector<ElementId> members = kept;
        const int take = static_cast<int>(std::min<std::int64_t>(batch, n - consumed));
        for (int i = 0; i < take; ++i) members.push_back(consumed + i);
        consumed += take;
        FlushResult fr = flush_sort(oracle, std::move(members), w, k, use_entropy_sorter, rep);
        kept = std::move(fr.kept);
        if (observer) observer(consumed - 1, kept);
    }
    return sorted_copy(std::move(kept));
}

std::vector<ElementId> kselect_rand(int n, OracleInterface& oracle, int w, int k, std::uint64_t seed,
                                    KSelectReport* report, const SelectionObserver& observer) {
    internal_check(n >= 0 && w >= 1 && k >= 1, "kselect_rand: bad arguments");
    KSelectReport local;
    KSelectReport& rep = report ? *report : local;
    rep = KSelectReport{};
    Rng rng(seed);
    std::vector<ElementId> order = rng_permutation(rng, n);
    const int first = static_cast<int>(std::min<std::int64_t>(static_cast<std::int64_t>(w) * k, n));
    std::vector<ElementId> initial(order.begin(), order.begin() + first);
    FlushResult cur = flush_sort(oracle, std::move(initial), w, k, false, rep);
    std::vector<ElementId> deferred;

    QueryCounter comparisons(oracle);
    for (int t = first; t < n; ++t) {
        const ElementId x = order[static_cast<std::size_t>(t)];
        // Probe the maximal candidates in random order. The only safe discard
        // is proof of height >= k: x above a snapshot-height-(k-1) candidate.
        std::vector<int> maximals;
        for (std::size_t i = 0; i < cur.kept.size(); ++i) {
            if (cur.maximal_of[i]) maximals.push_back(static_cast<int>(i));
        }
        rng_shuffle(rng, maximals);
        bool discard = false;
        for (int i : maximals) {
            RelationVerdict v = comparisons.query(x, cur.kept[static_cast<std::size_t>(i)]);
            if (v == RelationVerdict::Incomparable) continue;
            if (v == RelationVerdict::Dominates && cur.height_of[static_cast<std::size_t>(i)] == k - 1)
                discard = true;
            break;  // any comparable outcome settles this arrival
        }
        if (!discard) deferred.push_back(x);
        const bool last = t == n - 1;
        if (static_cast<std::int64_t>(deferred.size()) == static_cast<std::int64_t>(w) * k ||
            (last && !deferred.empty())) {
            std::vector<ElementId> members = cur.kept;
            members.insert(members.end(), deferred.begin(), deferred.end());
            deferred.clear();
            cur = flush_sort(oracle, std::move(members), w, k, false, rep);
        }
        if (observer) {
            std::vector<ElementId> alive = cur.kept;
            alive.insert(alive.end(), deferred.begin(), deferred.end());
            observer(x, alive);
        }
    }
    rep.comparison_queries = comparisons.count();
    internal_check(deferred.empty(), "final flush must consume every deferred element");
    return sorted_copy(std::move(cur.kept));
}

} // namespace posetkit
