#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "posetkit/counting.hpp"
#include "posetkit/sorting.hpp"

using namespace posetkit;
using namespace posetkit::testing;

namespace {

double log2u(std::uint64_t v) { return std::log2(static_cast<double>(v)); }

} // namespace

TEST_CASE("interval partition boundaries are exact prefix ratios") {
    auto part = WeightedIntervalPartition::from_weights({3, 0, 1, 4});
    CHECK(part.interval_count() == 4);
    CHECK(part.total() == 8);
    CHECK(part.boundary_numerator(0) == 0);
    CHECK(part.boundary_numerator(2) == 3);  // zero-weight interval collapses
    CHECK(part.boundary_numerator(4) == 8);
    CHECK(part.weight(2) == 0);
    // x = 1/2 lies in the last interval [4/8, 8/8).
    CHECK(part.locate(1, 1) == 4);
    // x = 3/8 lies in [3/8, 4/8): the weight-1 interval, never the empty one.
    CHECK(part.locate(3, 3) == 3);
    CHECK(part.locate(0, 1) == 1);
}

TEST_CASE("halving search hand traces") {
    // Two equal intervals, target the upper: one round.
    {
        auto part = WeightedIntervalPartition::from_weights({1, 1});
        int probes = 0;
        auto out = weighted_binary_search(part, [&](int j) {
            ++probes;
            return j == 2 ? ProbeResult::Stop : ProbeResult::LookAbove;
        });
        CHECK(out.index == 2);
        CHECK(probes <= 2 * (1 + 1));
    }
    // Single interval: immediate stop.
    {
        auto part = WeightedIntervalPartition::from_weights({5});
        auto out = weighted_binary_search(part, [&](int) { return ProbeResult::Stop; });
        CHECK(out.index == 1);
        CHECK(out.rounds == 1);
    }
    // Weights {3, 1}: the 1/4 target costs at most 3 rounds, bound is 6.
    {
        auto part = WeightedIntervalPartition::from_weights({3, 1});
        int probes = 0;
        auto out = weighted_binary_search(part, [&](int j) {
            ++probes;
            return j == 2 ? ProbeResult::Stop : ProbeResult::LookAbove;
        });
        CHECK(out.index == 2);
        CHECK(probes <= 3);
        CHECK(probes <= 2 * (1 + floor_log2_ratio(part.total(), part.weight(2))));
    }
}

TEST_CASE("halving search round bound holds on random partitions") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + static_cast<int>(rng_below(rng, 9));
        std::vector<std::uint64_t> weights;
        for (int i = 0; i < m; ++i) weights.push_back(rng_below(rng, 50));
        std::uint64_t total = 0;
        for (auto w : weights) total += w;
        if (total == 0) weights[0] = 1;
        auto part = WeightedIntervalPartition::from_weights(weights);
        // Target a random positive-weight interval.
        int target;
        do {
            target = 1 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(m)));
        } while (part.weight(target) == 0);
        auto out = weighted_binary_search(part, [&](int j) {
            if (j == target) return ProbeResult::Stop;
            return j < target ? ProbeResult::LookAbove : ProbeResult::LookBelow;
        });
        CHECK(out.index == target);
        CHECK(out.rounds <= 1 + floor_log2_ratio(part.total(), part.weight(target)));
    }
}

TEST_CASE("halving search rejects inconsistent probes") {
    auto part = WeightedIntervalPartition::from_weights({1, 1, 1, 1});
    CHECK_THROWS_AS(weighted_binary_search(part, [&](int) { return ProbeResult::LookBelow; }),
                    InconsistentProbe);
    int flip = 0;
    CHECK_THROWS_AS(weighted_binary_search(part,
                                           [&](int) {
                                               return ++flip % 2 ? ProbeResult::LookAbove
                                                                 : ProbeResult::LookBelow;
                                           }),
                    InconsistentProbe);
}

TEST_CASE("floor_log2_ratio") {
    CHECK(floor_log2_ratio(8, 1) == 3);
    CHECK(floor_log2_ratio(9, 1) == 3);
    CHECK(floor_log2_ratio(7, 1) == 2);
    CHECK(floor_log2_ratio(5, 5) == 0);
    CHECK(floor_log2_ratio(10, 5) == 1);
}

TEST_CASE("binary insertion sorts a total order within the hand count") {
    auto p = total_order(8);
    GroundTruthOracle inner(p);
    QueryCounter o(inner);
    auto idx = bin_insertion_sort(8, o, 1);
    CHECK(idx.relation_table() == p);
    CHECK(o.count() <= 34);  // sum of 2*ceil(log2(i+1)) over the insertions
}

TEST_CASE("binary insertion on an antichain") {
    auto p = antichain(5);
    GroundTruthOracle o(p);
    auto idx = bin_insertion_sort(5, o, 5);
    CHECK(idx.relation_table() == p);
}

TEST_CASE("binary insertion meets its 4wn log n budget on the chain model") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = generate_chain_union(64, 4, seed);
        GroundTruthOracle inner(p);
        QueryCounter o(inner);
        auto idx = bin_insertion_sort(64, o, 4);
        CHECK(idx.relation_table() == p);
        CHECK(o.count() <= 4ull * 4 * 64 * 6);
    }
}

TEST_CASE("binary insertion reports an impossible width bound") {
    auto p = antichain(4);
    GroundTruthOracle o(p);
    CHECK_THROWS_AS(bin_insertion_sort(4, o, 2), WidthExceeded);
}

TEST_CASE("binary insertion incremental decomposition survives dense instances") {
    // Regression: the warm-started matching once left a stale successor link
    // when one augmenting path consumed both slots of the new element.
    for (int n : {8, 16, 48}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto p = generate_width_bounded(n, 8, seed);
            GroundTruthOracle o(p);
            auto idx = bin_insertion_sort(n, o, 8);
            CHECK(idx.relation_table() == p);
            CHECK(idx.chain_count() <= 8);
        }
    }
}

TEST_CASE("entropy sort on two elements") {
    // Incomparable pair, w = 2: at most 2 log2(3) + 16 queries.
    {
        auto p = antichain(2);
        GroundTruthOracle inner(p);
        QueryCounter o(inner);
        auto idx = entropy_sort(2, o, 2);
        CHECK(idx.relation_table() == p);
        CHECK(static_cast<double>(o.count()) <= 2 * log2u(3) + 16);
    }
    // Comparable pair, w = 1: bound 2 log2(2) + 8 = 10.
    {
        auto p = total_order(2);
        GroundTruthOracle inner(p);
        QueryCounter o(inner);
        auto idx = entropy_sort(2, o, 1);
        CHECK(idx.relation_table() == p);
        CHECK(static_cast<double>(o.count()) <= 10.0);
    }
}

TEST_CASE("entropy sort matches ground truth within its bound") {
    for (int n : {5, 6}) {
        for (int w : {2, 3}) {
            const std::uint64_t big_n = count_width_extensions(GroundTruthPoset(), n, {}, w);
            for (std::uint64_t seed = 0; seed < 12; ++seed) {
                auto p = generate_width_bounded(n, w, seed);
                GroundTruthOracle inner(p);
                QueryCounter o(inner);
                auto idx = entropy_sort(n, o, w);
                CHECK(idx.relation_table() == p);
                CHECK(static_cast<double>(o.count()) <= 2 * log2u(big_n) + 4.0 * w * n);
            }
        }
    }
}

TEST_CASE("entropy sort is capped") {
    auto p = antichain(9);
    GroundTruthOracle o(p);
    CHECK_THROWS_AS(entropy_sort(9, o, 9), CapExceeded);
}

TEST_CASE("peel merges three singletons into two chains") {
    auto p = GroundTruthPoset::from_edges(3, {{1, 0}});
    GroundTruthOracle o(p);
    ChainDecomposition d{{{0}, {1}, {2}}};
    auto out = peel(o, std::move(d), 2);
    CHECK(out.size() == 2);
    CHECK(decomposition_valid(p, out));
}

TEST_CASE("peel returns small decompositions unchanged") {
    auto p = total_order(4);
    GroundTruthOracle inner(p);
    QueryCounter o(inner);
    ChainDecomposition d{{{0, 1}, {2, 3}}};
    auto out = peel(o, d, 2);
    CHECK(out.chains == d.chains);
    CHECK(o.count() == 0);
}

TEST_CASE("peel reduces a split-and-concatenated decomposition") {
    auto p = generate_chain_union(100, 3, 13);
    // Split by id parity into two halves and decompose each, giving up to six
    // chains over the full set.
    std::vector<ElementId> a, b;
    for (int i = 0; i < 100; ++i) (i % 2 ? a : b).push_back(i);
    ChainDecomposition combined;
    for (auto* part : {&a, &b}) {
        auto ind = p.induced(*part);
        for (auto& ch : min_chain_decomposition(ind).chains) {
            std::vector<ElementId> global;
            for (ElementId l : ch) global.push_back((*part)[static_cast<std::size_t>(l)]);
            combined.chains.push_back(std::move(global));
        }
    }
    REQUIRE(combined.size() <= 6);
    GroundTruthOracle inner(p);
    QueryCounter o(inner);
    const int q = combined.size();
    auto out = peel(o, std::move(combined), 3);
    CHECK(out.size() == 3);
    CHECK(decomposition_valid(p, out));
    CHECK(o.count() <= 2ull * static_cast<std::uint64_t>(q) * 100);
}

TEST_CASE("peel signals an impossible width bound") {
    auto p = antichain(3);
    GroundTruthOracle o(p);
    ChainDecomposition d{{{0}, {1}, {2}}};
    CHECK_THROWS_AS(peel(o, std::move(d), 2), WidthExceeded);
}

TEST_CASE("mergesort on a total order meets the exact budget") {
    auto p = total_order(16);
    GroundTruthOracle inner(p);
    QueryCounter o(inner);
    MergesortReport rep;
    auto idx = poset_mergesort(16, o, 1, &rep);
    CHECK(idx.relation_table() == p);
    CHECK(rep.recursion_queries <= 2ull * 1 * 16 * 4);
    CHECK(rep.final_build_queries <= 2ull * 1 * 16);
    CHECK(o.count() == rep.recursion_queries + rep.final_build_queries);
}

TEST_CASE("mergesort base case covers small antichains") {
    auto p = antichain(6);
    GroundTruthOracle inner(p);
    QueryCounter o(inner);
    MergesortReport rep;
    auto idx = poset_mergesort(6, o, 6, &rep);
    CHECK(idx.relation_table() == p);
    CHECK(rep.recursion_queries == 0);  // the whole input is one base case
    CHECK(rep.final_build_queries <= 2ull * 6 * 6);
}

TEST_CASE("mergesort equality and query bounds over both models") {
    for (int n : {16, 64, 256}) {
        for (int w : {1, 2, 4, 8}) {
            for (std::uint64_t seed = 0; seed < 2; ++seed) {
                auto p = seed % 2 ? generate_width_bounded(n, w, seed) : generate_chain_union(n, w, seed);
                GroundTruthOracle inner(p);
                QueryCounter o(inner);
                MergesortReport rep;
                auto chain_elements = [](const ChainDecomposition& d) {
                    std::vector<ElementId> ids;
                    for (const auto& ch : d.chains) ids.insert(ids.end(), ch.begin(), ch.end());
                    std::sort(ids.begin(), ids.end());
                    return ids;
                };
                PeelObserver obs = [&](const ChainDecomposition& in, const ChainDecomposition& out) {
                    CHECK(in.size() <= 2 * w);
                    CHECK(out.size() == w);
                    CHECK(chain_elements(in) == chain_elements(out));
                    for (const auto& ch : out.chains) {
                        for (std::size_t i = 1; i < ch.size(); ++i) CHECK(p.dominates(ch[i], ch[i - 1]));
                    }
                };
                auto idx = poset_mergesort(n, o, w, &rep, obs);
                CHECK(idx.relation_table() == p);
                const double budget = 2.0 * w * n * std::log2(static_cast<double>(n) / w);
                CHECK(static_cast<double>(rep.recursion_queries) <= budget + 1e-9);
                CHECK(rep.final_build_queries <= 2ull * static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(n));
            }
        }
    }
}

TEST_CASE("mergesort output decomposition stays within w chains") {
    auto p = generate_width_bounded(96, 4, 8);
    GroundTruthOracle o(p);
    auto idx = poset_mergesort(96, o, 4);
    CHECK(idx.chain_count() <= 4);
    CHECK(decomposition_valid(p, idx.decomposition()));
}

TEST_CASE("unknown width doubles 2, 4, 8 and needs no hint") {
    {
        auto p = total_order(8);
        GroundTruthOracle o(p);
        UnknownWidthReport rep;
        auto idx = sort_unknown_width(8, o, &rep);
        CHECK(idx.relation_table() == p);
        CHECK(rep.attempted_bounds == std::vector<int>{2});
    }
    {
        auto p = antichain(4);
        GroundTruthOracle o(p);
        UnknownWidthReport rep;
        auto idx = sort_unknown_width(4, o, &rep);
        CHECK(idx.relation_table() == p);
        CHECK(rep.attempted_bounds == std::vector<int>{2, 4});
    }
    {
        auto p = generate_chain_union(64, 3, 5);
        REQUIRE(width(p) == 3);
        GroundTruthOracle o(p);
        UnknownWidthReport rep;
        auto idx = sort_unknown_width(64, o, &rep);
        CHECK(idx.relation_table() == p);
        CHECK(rep.attempted_bounds == std::vector<int>{2, 4});  // fails at 2, succeeds at 4
    }
}

TEST_CASE("degenerate sizes run cleanly") {
    for (int n : {0, 1, 2}) {
        auto p = antichain(n);
        GroundTruthOracle o(p);
        CHECK(bin_insertion_sort(n, o, std::max(n, 1)).relation_table() == p);
        CHECK(poset_mergesort(n, o, std::max(n, 1)).relation_table() == p);
        if (n > 0) CHECK(sort_unknown_width(n, o).relation_table() == p);
        CHECK(entropy_sort(n, o, std::max(n, 1)).relation_table() == p);
    }
}

TEST_CASE("transitive sorting recovers the full relation") {
    // Plain poset: nothing extra to recover.
    {
        auto p = generate_width_bounded(12, 3, 2);
        auto t = TransitiveRelation::from_poset_with_mutuals(p, 0, 0);
        TransitiveRelationOracle inner(t);
        TransitiveOracleAdapter adapter(inner);
        TransitiveSortReport rep;
        auto rel = sort_transitive(12, adapter, 3, &rep);
        CHECK(rel == t);
    }
    // Mutual pairs come back in both directions.
    {
        auto base = total_order(2);
        auto t = TransitiveRelation::from_poset_with_mutuals(base, 1, 1);
        TransitiveRelationOracle inner(t);
        TransitiveOracleAdapter adapter(inner);
        auto rel = sort_transitive(2, adapter, 1, nullptr);
        CHECK(rel.holds(0, 1));
        CHECK(rel.holds(1, 0));
    }
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 6;
        auto base = generate_width_bounded(n, 3, seed);
        auto t = TransitiveRelation::from_poset_with_mutuals(base, 3, seed + 7);
        TransitiveRelationOracle inner(t);
        TransitiveOracleAdapter adapter(inner);
        TransitiveSortReport rep;
        auto rel = sort_transitive(n, adapter, 3, &rep);
        CHECK(rel == t);
        CHECK(rep.phase2_inner_queries <= 2ull * n * 3);
    }
}
