#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "posetkit/counting.hpp"
#include "posetkit/poset.hpp"

using namespace posetkit;
using namespace posetkit::testing;

TEST_CASE("loader closes transitively") {
    auto p = load_poset_text("n 4\n3 2\n2 1\n1 0\n");
    CHECK(p.dominates(2, 0));  // forced by transitivity
    CHECK(p.dominates(3, 0));
    CHECK(p.relation(0, 3) == RelationVerdict::DominatedBy);
    CHECK(p.relation_count() == 6);
}

TEST_CASE("loader rejects cycles and reflexive edges") {
    CHECK_THROWS_AS(load_poset_text("n 3\n2 1\n1 0\n0 1\n"), CycleError);
    CHECK_THROWS_AS(load_poset_text("n 2\n1 1\n"), CycleError);
}

TEST_CASE("loader rejects malformed input") {
    CHECK_THROWS_AS(load_poset_text("3 2\n"), ParseError);          // missing header
    CHECK_THROWS_AS(load_poset_text("n 3\n1\n"), ParseError);       // bad edge line
    CHECK_THROWS_AS(load_poset_text("n 3\n1 0 7\n"), ParseError);   // trailing token
    CHECK_THROWS_AS(load_poset_text("n 3\n5 0\n"), ParseError);     // out of range
}

TEST_CASE("comments and blank lines are ignored") {
    auto p = load_poset_text("# header comment\n\nn 3\n2 1 # inline\n\n1 0\n");
    CHECK(p.dominates(2, 0));
}

TEST_CASE("diamond closure and width") {
    auto p = diamond();
    CHECK(p.dominates(3, 0));
    CHECK(p.relation(1, 2) == RelationVerdict::Incomparable);
    CHECK(width(p) == 2);
}

TEST_CASE("dump/load round trip reproduces the closure") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = generate_width_bounded(24, 3, seed);
        auto q = load_poset_text(dump_poset(p));
        CHECK(p == q);
    }
}

TEST_CASE("chain union with one chain is a total order") {
    auto p = generate_chain_union(6, 1, 42);
    CHECK(width(p) == 1);
    CHECK(p.relation_count() == 15);
}

TEST_CASE("chain union width never exceeds w") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto p = generate_chain_union(12, 6, seed);
        CHECK(width(p) <= 6);
    }
}

TEST_CASE("width-bounded generator stays within its bound") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto p = generate_width_bounded(10, 3, seed);
        CHECK(width(p) <= 3);
        CHECK(width(p) == max_antichain_bruteforce(p));
    }
}

TEST_CASE("width-bounded generator with w = n admits anything") {
    auto p = generate_width_bounded(5, 5, 7);
    CHECK(width(p) <= 5);
}

TEST_CASE("generated posets are closed, irreflexive, antisymmetric") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto p = generate_width_bounded(48, 4, seed);
        const int n = p.size();
        for (int x = 0; x < n; ++x) {
            CHECK_FALSE(p.dominates(x, x));
            for (int y = 0; y < n; ++y) {
                if (x != y) CHECK_FALSE((p.dominates(x, y) && p.dominates(y, x)));
            }
        }
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (!p.dominates(x, y)) continue;
                for (int z = 0; z < n; ++z) {
                    if (p.dominates(y, z)) CHECK(p.dominates(x, z));
                }
            }
        }
    }
}

TEST_CASE("chain sizes of the w-chain model concentrate") {
    // Each element joins one of 4 chains uniformly; at n = 1000 a chain
    // outside [125, 375] is a large-deviation event, essentially never seen
    // across ten thousand samples. Within a chain of size s the down-set
    // sizes are exactly 0..s-1, so cnt[k] = #elements with |down| = k equals
    // the number of chains of size at least k+1.
    const int n = 1000;
    int violations = 0;
    std::vector<int> cnt(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto p = generate_chain_union(n, 4, seed);
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int x = 0; x < n; ++x) {
            int below = 0;
            for (int wd = 0; wd < p.row_words(); ++wd)
                below += __builtin_popcountll(p.row(x)[wd]);
            ++cnt[static_cast<std::size_t>(below)];
        }
        for (int s = 1; s <= n; ++s) {
            int chains_of_size_s = cnt[static_cast<std::size_t>(s - 1)] - (s < n ? cnt[static_cast<std::size_t>(s)] : 0);
            if (chains_of_size_s > 0 && (s < 125 || s > 375)) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("width equals decomposition size and decompositions are valid") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto p = seed % 2 ? generate_width_bounded(14, 4, seed) : generate_chain_union(14, 4, seed);
        auto d = min_chain_decomposition(p);
        CHECK(d.size() == width(p));
        CHECK(decomposition_valid(p, d));
        CHECK(width(p) == max_antichain_bruteforce(p));
    }
}

TEST_CASE("decomposition on canonical shapes") {
    CHECK(min_chain_decomposition(total_order(5)).size() == 1);
    CHECK(min_chain_decomposition(antichain(3)).size() == 3);
    CHECK(width(total_order(5)) == 1);
    CHECK(width(antichain(3)) == 3);
    auto d = min_chain_decomposition(diamond());
    CHECK(d.size() == 2);
    CHECK(decomposition_valid(diamond(), d));
}

TEST_CASE("heights on canonical shapes") {
    auto hd = heights_bruteforce(diamond());
    CHECK(hd == std::vector<int>{0, 1, 1, 2});
    CHECK(heights_bruteforce(antichain(4)) == std::vector<int>{0, 0, 0, 0});
    CHECK(heights_bruteforce(total_order(3)) == std::vector<int>{0, 1, 2});
}

TEST_CASE("height properties on random instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto p = generate_width_bounded(32, 4, seed);
        auto h = heights_bruteforce(p);
        for (int x = 0; x < p.size(); ++x) {
            bool minimal = true;
            for (int y = 0; y < p.size(); ++y) {
                if (y != x && p.dominates(x, y)) minimal = false;
            }
            CHECK((h[static_cast<std::size_t>(x)] == 0) == minimal);
            for (int y = 0; y < p.size(); ++y) {
                if (x != y && p.dominates(x, y))
                    CHECK(h[static_cast<std::size_t>(x)] > h[static_cast<std::size_t>(y)]);
            }
        }
    }
}

TEST_CASE("bottom-k levels on canonical shapes") {
    CHECK(kselect_bruteforce(diamond(), 1) == std::vector<ElementId>{0});
    CHECK(kselect_bruteforce(diamond(), 2) == std::vector<ElementId>{0, 1, 2});
    // Two disjoint 3-chains: bottom two of each.
    auto p = GroundTruthPoset::from_edges(6, {{1, 0}, {2, 1}, {4, 3}, {5, 4}});
    CHECK(kselect_bruteforce(p, 2) == std::vector<ElementId>{0, 1, 3, 4});
    CHECK(kselect_bruteforce(p, 9) == std::vector<ElementId>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("poset-count bounds collapse at w = 1 and (1, 1)") {
    for (int n : {1, 2, 5, 9, 30}) {
        auto b = nposets_bounds(n, 1);
        CHECK(b.lower == doctest::Approx(b.upper).epsilon(1e-12));
        double lf = 0;
        for (int i = 2; i <= n; ++i) lf += std::log2(static_cast<double>(i));
        CHECK(b.lower == doctest::Approx(lf).epsilon(1e-9));
    }
    auto unit = nposets_bounds(1, 1);
    CHECK(unit.lower == doctest::Approx(0.0));
    CHECK(unit.upper == doctest::Approx(0.0));
}

TEST_CASE("poset-count bounds bracket exhaustive counts") {
    // Counted family sizes for n <= 7, all w <= n, against the two-sided
    // formula in log2 space.
    for (int n = 1; n <= 6; ++n) {
        for (int w = 1; w <= n; ++w) {
            std::uint64_t count = count_width_extensions(GroundTruthPoset(), n, {}, w, 8);
            double log2c = std::log2(static_cast<double>(count));
            auto b = nposets_bounds(n, w);
            CHECK(b.lower <= log2c + 1e-9);
            CHECK(log2c <= b.upper + 1e-9);
        }
    }
    for (int w : {1, 2, 3, 7}) {
        std::uint64_t count = count_width_extensions(GroundTruthPoset(), 7, {}, w, 8);
        double log2c = std::log2(static_cast<double>(count));
        auto b = nposets_bounds(7, w);
        CHECK(b.lower <= log2c + 1e-9);
        CHECK(log2c <= b.upper + 1e-9);
    }
    // The n = 8, w = 2 family is the largest exhaustively counted cross-check.
    {
        std::uint64_t count = count_width_extensions(GroundTruthPoset(), 8, {}, 2, 8);
        double log2c = std::log2(static_cast<double>(count));
        auto b = nposets_bounds(8, 2);
        CHECK(b.lower <= log2c + 1e-9);
        CHECK(log2c <= b.upper + 1e-9);
    }
}
