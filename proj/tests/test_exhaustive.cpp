#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Cross-module sweep over every labeled poset on 4 elements and a slice of
// the 5-element family: each algorithm must agree with brute force on every
// single instance, whatever its shape.

#include "helpers.hpp"
#include "posetkit/counting.hpp"
#include "posetkit/linext.hpp"
#include "posetkit/selection.hpp"
#include "posetkit/sorting.hpp"

using namespace posetkit;
using namespace posetkit::testing;

namespace {

void check_everything(const GroundTruthPoset& p, std::uint64_t seed, bool include_entropy) {
    const int n = p.size();
    const int w = width(p);
    GroundTruthOracle oracle(p);
    CHECK(bin_insertion_sort(n, oracle, w).relation_table() == p);
    CHECK(poset_mergesort(n, oracle, w).relation_table() == p);
    CHECK(sort_unknown_width(n, oracle).relation_table() == p);
    if (include_entropy) CHECK(entropy_sort(n, oracle, w).relation_table() == p);
    CHECK(minimals_det(n, oracle, w) == kselect_bruteforce(p, 1));
    CHECK(minimals_rand(n, oracle, w, seed) == kselect_bruteforce(p, 1));
    for (int k : {1, 2}) {
        CHECK(kselect_det(n, oracle, w, k) == kselect_bruteforce(p, k));
        CHECK(kselect_rand(n, oracle, w, k, seed + k) == kselect_bruteforce(p, k));
    }
    auto ext = linear_extension(build_ternary_tree(n, oracle, seed));
    CHECK(extension_valid(p, ext));
    CHECK(heights_from_extension(ext, oracle, w) == heights_bruteforce(p));
}

} // namespace

TEST_CASE("every labeled poset on 4 elements") {
    std::uint64_t idx = 0;
    std::uint64_t total = for_each_width_extension(GroundTruthPoset(), 4, {}, 4, [&](const SmallPoset& sp) {
        check_everything(sp.to_poset(), ++idx, true);
    });
    CHECK(total == 219);
}

TEST_CASE("a slice of the 5-element family") {
    std::uint64_t idx = 0;
    std::uint64_t total = for_each_width_extension(GroundTruthPoset(), 5, {}, 5, [&](const SmallPoset& sp) {
        ++idx;
        if (idx % 13 != 0) return;  // 325 of the 4231 posets
        check_everything(sp.to_poset(), idx, idx % 39 == 0);
    });
    CHECK(total == 4231);
}
