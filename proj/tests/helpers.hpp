#ifndef POSETKIT_TEST_HELPERS_HPP
#define POSETKIT_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "posetkit/poset.hpp"

namespace posetkit::testing {

// Independent width oracle: maximum antichain by subset enumeration. Only for
// small n; deliberately unrelated to the matching-based implementation.
inline int max_antichain_bruteforce(const GroundTruthPoset& p) {
    const int n = p.size();
    internal_check(n <= 20, "brute-force antichain only for small n");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool antichain = true;
        for (int a = 0; a < n && antichain; ++a) {
            if (!((mask >> a) & 1u)) continue;
            for (int b = a + 1; b < n && antichain; ++b) {
                if (((mask >> b) & 1u) && p.comparable(a, b)) antichain = false;
            }
        }
        if (antichain) best = size;
    }
    return best;
}

inline GroundTruthPoset diamond() {
    // 3 over {1, 2} over 0.
    return GroundTruthPoset::from_edges(4, {{3, 1}, {3, 2}, {1, 0}, {2, 0}});
}

inline GroundTruthPoset total_order(int n) {
    std::vector<std::pair<ElementId, ElementId>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i - 1);
    return GroundTruthPoset::from_edges(n, edges);
}

inline GroundTruthPoset antichain(int n) { return GroundTruthPoset::from_edges(n, {}); }

// Sizes of the comparability components; for a union of mutually incomparable
// chains these are exactly the chain sizes.
inline std::vector<int> comparability_component_sizes(const GroundTruthPoset& p) {
    const int n = p.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> sizes;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        int size = 0;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++size;
            for (int y = 0; y < n; ++y) {
                if (!seen[static_cast<std::size_t>(y)] && p.comparable(x, y)) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
        sizes.push_back(size);
    }
    return sizes;
}

} // namespace posetkit::testing

#endif
