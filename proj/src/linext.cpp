#include "posetkit/linext.hpp"

#include <algorithm>

#include "posetkit/rng.hpp"

namespace posetkit {

namespace {

std::unique_ptr<TernaryTreeNode> build_node(std::vector<ElementId> universe, OracleInterface& oracle,
                                            Rng& rng, std::uint64_t& weight) {
    if (universe.empty()) return nullptr;
    auto node = std::make_unique<TernaryTreeNode>();
    const std::size_t pick = static_cast<std::size_t>(rng_below(rng, universe.size()));
    node->root = universe[pick];
    universe.erase(universe.begin() + static_cast<std::ptrdiff_t>(pick));
    weight += universe.size();
    std::vector<ElementId> below, middle, above;
    for (ElementId y : universe) {
        switch (oracle.query(y, node->root)) {
        case RelationVerdict::Dominates: above.push_back(y); break;
        case RelationVerdict::DominatedBy: below.push_back(y); break;
        case RelationVerdict::Incomparable: middle.push_back(y); break;
        }
    }
    node->below = build_node(std::move(below), oracle, rng, weight);
    node->middle = build_node(std::move(middle), oracle, rng, weight);
    node->above = build_node(std::move(above), oracle, rng, weight);
    return node;
}

void append_extension(const TernaryTreeNode* node, std::vector<ElementId>& out) {
    if (!node) return;
    append_extension(node->below.get(), out);
    out.push_back(node->root);
    append_extension(node->middle.get(), out);
    append_extension(node->above.get(), out);
}

} // namespace

TernaryTree build_ternary_tree(int n, OracleInterface& oracle, std::uint64_t seed) {
    internal_check(n >= 0, "build_ternary_tree: bad arguments");
    Rng rng(seed);
    std::vector<ElementId> universe(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) universe[static_cast<std::size_t>(i)] = i;
    TernaryTree t;
    t.size = n;
    t.root = build_node(std::move(universe), oracle, rng, t.weight);
    return t;
}

std::vector<ElementId> linear_extension(const TernaryTree& tree) {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(tree.size));
    append_extension(tree.root.get(), out);
    internal_check(static_cast<int>(out.size()) == tree.size, "extension must cover the universe");
    return out;
}

bool extension_valid(const GroundTruthPoset& p, const std::vector<ElementId>& ext) {
    if (static_cast<int>(ext.size()) != p.size()) return false;
    std::vector<int> position(ext.size(), -1);
    for (std::size_t i = 0; i < ext.size(); ++i) {
        ElementId e = ext[i];
        if (e < 0 || e >= p.size() || position[static_cast<std::size_t>(e)] != -1) return false;
        position[static_cast<std::size_t>(e)] = static_cast<int>(i);
    }
    for (int x = 0; x < p.size(); ++x) {
        for (int y = 0; y < p.size(); ++y) {
            if (p.dominates(x, y) && position[static_cast<std::size_t>(x)] < position[static_cast<std::size_t>(y)])
                return false;
        }
    }
    return true;
}

std::vector<int> heights_from_extension(const std::vector<ElementId>& ext, OracleInterface& oracle, int w) {
    internal_check(w >= 1, "heights_from_extension: bad arguments");
    const int n = static_cast<int>(ext.size());
    std::vector<int> h(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<ElementId>> frontier;  // frontier[h] = placed elements of height h
    for (ElementId x : ext) {
        internal_check(x >= 0 && x < n && h[static_cast<std::size_t>(x)] == -1,
                       "input is not a permutation of [0, n)");
        // Dominating one member of level h means dominating members of every
        // level below it, so the test is monotone; find the first level that
        // fails.
        auto level_hit = [&](int lvl) {
            for (ElementId y : frontier[static_cast<std::size_t>(lvl)]) {
                if (oracle.query(x, y) == RelationVerdict::Dominates) return true;
            }
            return false;
        };
        int lo = 0, hi = static_cast<int>(frontier.size());
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (level_hit(mid))
                lo = mid + 1;
            else
                hi = mid;
        }
        const int hx = lo;
        h[static_cast<std::size_t>(x)] = hx;
        if (hx == static_cast<int>(frontier.size())) frontier.emplace_back();
        frontier[static_cast<std::size_t>(hx)].push_back(x);
        if (static_cast<int>(frontier[static_cast<std::size_t>(hx)].size()) > w)
            throw InvalidExtension("a height level exceeded the width bound; extension or bound is wrong");
    }
    return h;
}

} // namespace posetkit
