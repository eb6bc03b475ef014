#include "posetkit/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace posetkit {

namespace {

constexpr int kMaxCap = 12;

using Mask = std::uint16_t;

inline Mask bit(int i) { return static_cast<Mask>(Mask{1} << i); }

struct SearchState {
    int m = 0;
    int w = 0;
    std::array<Mask, kMaxCap> down{};  // i dominates j
    std::array<Mask, kMaxCap> up{};    // j dominates i
    std::array<Mask, kMaxCap> nod{};   // i-dominates-j is ruled out
    std::array<Mask, kMaxCap> inc{};   // decided incomparable (both directions ruled out)

    bool decided(int i, int j) const {
        return ((down[static_cast<std::size_t>(i)] | nod[static_cast<std::size_t>(i)]) >> j) & 1u;
    }
};

int max_clique_size(const std::array<Mask, kMaxCap>& adj, Mask cand) {
    if (!cand) return 0;
    int v = __builtin_ctz(cand);
    Mask rest = static_cast<Mask>(cand & ~bit(v));
    int skip = max_clique_size(adj, rest);
    int take = 1 + max_clique_size(adj, static_cast<Mask>(rest & adj[static_cast<std::size_t>(v)]));
    return take > skip ? take : skip;
}

// Register pair {a, b} as decided incomparable; false when this forces an
// antichain larger than w.
bool add_incomparable_edge(SearchState& s, int a, int b) {
    s.inc[static_cast<std::size_t>(a)] |= bit(b);
    s.inc[static_cast<std::size_t>(b)] |= bit(a);
    if (s.w >= s.m) return true;
    Mask common = static_cast<Mask>(s.inc[static_cast<std::size_t>(a)] & s.inc[static_cast<std::size_t>(b)]);
    return 2 + max_clique_size(s.inc, common) <= s.w;
}

// Rule out i > j and propagate: a > b is also ruled out whenever i >= a and
// b >= j would chain into the forbidden pair.
bool apply_no(SearchState& s, int i, int j) {
    if ((s.down[static_cast<std::size_t>(i)] >> j) & 1u) return false;
    if ((s.nod[static_cast<std::size_t>(i)] >> j) & 1u) return true;
    const Mask above_j = static_cast<Mask>(s.up[static_cast<std::size_t>(j)] | bit(j));
    Mask sources = static_cast<Mask>(s.down[static_cast<std::size_t>(i)] | bit(i));
    while (sources) {
        int a = __builtin_ctz(sources);
        sources = static_cast<Mask>(sources & (sources - 1));
        Mask fresh = static_cast<Mask>(above_j & ~s.nod[static_cast<std::size_t>(a)]);
        if (!fresh) continue;
        s.nod[static_cast<std::size_t>(a)] |= fresh;
        while (fresh) {
            int b = __builtin_ctz(fresh);
            fresh = static_cast<Mask>(fresh & (fresh - 1));
            if ((s.nod[static_cast<std::size_t>(b)] >> a) & 1u) {
                if (!add_incomparable_edge(s, a, b)) return false;
            }
        }
    }
    return true;
}

// Record i > j, close transitively, and mark the reversed pairs impossible.
bool apply_yes(SearchState& s, int i, int j) {
    if (i == j) return false;
    if ((s.nod[static_cast<std::size_t>(i)] >> j) & 1u) return false;
    if ((s.down[static_cast<std::size_t>(j)] >> i) & 1u) return false;  // would cycle
    if ((s.down[static_cast<std::size_t>(i)] >> j) & 1u) return true;
    const Mask srcs = static_cast<Mask>(s.up[static_cast<std::size_t>(i)] | bit(i));
    const Mask dsts = static_cast<Mask>(s.down[static_cast<std::size_t>(j)] | bit(j));
    Mask scan = srcs;
    while (scan) {
        int a = __builtin_ctz(scan);
        scan = static_cast<Mask>(scan & (scan - 1));
        if (s.nod[static_cast<std::size_t>(a)] & dsts) return false;        // hits a ruled-out pair
        if (s.up[static_cast<std::size_t>(a)] & dsts) return false;         // reversed relation exists
    }
    scan = srcs;
    while (scan) {
        int a = __builtin_ctz(scan);
        scan = static_cast<Mask>(scan & (scan - 1));
        s.down[static_cast<std::size_t>(a)] |= dsts;
    }
    scan = dsts;
    while (scan) {
        int b = __builtin_ctz(scan);
        scan = static_cast<Mask>(scan & (scan - 1));
        s.up[static_cast<std::size_t>(b)] |= srcs;
        s.nod[static_cast<std::size_t>(b)] |= srcs;  // b > a now impossible
    }
    return true;
}

struct Enumerator {
    const ExtensionVisitor* visit = nullptr;
    std::uint64_t count = 0;

    void run(const SearchState& s) {
        // Most-constrained first: a pair with one direction already ruled out
        // has two completions, a fully open pair has three.
        int open_i = -1, open_j = -1;
        for (int i = 0; i < s.m; ++i) {
            for (int j = i + 1; j < s.m; ++j) {
                bool dij = s.decided(i, j);
                bool dji = s.decided(j, i);
                if (dij && dji) continue;
                if (dij) {
                    // i > j ruled out; either j > i or incomparable.
                    SearchState t = s;
                    if (apply_yes(t, j, i)) run(t);
                    t = s;
                    if (apply_no(t, j, i)) run(t);
                    return;
                }
                if (dji) {
                    SearchState t = s;
                    if (apply_yes(t, i, j)) run(t);
                    t = s;
                    if (apply_no(t, i, j)) run(t);
                    return;
                }
                if (open_i < 0) {
                    open_i = i;
                    open_j = j;
                }
            }
        }
        if (open_i >= 0) {
            SearchState t = s;
            if (apply_yes(t, open_i, open_j)) run(t);
            t = s;
            if (apply_yes(t, open_j, open_i)) run(t);
            t = s;
            if (apply_no(t, open_i, open_j) && apply_no(t, open_j, open_i)) run(t);
            return;
        }
        ++count;
        if (visit) {
            SmallPoset out;
            out.m = s.m;
            for (int i = 0; i < s.m; ++i) out.down[static_cast<std::size_t>(i)] = s.down[static_cast<std::size_t>(i)];
            (*visit)(out);
        }
    }
};

std::uint64_t enumerate(const GroundTruthPoset& known, int num_unknown, const ConstraintSet& c, int w,
                        const ExtensionVisitor* visit, int cap) {
    if (cap < 0) cap = exhaustive_cap();
    const int p = known.size();
    const int m = p + num_unknown;
    internal_check(num_unknown >= 0 && w >= 1, "count_width_extensions: bad arguments");
    if (m > cap || cap > kMaxCap) {
        throw CapExceeded("exhaustive counting over " + std::to_string(m) + " elements exceeds cap " +
                          std::to_string(std::min(cap, kMaxCap)));
    }
    SearchState s;
    s.m = m;
    s.w = w;
    // Pin the known sub-poset exactly: its relations and its incomparabilities.
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (i == j) continue;
            if (known.dominates(i, j)) {
                if (!apply_yes(s, i, j)) return 0;
            } else if (!apply_no(s, i, j)) {
                return 0;
            }
        }
    }
    for (auto [a, b] : c.enforced) {
        internal_check(a >= 0 && a < m && b >= 0 && b < m && a != b, "constraint pair out of range");
        if (!apply_yes(s, a, b)) return 0;
    }
    for (auto [a, b] : c.prohibited) {
        internal_check(a >= 0 && a < m && b >= 0 && b < m && a != b, "constraint pair out of range");
        if (!apply_no(s, a, b)) return 0;
    }
    Enumerator e;
    e.visit = visit;
    e.run(s);
    return e.count;
}

} // namespace

int exhaustive_cap() {
    if (const char* env = std::getenv("POSETKIT_EXHAUSTIVE_CAP")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, kMaxCap);
    }
    return 8;
}

GroundTruthPoset SmallPoset::to_poset() const {
    std::vector<std::pair<ElementId, ElementId>> edges;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j && dominates(i, j)) edges.emplace_back(i, j);
        }
    }
    return GroundTruthPoset::from_edges(m, edges);
}

std::uint64_t count_width_extensions(const GroundTruthPoset& known, int num_unknown, const ConstraintSet& c,
                                     int w, int cap) {
    return enumerate(known, num_unknown, c, w, nullptr, cap);
}

std::uint64_t for_each_width_extension(const GroundTruthPoset& known, int num_unknown, const ConstraintSet& c,
                                       int w, const ExtensionVisitor& visit, int cap) {
    return enumerate(known, num_unknown, c, w, &visit, cap);
}

} // namespace posetkit
