#include "posetkit/poset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "posetkit/rng.hpp"

namespace posetkit {

const char* to_string(RelationVerdict v) {
    switch (v) {
    case RelationVerdict::Dominates: return "dominates";
    case RelationVerdict::DominatedBy: return "dominated-by";
    default: return "incomparable";
    }
}

namespace {

int words_for(int n) { return (n + 63) / 64; }

} // namespace

GroundTruthPoset GroundTruthPoset::from_edges(int n, const std::vector<std::pair<ElementId, ElementId>>& edges) {
    if (n < 0) throw ParseError("negative element count");
    GroundTruthPoset p;
    p.n_ = n;
    p.words_ = words_for(n);
    p.down_.assign(static_cast<std::size_t>(n) * p.words_, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("edge endpoint out of range");
        if (u == v) throw CycleError("reflexive edge " + std::to_string(u));
        p.down_[static_cast<std::size_t>(u) * p.words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    }
    p.close_and_check();
    return p;
}

void GroundTruthPoset::close_and_check() {
    // Warshall over bit rows: reachability by paths of length >= 1.
    for (int k = 0; k < n_; ++k) {
        const std::uint64_t* rk = row(k);
        for (int x = 0; x < n_; ++x) {
            if (!dominates(x, k)) continue;
            std::uint64_t* rx = down_.data() + static_cast<std::size_t>(x) * words_;
            for (int wds = 0; wds < words_; ++wds) rx[wds] |= rk[wds];
        }
    }
    for (int x = 0; x < n_; ++x) {
        if (dominates(x, x)) throw CycleError("closure contains a cycle through element " + std::to_string(x));
    }
}

GroundTruthPoset GroundTruthPoset::from_closure_rows(int n, std::vector<std::uint64_t> rows) {
    GroundTruthPoset p;
    p.n_ = n;
    p.words_ = words_for(n);
    internal_check(rows.size() == static_cast<std::size_t>(n) * p.words_, "closure row size mismatch");
    p.down_ = std::move(rows);
    for (int x = 0; x < n; ++x) {
        if (p.dominates(x, x)) throw CycleError("reflexive relation in closure rows");
        for (int y = x + 1; y < n; ++y) {
            if (p.dominates(x, y) && p.dominates(y, x)) throw CycleError("two-cycle in closure rows");
        }
    }
    // Transitivity: everything below x's descendants is below x.
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (!p.dominates(x, y)) continue;
            const std::uint64_t* ry = p.row(y);
            const std::uint64_t* rx = p.row(x);
            for (int wds = 0; wds < p.words_; ++wds) {
                if (ry[wds] & ~rx[wds]) throw CycleError("rows are not transitively closed");
            }
        }
    }
    return p;
}

std::vector<std::pair<ElementId, ElementId>> GroundTruthPoset::closure_edges() const {
    std::vector<std::pair<ElementId, ElementId>> e;
    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
            if (dominates(x, y)) e.emplace_back(x, y);
        }
    }
    return e;
}

std::size_t GroundTruthPoset::relation_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : down_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

GroundTruthPoset GroundTruthPoset::induced(const std::vector<ElementId>& ids) const {
    const int m = static_cast<int>(ids.size());
    GroundTruthPoset p;
    p.n_ = m;
    p.words_ = words_for(m);
    p.down_.assign(static_cast<std::size_t>(m) * p.words_, 0);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (a != b && dominates(ids[a], ids[b]))
                p.down_[static_cast<std::size_t>(a) * p.words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
        }
    }
    return p;
}

int ChainDecomposition::element_count() const {
    int c = 0;
    for (const auto& ch : chains) c += static_cast<int>(ch.size());
    return c;
}

bool decomposition_valid(const GroundTruthPoset& p, const ChainDecomposition& d) {
    std::vector<char> seen(p.size(), 0);
    for (const auto& ch : d.chains) {
        if (ch.empty()) return false;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            ElementId e = ch[i];
            if (e < 0 || e >= p.size() || seen[e]) return false;
            seen[e] = 1;
            if (i > 0 && !p.dominates(e, ch[i - 1])) return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

GroundTruthPoset load_poset(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<ElementId, ElementId>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (n < 0) {
            long count;
            if (tok != "n" || !(ls >> count) || count < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected header 'n <count>'");
            std::string extra;
            if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after header");
            n = static_cast<int>(count);
            continue;
        }
        long u, v;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> u >> v)) throw ParseError("line " + std::to_string(lineno) + ": expected '<u> <v>'");
        if (es >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after edge");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("line " + std::to_string(lineno) + ": element out of range");
        edges.emplace_back(static_cast<ElementId>(u), static_cast<ElementId>(v));
    }
    if (n < 0) throw ParseError("missing 'n <count>' header");
    return GroundTruthPoset::from_edges(n, edges);
}

GroundTruthPoset load_poset_text(const std::string& text) {
    std::istringstream in(text);
    return load_poset(in);
}

GroundTruthPoset load_poset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open poset file: " + path);
    return load_poset(in);
}

std::string dump_poset(const GroundTruthPoset& p) {
    std::ostringstream out;
    out << "n " << p.size() << "\n";
    for (int x = 0; x < p.size(); ++x) {
        for (int y = 0; y < p.size(); ++y) {
            if (p.dominates(x, y)) out << x << " " << y << "\n";
        }
    }
    return out.str();
}

GroundTruthPoset GroundTruthPoset::from_trusted_closure(int n, std::vector<std::uint64_t> rows) {
    GroundTruthPoset p;
    p.n_ = n;
    p.words_ = words_for(n);
    internal_check(rows.size() == static_cast<std::size_t>(n) * p.words_, "closure row size mismatch");
    p.down_ = std::move(rows);
    return p;
}

GroundTruthPoset generate_chain_union(int n, int w, std::uint64_t seed) {
    internal_check(n >= 0 && w >= 1 && w <= std::max(n, 1), "generate_chain_union: need 1 <= w <= n");
    Rng rng(seed);
    std::vector<std::vector<ElementId>> members(w);
    for (int x = 0; x < n; ++x) members[rng_below(rng, static_cast<std::uint64_t>(w))].push_back(x);
    const int words = words_for(n);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
    for (auto& chain : members) {
        rng_shuffle(rng, chain);  // chain[0] is the smallest element
        // Closed by construction: each element dominates its whole prefix.
        for (std::size_t i = 1; i < chain.size(); ++i) {
            std::uint64_t* row = rows.data() + static_cast<std::size_t>(chain[i]) * words;
            const std::uint64_t* prev = rows.data() + static_cast<std::size_t>(chain[i - 1]) * words;
            for (int wd = 0; wd < words; ++wd) row[wd] |= prev[wd];
            row[chain[i - 1] >> 6] |= std::uint64_t{1} << (chain[i - 1] & 63);
        }
    }
    return GroundTruthPoset::from_trusted_closure(n, std::move(rows));
}

GroundTruthPoset generate_width_bounded(int n, int w, std::uint64_t seed) {
    GroundTruthPoset p = generate_chain_union(n, w, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int words = p.words_;
    for (ElementId x = 0; x < n; ++x) {
        for (ElementId y = 0; y < n; ++y) {
            if (x == y || p.comparable(x, y)) continue;
            if (rng_below(rng, static_cast<std::uint64_t>(w)) != 0) continue;
            // Accept x > y; incomparability means no cycle can result. Close
            // incrementally: everything at or above x now dominates y's down-set.
            const std::uint64_t ybit = std::uint64_t{1} << (y & 63);
            std::vector<std::uint64_t> ydown(p.row(y), p.row(y) + words);
            for (ElementId a = 0; a < n; ++a) {
                if (a != x && !p.dominates(a, x)) continue;
                std::uint64_t* ra = p.down_.data() + static_cast<std::size_t>(a) * words;
                for (int wd = 0; wd < words; ++wd) ra[wd] |= ydown[wd];
                ra[y >> 6] |= ybit;
            }
        }
    }
    return p;
}

namespace {

// Hopcroft-Karp over the closure digraph. Left side: an element looking for
// its immediate chain successor; right side: an element serving as successor.
// Minimum path cover of a transitively closed DAG = minimum chain decomposition.
struct ChainMatching {
    int n;
    const GroundTruthPoset& p;
    std::vector<int> succ_of, pred_of;  // matched successor / predecessor, -1 if none

    explicit ChainMatching(const GroundTruthPoset& poset)
        : n(poset.size()), p(poset), succ_of(n, -1), pred_of(n, -1) {
        run();
    }

    void run() {
        std::vector<int> dist(n);
        std::vector<int> queue(n);
        const int INF = n + 1;
        for (;;) {
            // BFS from unmatched left vertices, layering by alternating paths.
            int qh = 0, qt = 0;
            bool found_free = false;
            for (int u = 0; u < n; ++u) {
                if (succ_of[u] < 0) {
                    dist[u] = 0;
                    queue[qt++] = u;
                } else {
                    dist[u] = INF;
                }
            }
            int limit = INF;
            while (qh < qt) {
                int u = queue[qh++];
                if (dist[u] >= limit) continue;
                for (int v = 0; v < n; ++v) {
                    if (!p.dominates(v, u)) continue;  // u may chain up to v
                    int u2 = pred_of[v];
                    if (u2 < 0) {
                        limit = dist[u] + 1;
                        found_free = true;
                    } else if (dist[u2] == INF) {
                        dist[u2] = dist[u] + 1;
                        queue[qt++] = u2;
                    }
                }
            }
            if (!found_free) return;
            for (int u = 0; u < n; ++u) {
                if (succ_of[u] < 0 && try_augment(u, dist, limit)) {
                }
            }
        }
    }

    bool try_augment(int u, std::vector<int>& dist, int limit) {
        if (dist[u] >= limit) return false;
        for (int v = 0; v < n; ++v) {
            if (!p.dominates(v, u)) continue;
            int u2 = pred_of[v];
            if (u2 < 0 || (dist[u2] == dist[u] + 1 && try_augment(u2, dist, limit))) {
                succ_of[u] = v;
                pred_of[v] = u;
                dist[u] = limit;  // off the search structure
                return true;
            }
        }
        dist[u] = limit;
        return false;
    }

    int matched() const {
        int m = 0;
        for (int u = 0; u < n; ++u) m += succ_of[u] >= 0;
        return m;
    }
};

} // namespace

int width(const GroundTruthPoset& p) {
    ChainMatching m(p);
    return p.size() - m.matched();
}

ChainDecomposition min_chain_decomposition(const GroundTruthPoset& p) {
    ChainMatching m(p);
    ChainDecomposition d;
    for (int s = 0; s < p.size(); ++s) {
        if (m.pred_of[s] >= 0) continue;  // not a chain bottom
        std::vector<ElementId> chain;
        for (int e = s; e >= 0; e = m.succ_of[e]) chain.push_back(e);
        d.chains.push_back(std::move(chain));
    }
    internal_check(d.element_count() == p.size(), "chain decomposition must cover all elements");
    return d;
}

std::vector<int> heights_bruteforce(const GroundTruthPoset& p) {
    const int n = p.size();
    std::vector<int> order(n), h(n, 0);
    std::iota(order.begin(), order.end(), 0);
    // Down-sets grow strictly along the order, so popcount sorts topologically.
    std::vector<std::size_t> below(n);
    for (int x = 0; x < n; ++x) {
        std::size_t c = 0;
        const std::uint64_t* r = p.row(x);
        for (int wd = 0; wd < p.row_words(); ++wd) c += static_cast<std::size_t>(__builtin_popcountll(r[wd]));
        below[x] = c;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
    for (int x : order) {
        int best = -1;
        for (int y = 0; y < n; ++y) {
            if (p.dominates(x, y)) best = std::max(best, h[y]);
        }
        h[x] = best + 1;
    }
    return h;
}

std::vector<ElementId> kselect_bruteforce(const GroundTruthPoset& p, int k) {
    internal_check(k >= 1, "kselect_bruteforce: k >= 1");
    auto h = heights_bruteforce(p);
    std::vector<ElementId> out;
    for (int x = 0; x < p.size(); ++x) {
        if (h[x] <= k - 1) out.push_back(x);
    }
    return out;
}

namespace {

double log2_factorial(std::int64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

} // namespace

LogCountBounds nposets_bounds(std::int64_t n, std::int64_t w) {
    internal_check(n >= 1 && w >= 1, "nposets_bounds: n, w >= 1");
    const double log2n = std::log2(static_cast<double>(n));
    const double log2w = std::log2(static_cast<double>(w));
    const double dn = static_cast<double>(n);
    const double dw = static_cast<double>(w);
    LogCountBounds b;
    b.lower = log2_factorial(n) - log2_factorial(w) + 2.0 * dn * (dw - 1.0) - 24.0 * dw * (dw - 1.0) * log2n;
    b.upper = log2_factorial(n) + 2.0 * dn * (dw - 1.0) - ((dw - 2.0) * (dw - 1.0) / 2.0) * log2n +
              (dw * (dw - 1.0) / 2.0) * log2w;
    return b;
}

} // namespace posetkit
