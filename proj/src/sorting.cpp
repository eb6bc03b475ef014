#include "posetkit/sorting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "posetkit/counting.hpp"

namespace posetkit {

// ---------------------------------------------------------------------------
// Weighted interval partition and the halving-walk search.

WeightedIntervalPartition WeightedIntervalPartition::from_weights(const std::vector<std::uint64_t>& weights) {
    WeightedIntervalPartition p;
    p.prefix_.assign(weights.size() + 1, 0);
    for (std::size_t i = 0; i < weights.size(); ++i) p.prefix_[i + 1] = p.prefix_[i] + weights[i];
    p.total_ = p.prefix_.back();
    internal_check(p.total_ > 0, "interval partition needs positive total weight");
    return p;
}

int WeightedIntervalPartition::locate(std::uint64_t num, int k) const {
    internal_check(k >= 0 && k < 120, "dyadic point out of range");
    const unsigned __int128 x_scaled = static_cast<unsigned __int128>(num) * total_;
    // Smallest j with x < prefix[j]/total; then prefix[j-1]/total <= x holds too.
    int lo = 1, hi = interval_count();
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        unsigned __int128 b = static_cast<unsigned __int128>(prefix_[static_cast<std::size_t>(mid)]) << k;
        if (x_scaled < b)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

int floor_log2_ratio(std::uint64_t a, std::uint64_t b) {
    internal_check(b >= 1 && a >= b, "floor_log2_ratio needs a >= b >= 1");
    int r = 0;
    while ((static_cast<unsigned __int128>(b) << (r + 1)) <= a) ++r;
    return r;
}

WeightedSearchOutcome weighted_binary_search(const WeightedIntervalPartition& part,
                                             const std::function<ProbeResult(int)>& probe) {
    const int m = part.interval_count();
    int lo = 1, hi = m;
    std::uint64_t num = 1;  // x = num / 2^k, starts at 1/2; the step is implicit
    int k = 1;
    WeightedSearchOutcome out;
    for (;;) {
        if (out.rounds > 130) throw InconsistentProbe("weighted search failed to converge");
        int j = part.locate(num, k);
        ++out.rounds;
        switch (probe(j)) {
        case ProbeResult::Stop:
            if (j < lo || j > hi) throw InconsistentProbe("stop outside the feasible range");
            out.index = j;
            internal_check(out.rounds <= 1 + floor_log2_ratio(part.total(), part.weight(j)),
                           "weighted search exceeded its round budget");
            return out;
        case ProbeResult::LookBelow:
            hi = std::min(hi, j - 1);
            num = num * 2 - 1;
            break;
        case ProbeResult::LookAbove:
            lo = std::max(lo, j + 1);
            num = num * 2 + 1;
            break;
        }
        ++k;
        if (lo > hi) throw InconsistentProbe("probe answers exclude every interval");
    }
}

// ---------------------------------------------------------------------------
// Shared insertion-sort plumbing.

namespace {

// Restriction of the known table to `members`, as a closed poset on local ids.
GroundTruthPoset known_restriction(const RelationStore& store, const std::vector<ElementId>& members) {
    const int m = static_cast<int>(members.size());
    const int words = (m + 63) / 64;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m) * words, 0);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            auto v = store.get(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
            internal_check(v.has_value(), "known table incomplete over inserted elements");
            if (*v == RelationVerdict::Dominates)
                rows[static_cast<std::size_t>(a) * words + (b >> 6)] |= std::uint64_t{1} << (b & 63);
        }
    }
    return GroundTruthPoset::from_closure_rows(m, std::move(rows));
}

// Minimum chain decomposition of the known sub-order, in global ids. Zero
// oracle cost. Throws when the accumulated relations already need more than
// w chains.
ChainDecomposition known_decomposition(const RelationStore& store, const std::vector<ElementId>& members,
                                       int w) {
    ChainDecomposition local = min_chain_decomposition(known_restriction(store, members));
    if (local.size() > w)
        throw WidthExceeded("accumulated relations need " + std::to_string(local.size()) + " chains, bound is " +
                            std::to_string(w));
    ChainDecomposition d;
    d.chains.reserve(local.chains.size());
    for (auto& ch : local.chains) {
        std::vector<ElementId> global;
        global.reserve(ch.size());
        for (ElementId l : ch) global.push_back(members[static_cast<std::size_t>(l)]);
        d.chains.push_back(std::move(global));
    }
    return d;
}

// Incrementally maintained minimum chain decomposition of the known
// sub-order. The matching is maximum before each insertion, so any fresh
// augmenting path has to run through the new element: one forward and one
// backward alternating search settle it.
class IncrementalChains {
public:
    IncrementalChains(const RelationStore& store, int n)
        : store_(&store), succ_(static_cast<std::size_t>(n), -1), pred_(static_cast<std::size_t>(n), -1),
          visited_(static_cast<std::size_t>(n), 0), stamp_(0) {}

    // Call after the store holds e's relations to every active element. The
    // pre-insertion matching is maximum, so fresh augmenting paths start at
    // e's predecessor slot or end at its successor slot; when one path
    // consumes both at once, a single sweep over the free slots settles the
    // possible leftover.
    void insert(ElementId e) {
        active_.push_back(e);
        ++stamp_;
        augment_from(e);
        if (pred_[static_cast<std::size_t>(e)] < 0) {
            ++stamp_;
            augment_to(e);
        } else {
            for (ElementId u : active_) {
                if (succ_[static_cast<std::size_t>(u)] < 0) {
                    ++stamp_;
                    augment_from(u);
                }
            }
        }
    }

    int chain_count() const {
        int c = 0;
        for (ElementId u : active_) c += pred_[static_cast<std::size_t>(u)] < 0;
        return c;
    }

    ChainDecomposition chains() const {
        ChainDecomposition d;
        for (ElementId s : active_) {
            if (pred_[static_cast<std::size_t>(s)] >= 0) continue;
            std::vector<ElementId> chain;
            for (ElementId cur = s; cur >= 0; cur = succ_[static_cast<std::size_t>(cur)]) chain.push_back(cur);
            d.chains.push_back(std::move(chain));
        }
        return d;
    }

private:
    const RelationStore* store_;
    std::vector<ElementId> active_;
    std::vector<int> succ_, pred_;
    std::vector<unsigned> visited_;
    unsigned stamp_;

    bool seen(ElementId v) {
        if (visited_[static_cast<std::size_t>(v)] == stamp_) return true;
        visited_[static_cast<std::size_t>(v)] = stamp_;
        return false;
    }

    // Standard alternating search for a chain successor of u.
    bool augment_from(ElementId u) {
        for (ElementId v : active_) {
            if (!store_->known_dominates(v, u) || seen(v)) continue;
            if (pred_[static_cast<std::size_t>(v)] < 0 || augment_from(pred_[static_cast<std::size_t>(v)])) {
                succ_[static_cast<std::size_t>(u)] = v;
                pred_[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    }

    // Mirrored search for a chain predecessor of v.
    bool augment_to(ElementId v) {
        for (ElementId u : active_) {
            if (!store_->known_dominates(v, u) || seen(u)) continue;
            if (succ_[static_cast<std::size_t>(u)] < 0 || augment_to(succ_[static_cast<std::size_t>(u)])) {
                succ_[static_cast<std::size_t>(u)] = v;
                pred_[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        return false;
    }
};

// Record the two search results for one chain: elements at or above the
// smallest dominator dominate e, those at or below the largest dominated are
// dominated, the band between is incomparable.
void record_chain_relations(RelationStore& store, const std::vector<ElementId>& chain, ElementId e,
                            int smallest_dom, int largest_dominated) {
    internal_check(largest_dominated < smallest_dom, "search results overlap; oracle answers inconsistent");
    const int len = static_cast<int>(chain.size());
    for (int k = 1; k <= len; ++k) {
        ElementId c = chain[static_cast<std::size_t>(k - 1)];
        if (k >= smallest_dom)
            store.set(c, e, RelationVerdict::Dominates);
        else if (k <= largest_dominated)
            store.set(e, c, RelationVerdict::Dominates);
        else
            store.set(e, c, RelationVerdict::Incomparable);
    }
}

ChainMergeIndex finish_from_known(const RelationStore& store, const std::vector<ElementId>& members) {
    ChainDecomposition d = known_decomposition(store, members, static_cast<int>(members.size()) + 1);
    return ChainMergeIndex::build_from_table(store, std::move(d));
}

} // namespace

// ---------------------------------------------------------------------------
// Binary-insertion sort.

ChainMergeIndex bin_insertion_sort(int n, OracleInterface& oracle, int w) {
    internal_check(n >= 0 && w >= 1, "bin_insertion_sort: bad arguments");
    if (n == 0) return ChainMergeIndex();
    RelationStore store(n);
    IncrementalChains matcher(store, n);
    matcher.insert(0);
    for (ElementId e = 1; e < n; ++e) {
        if (matcher.chain_count() > w)
            throw WidthExceeded("accumulated relations need " + std::to_string(matcher.chain_count()) +
                                " chains, bound is " + std::to_string(w));
        ChainDecomposition d = matcher.chains();
        for (const auto& chain : d.chains) {
            const int len = static_cast<int>(chain.size());
            // Smallest index whose element dominates e (len+1: none does).
            int lo = 1, hi = len + 1;
            while (lo < hi) {
                int mid = (lo + hi) / 2;
                if (oracle.query(chain[static_cast<std::size_t>(mid - 1)], e) == RelationVerdict::Dominates)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            const int smallest_dom = lo;
            // Largest index whose element e dominates (0: none).
            int lo2 = 0, hi2 = std::min(len, smallest_dom - 1);
            while (lo2 < hi2) {
                int mid = (lo2 + hi2 + 1) / 2;
                if (oracle.query(e, chain[static_cast<std::size_t>(mid - 1)]) == RelationVerdict::Dominates)
                    lo2 = mid;
                else
                    hi2 = mid - 1;
            }
            record_chain_relations(store, chain, e, smallest_dom, lo2);
        }
        matcher.insert(e);
    }
    if (matcher.chain_count() > w)
        throw WidthExceeded("accumulated relations need " + std::to_string(matcher.chain_count()) +
                            " chains, bound is " + std::to_string(w));
    return ChainMergeIndex::build_from_table(store, matcher.chains());
}

// ---------------------------------------------------------------------------
// Entropy-weighted insertion sort.

namespace {

struct EntropyCounts {
    std::vector<std::uint64_t> weights;
    std::uint64_t total = 0;
};

} // namespace

ChainMergeIndex entropy_sort(int n, OracleInterface& oracle, int w, EntropySortReport* report) {
    internal_check(n >= 0 && w >= 1, "entropy_sort: bad arguments");
    const int cap = exhaustive_cap();
    if (n > cap)
        throw CapExceeded("entropy sort needs exhaustive counting; n = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
    EntropySortReport local_report;
    EntropySortReport& rep = report ? *report : local_report;
    rep = EntropySortReport{};
    if (n == 0) return ChainMergeIndex();
    QueryCounter qc(oracle);
    RelationStore store(n);
    std::vector<ElementId> inserted{0};
    std::vector<int> local_of(static_cast<std::size_t>(n), -1);
    bool have_initial = false;

    for (ElementId e = 1; e < n; ++e) {
        ChainDecomposition d = known_decomposition(store, inserted, w);
        const int p = static_cast<int>(inserted.size());
        const int e_local = p;
        GroundTruthPoset known = known_restriction(store, inserted);
        std::fill(local_of.begin(), local_of.end(), -1);
        for (int i = 0; i < p; ++i) local_of[static_cast<std::size_t>(inserted[static_cast<std::size_t>(i)])] = i;

        ConstraintSet cs;
        const std::uint64_t queries_before = qc.count();
        long double log2_zk = 0.0L, log2_znext = 0.0L;

        // Per-insertion verdict cache against e; each pair costs at most once.
        std::vector<std::uint8_t> have(static_cast<std::size_t>(n), 0);
        std::vector<RelationVerdict> verdict(static_cast<std::size_t>(n), RelationVerdict::Incomparable);
        auto against_e = [&](ElementId c) {
            if (!have[static_cast<std::size_t>(c)]) {
                verdict[static_cast<std::size_t>(c)] = qc.query(c, e);
                have[static_cast<std::size_t>(c)] = 1;
            }
            return verdict[static_cast<std::size_t>(c)];
        };

        for (std::size_t ci = 0; ci < d.chains.size(); ++ci) {
            const auto& chain = d.chains[ci];
            const int len = static_cast<int>(chain.size());
            auto chain_local = [&](int k1) {  // 1-based chain position -> local id
                return local_of[static_cast<std::size_t>(chain[static_cast<std::size_t>(k1 - 1)])];
            };

            // Bucket j-1 holds the number of extensions in which position j is
            // the smallest dominator of e in this chain (slot len: none).
            EntropyCounts dom;
            dom.weights.assign(static_cast<std::size_t>(len) + 1, 0);
            dom.total = for_each_width_extension(known, n - p, cs, w, [&](const SmallPoset& sp) {
                int slot = len;
                for (int k = 1; k <= len; ++k) {
                    if (sp.dominates(chain_local(k), e_local)) {
                        slot = k - 1;
                        break;
                    }
                }
                ++dom.weights[static_cast<std::size_t>(slot)];
            });
            if (dom.total == 0) throw WidthExceeded("no width-bounded extension is consistent with the answers");
            if (ci == 0) {
                log2_zk = std::log2(static_cast<long double>(dom.total));
                if (!have_initial) {
                    rep.log2_initial_extensions = static_cast<double>(log2_zk);
                    have_initial = true;
                }
            }

            auto part = WeightedIntervalPartition::from_weights(dom.weights);
            const std::uint64_t before_search = qc.count();
            auto outcome = weighted_binary_search(part, [&](int j) {
                if (j == len + 1)
                    return against_e(chain[static_cast<std::size_t>(len - 1)]) == RelationVerdict::Dominates
                               ? ProbeResult::LookBelow
                               : ProbeResult::Stop;
                if (against_e(chain[static_cast<std::size_t>(j - 1)]) == RelationVerdict::Dominates) {
                    if (j == 1 || against_e(chain[static_cast<std::size_t>(j - 2)]) != RelationVerdict::Dominates)
                        return ProbeResult::Stop;
                    return ProbeResult::LookBelow;
                }
                return ProbeResult::LookAbove;
            });
            const int smallest_dom = outcome.index;
            internal_check(qc.count() - before_search <=
                               2 * (1 + static_cast<std::uint64_t>(floor_log2_ratio(dom.total, part.weight(smallest_dom)))),
                           "weighted search exceeded its query budget");
            for (int k = 1; k <= len; ++k) {
                if (k >= smallest_dom)
                    cs.enforced.emplace_back(chain_local(k), e_local);
                else
                    cs.prohibited.emplace_back(chain_local(k), e_local);
            }

            // Bucket j holds the extensions in which position j is the largest
            // element dominated by e (slot 0: none), under the updated sets.
            EntropyCounts sub;
            sub.weights.assign(static_cast<std::size_t>(len) + 1, 0);
            sub.total = for_each_width_extension(known, n - p, cs, w, [&](const SmallPoset& sp) {
                int slot = 0;
                for (int k = len; k >= 1; --k) {
                    if (sp.dominates(e_local, chain_local(k))) {
                        slot = k;
                        break;
                    }
                }
                ++sub.weights[static_cast<std::size_t>(slot)];
            });
            internal_check(sub.total == part.weight(smallest_dom),
                           "conditioned totals must telescope between the two searches");
            auto part2 = WeightedIntervalPartition::from_weights(sub.weights);
            const std::uint64_t before_search2 = qc.count();
            auto outcome2 = weighted_binary_search(part2, [&](int j) {
                const int b = j - 1;  // bucket index: largest dominated position, 0 = none
                if (b == 0)
                    return against_e(chain[0]) == RelationVerdict::DominatedBy ? ProbeResult::LookAbove
                                                                               : ProbeResult::Stop;
                if (against_e(chain[static_cast<std::size_t>(b - 1)]) == RelationVerdict::DominatedBy) {
                    if (b == len || against_e(chain[static_cast<std::size_t>(b)]) != RelationVerdict::DominatedBy)
                        return ProbeResult::Stop;
                    return ProbeResult::LookAbove;
                }
                return ProbeResult::LookBelow;
            });
            const int largest_dominated = outcome2.index - 1;
            internal_check(qc.count() - before_search2 <=
                               2 * (1 + static_cast<std::uint64_t>(
                                            floor_log2_ratio(sub.total, part2.weight(outcome2.index)))),
                           "weighted search exceeded its query budget");
            for (int k = 1; k <= len; ++k) {
                if (k <= largest_dominated)
                    cs.enforced.emplace_back(e_local, chain_local(k));
                else if (k < smallest_dom)
                    cs.prohibited.emplace_back(e_local, chain_local(k));
            }
            log2_znext = std::log2(static_cast<long double>(part2.weight(outcome2.index)));

            record_chain_relations(store, chain, e, smallest_dom, largest_dominated);
        }
        // Insertion budget: 4w plus twice the information the insertion revealed.
        const long double spent = static_cast<long double>(qc.count() - queries_before);
        internal_check(spent <= 4.0L * w + 2.0L * (log2_zk - log2_znext) + 1e-6L,
                       "insertion exceeded its amortized query budget");
        inserted.push_back(e);
    }
    rep.queries = qc.count();
    return finish_from_known(store, inserted);
}

// ---------------------------------------------------------------------------
// Peeling.

ChainDecomposition peel_iterations(const ChainMergeIndex& idx, int w) {
    const std::vector<ElementId>& gid = idx.elements();
    const int sz = static_cast<int>(gid.size());
    // up/down links over local indices (an element's local index is its
    // position in idx.elements(), which follows chain traversal order).
    std::vector<int> up(static_cast<std::size_t>(sz), -1), down(static_cast<std::size_t>(sz), -1);
    {
        int next = 0;
        for (const auto& ch : idx.decomposition().chains) {
            int prev = -1;
            for (std::size_t i = 0; i < ch.size(); ++i) {
                int l = next++;
                if (prev >= 0) {
                    up[static_cast<std::size_t>(prev)] = l;
                    down[static_cast<std::size_t>(l)] = prev;
                }
                prev = l;
            }
        }
    }
    auto rebuild_chains = [&]() {
        std::vector<std::vector<int>> chains;
        for (int l = 0; l < sz; ++l) {
            if (down[static_cast<std::size_t>(l)] != -1) continue;
            std::vector<int> ch;
            for (int cur = l; cur != -1; cur = up[static_cast<std::size_t>(cur)]) ch.push_back(cur);
            chains.push_back(std::move(ch));
        }
        return chains;
    };
    auto lookup = [&](int a, int b) {
        return idx.lookup(gid[static_cast<std::size_t>(a)], gid[static_cast<std::size_t>(b)]);
    };
    std::vector<std::vector<int>> chains = rebuild_chains();
    int q = static_cast<int>(chains.size());
    internal_check(q == idx.chain_count(), "link seeding must reproduce the input chains");

    while (q > w) {
        // One peeling iteration: dislodge dominating top elements until some
        // working chain empties, then splice along the dislodgement trail.
        std::vector<std::vector<int>> work = chains;
        std::vector<char> is_top(static_cast<std::size_t>(sz), 0);
        std::vector<int> dislodged_by(static_cast<std::size_t>(sz), -1);
        std::deque<std::pair<int, int>> pending;
        std::vector<int> tops;
        for (auto& ch : work) {
            is_top[static_cast<std::size_t>(ch.back())] = 1;
            tops.push_back(ch.back());
        }
        std::vector<int> chain_of(static_cast<std::size_t>(sz), -1);
        for (std::size_t c = 0; c < work.size(); ++c) {
            for (int l : work[c]) chain_of[static_cast<std::size_t>(l)] = static_cast<int>(c);
        }
        for (std::size_t a = 0; a < tops.size(); ++a) {
            for (std::size_t b = a + 1; b < tops.size(); ++b) pending.emplace_back(tops[a], tops[b]);
        }
        int emptied_top = -1;
        while (emptied_top < 0) {
            if (pending.empty())
                throw WidthExceeded("top elements form an antichain wider than the width bound");
            auto [a, b] = pending.front();
            pending.pop_front();
            if (!is_top[static_cast<std::size_t>(a)] || !is_top[static_cast<std::size_t>(b)]) continue;
            RelationVerdict v = lookup(a, b);
            if (v == RelationVerdict::Incomparable) continue;
            const int y = v == RelationVerdict::Dominates ? a : b;  // the dominator is dislodged
            const int x = v == RelationVerdict::Dominates ? b : a;
            dislodged_by[static_cast<std::size_t>(y)] = x;
            auto& wch = work[static_cast<std::size_t>(chain_of[static_cast<std::size_t>(y)])];
            internal_check(wch.back() == y, "only a current top can be dislodged");
            wch.pop_back();
            is_top[static_cast<std::size_t>(y)] = 0;
            if (wch.empty()) {
                emptied_top = y;
                break;
            }
            const int z = wch.back();
            is_top[static_cast<std::size_t>(z)] = 1;
            for (const auto& ch : work) {
                if (!ch.empty() && ch.back() != z && is_top[static_cast<std::size_t>(ch.back())])
                    pending.emplace_back(z, ch.back());
            }
        }
        // Reconstruct the trail (x_1,y_1)..(x_t,y_t): y_t emptied its chain,
        // y_{i-1} is the original parent of x_i, x_1 was an original top.
        std::deque<int> xs, ys;
        ys.push_front(emptied_top);
        xs.push_front(dislodged_by[static_cast<std::size_t>(emptied_top)]);
        while (up[static_cast<std::size_t>(xs.front())] != -1) {
            int parent = up[static_cast<std::size_t>(xs.front())];
            internal_check(dislodged_by[static_cast<std::size_t>(parent)] != -1,
                           "a non-top dislodger's parent must have been dislodged");
            ys.push_front(parent);
            xs.push_front(dislodged_by[static_cast<std::size_t>(parent)]);
        }
        // Splice: y_i becomes the element directly above x_i.
        for (std::size_t i = 0; i < xs.size(); ++i) {
            up[static_cast<std::size_t>(xs[i])] = ys[i];
            down[static_cast<std::size_t>(ys[i])] = xs[i];
        }
        chains = rebuild_chains();
        internal_check(static_cast<int>(chains.size()) == q - 1, "one iteration removes exactly one chain");
        q = static_cast<int>(chains.size());
        // Every link must be a true relation and the chains a partition.
        int covered = 0;
        for (const auto& ch : chains) {
            covered += static_cast<int>(ch.size());
            for (std::size_t i = 1; i < ch.size(); ++i) {
                internal_check(lookup(ch[i], ch[i - 1]) == RelationVerdict::Dominates,
                               "peeling spliced a link that is not a true relation");
            }
        }
        internal_check(covered == sz, "peeling chains must cover every element");
    }
    ChainDecomposition out;
    for (const auto& ch : chains) {
        std::vector<ElementId> global;
        global.reserve(ch.size());
        for (int l : ch) global.push_back(gid[static_cast<std::size_t>(l)]);
        out.chains.push_back(std::move(global));
    }
    return out;
}

ChainDecomposition peel(OracleInterface& oracle, ChainDecomposition d, int w) {
    internal_check(w >= 1, "peel: width bound must be positive");
    if (d.size() <= w) return d;
    ChainMergeIndex idx = ChainMergeIndex::build(oracle, std::move(d));
    return peel_iterations(idx, w);
}

// ---------------------------------------------------------------------------
// Mergesort.

namespace {

struct MergesortContext {
    CachingOracle* oracle;
    RelationStore* store;
    int w;
    const PeelObserver* observer;
    int peel_calls = 0;

    ChainDecomposition run(int lo, int hi) {
        const int m = hi - lo;
        if (m <= w) {
            ChainDecomposition d;
            for (int e = lo; e < hi; ++e) d.chains.push_back({e});
            return d;
        }
        const int mid = lo + m / 2;
        ChainDecomposition d = run(lo, mid);
        ChainDecomposition d2 = run(mid, hi);
        for (auto& ch : d2.chains) d.chains.push_back(std::move(ch));
        // The build forwards only pairs no finished sub-range determined.
        ChainMergeIndex idx = ChainMergeIndex::build(*oracle, std::move(d));
        idx.fill_store(*store);
        if (idx.chain_count() <= w) return idx.decomposition();
        ++peel_calls;
        ChainDecomposition out = peel_iterations(idx, w);
        if (observer && *observer) (*observer)(idx.decomposition(), out);
        return out;
    }
};

} // namespace

ChainMergeIndex poset_mergesort(int n, OracleInterface& oracle, int w, MergesortReport* report,
                                const PeelObserver& observer) {
    internal_check(n >= 0 && w >= 1, "poset_mergesort: bad arguments");
    if (n == 0) {
        if (report) *report = MergesortReport{};
        return ChainMergeIndex();
    }
    RelationStore store(n);
    CachingOracle cached(oracle, store);
    MergesortContext ctx{&cached, &store, w, &observer};
    ChainDecomposition d = ctx.run(0, n);
    const std::uint64_t recursion = cached.forwarded();
    ChainMergeIndex idx = ChainMergeIndex::build(cached, std::move(d));
    if (report) {
        report->recursion_queries = recursion;
        report->final_build_queries = cached.forwarded() - recursion;
        report->peel_calls = ctx.peel_calls;
    }
    return idx;
}

// ---------------------------------------------------------------------------
// Unknown width and transitive relations.

ChainMergeIndex sort_unknown_width(int n, OracleInterface& oracle, UnknownWidthReport* report) {
    UnknownWidthReport local;
    UnknownWidthReport& rep = report ? *report : local;
    rep = UnknownWidthReport{};
    for (int bound = 2;; bound *= 2) {
        rep.attempted_bounds.push_back(bound);
        try {
            return poset_mergesort(n, oracle, bound, &rep.last_run);
        } catch (const WidthExceeded&) {
            internal_check(bound < n, "a bound at least n can never fail");
        }
    }
}

TransitiveRelation sort_transitive(int n, TransitiveOracleAdapter& adapter, int w,
                                   TransitiveSortReport* report) {
    TransitiveSortReport local;
    TransitiveSortReport& rep = report ? *report : local;
    rep = TransitiveSortReport{};
    const std::uint64_t start = adapter.inner_queries();
    ChainMergeIndex idx = poset_mergesort(n, adapter, w, &rep.mergesort);
    rep.phase1_inner_queries = adapter.inner_queries() - start;
    const std::uint64_t mid = adapter.inner_queries();
    TransitiveRelation rel = recover_extra_relations(adapter.inner(), idx);
    rep.phase2_inner_queries = adapter.inner_queries() - mid;
    internal_check(rep.phase2_inner_queries <=
                       2ull * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(idx.chain_count()),
                   "recovery pass exceeded its 2nq budget");
    return rel;
}

} // namespace posetkit
