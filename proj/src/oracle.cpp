#include "posetkit/oracle.hpp"

#include <algorithm>

#include "posetkit/chainmerge.hpp"

namespace posetkit {

namespace {

enum Cell : std::uint8_t { kUnknown = 0, kDom = 1, kSub = 2, kInc = 3 };

Cell to_cell(RelationVerdict v) {
    switch (v) {
    case RelationVerdict::Dominates: return kDom;
    case RelationVerdict::DominatedBy: return kSub;
    default: return kInc;
    }
}

RelationVerdict from_cell(Cell c) {
    switch (c) {
    case kDom: return RelationVerdict::Dominates;
    case kSub: return RelationVerdict::DominatedBy;
    default: return RelationVerdict::Incomparable;
    }
}

} // namespace

RelationStore::RelationStore(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, kUnknown) {}

std::optional<RelationVerdict> RelationStore::get(ElementId x, ElementId y) const {
    Cell c = static_cast<Cell>(cells_[static_cast<std::size_t>(x) * n_ + y]);
    if (c == kUnknown) return std::nullopt;
    return from_cell(c);
}

void RelationStore::set(ElementId x, ElementId y, RelationVerdict v) {
    auto& fwd = cells_[static_cast<std::size_t>(x) * n_ + y];
    auto& bwd = cells_[static_cast<std::size_t>(y) * n_ + x];
    internal_check(fwd == kUnknown || fwd == to_cell(v), "relation store contradiction");
    fwd = to_cell(v);
    bwd = to_cell(reversed(v));
}

bool RelationStore::known_dominates(ElementId x, ElementId y) const {
    return cells_[static_cast<std::size_t>(x) * n_ + y] == kDom;
}

bool RelationStore::complete() const {
    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
            if (x != y && cells_[static_cast<std::size_t>(x) * n_ + y] == kUnknown) return false;
        }
    }
    return true;
}

KnownRelations::KnownRelations(int n)
    : n_(n), words_((n + 63) / 64), down_(static_cast<std::size_t>(n) * words_, 0),
      up_(static_cast<std::size_t>(n) * words_, 0), answered_(n) {}

std::optional<RelationVerdict> KnownRelations::implied(ElementId x, ElementId y) const {
    if (auto v = answered_.get(x, y)) return v;
    if (dominates_known(x, y)) return RelationVerdict::Dominates;
    if (dominates_known(y, x)) return RelationVerdict::DominatedBy;
    return std::nullopt;
}

void KnownRelations::record(ElementId x, ElementId y, RelationVerdict v) {
    answered_.set(x, y, v);
    if (v == RelationVerdict::Incomparable) return;
    ElementId a = v == RelationVerdict::Dominates ? x : y;
    ElementId b = v == RelationVerdict::Dominates ? y : x;
    if (dominates_known(a, b)) return;
    // New edge a > b: everything at or above a dominates everything at or
    // below b. Keeps down_/up_ a genuine closure at all times.
    std::vector<std::uint64_t> below_b(down_.begin() + static_cast<std::size_t>(b) * words_,
                                       down_.begin() + static_cast<std::size_t>(b + 1) * words_);
    below_b[static_cast<std::size_t>(b >> 6)] |= std::uint64_t{1} << (b & 63);
    std::vector<std::uint64_t> above_a(up_.begin() + static_cast<std::size_t>(a) * words_,
                                       up_.begin() + static_cast<std::size_t>(a + 1) * words_);
    above_a[static_cast<std::size_t>(a >> 6)] |= std::uint64_t{1} << (a & 63);
    for (int s = 0; s < n_; ++s) {
        if (!((above_a[s >> 6] >> (s & 63)) & 1u)) continue;
        std::uint64_t* row = down_.data() + static_cast<std::size_t>(s) * words_;
        for (int w = 0; w < words_; ++w) row[w] |= below_b[w];
    }
    for (int t = 0; t < n_; ++t) {
        if (!((below_b[t >> 6] >> (t & 63)) & 1u)) continue;
        std::uint64_t* row = up_.data() + static_cast<std::size_t>(t) * words_;
        for (int w = 0; w < words_; ++w) row[w] |= above_a[w];
    }
}

bool KnownRelations::closure_holds() const {
    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
            if (!dominates_known(x, y)) continue;
            for (int w = 0; w < words_; ++w) {
                std::uint64_t below_y = down_[static_cast<std::size_t>(y) * words_ + w];
                std::uint64_t below_x = down_[static_cast<std::size_t>(x) * words_ + w];
                if (below_y & ~below_x) return false;
            }
        }
    }
    return true;
}

RelationVerdict InferenceCache::do_query(ElementId x, ElementId y) {
    if (auto v = known_.implied(x, y)) {
        if (on_inferred_) on_inferred_(x, y, *v);
        return *v;
    }
    ++forwarded_;
    RelationVerdict v = inner_->query(x, y);
    known_.record(x, y, v);
    return v;
}

TransitiveRelation TransitiveRelation::from_matrix(int n, std::vector<std::uint64_t> rows) {
    TransitiveRelation t;
    t.n_ = n;
    t.words_ = (n + 63) / 64;
    internal_check(rows.size() == static_cast<std::size_t>(n) * t.words_, "relation row size mismatch");
    t.rel_ = std::move(rows);
    t.close();
    return t;
}

void TransitiveRelation::close() {
    for (int k = 0; k < n_; ++k) {
        const std::uint64_t* rk = rel_.data() + static_cast<std::size_t>(k) * words_;
        for (int x = 0; x < n_; ++x) {
            if (!holds(x, k)) continue;
            std::uint64_t* rx = rel_.data() + static_cast<std::size_t>(x) * words_;
            for (int w = 0; w < words_; ++w) rx[w] |= rk[w];
        }
    }
}

TransitiveRelation TransitiveRelation::from_poset_with_mutuals(const GroundTruthPoset& p, int mutual_pairs,
                                                               std::uint64_t seed) {
    const int n = p.size();
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
    std::vector<std::pair<ElementId, ElementId>> comparable;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y || !p.dominates(x, y)) continue;
            rows[static_cast<std::size_t>(x) * words + (y >> 6)] |= std::uint64_t{1} << (y & 63);
            comparable.emplace_back(x, y);
        }
    }
    Rng rng(seed);
    rng_shuffle(rng, comparable);
    const int take = std::min<int>(mutual_pairs, static_cast<int>(comparable.size()));
    for (int i = 0; i < take; ++i) {
        auto [x, y] = comparable[static_cast<std::size_t>(i)];
        rows[static_cast<std::size_t>(y) * words + (x >> 6)] |= std::uint64_t{1} << (x & 63);
    }
    return from_matrix(n, std::move(rows));
}

RelationVerdict TransitiveOracleAdapter::do_query(ElementId x, ElementId y) {
    if (auto v = known_.implied(x, y)) return *v;
    auto [fwd, bwd] = inner_->pair_query(x, y);
    RelationVerdict v;
    if (fwd && bwd) {
        // Mutual pair. Inference would have answered if either direction were
        // already forced, so both are acyclic-consistent; tie rule applies.
        v = x > y ? RelationVerdict::Dominates : RelationVerdict::DominatedBy;
    } else if (fwd) {
        v = RelationVerdict::Dominates;
    } else if (bwd) {
        v = RelationVerdict::DominatedBy;
    } else {
        v = RelationVerdict::Incomparable;
    }
    known_.record(x, y, v);
    return v;
}

TransitiveRelation recover_extra_relations(TransitiveRelationOracle& inner, const ChainMergeIndex& cm) {
    const int n = cm.size();
    const int q = cm.chain_count();
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::uint8_t> val(static_cast<std::size_t>(n) * n, 0);
    auto relates = [&](ElementId x, ElementId y) {
        // One inner query answers both directions; memoize the pair.
        std::size_t xy = static_cast<std::size_t>(x) * n + y;
        if (!seen[xy]) {
            auto [fwd, bwd] = inner.pair_query(x, y);
            std::size_t yx = static_cast<std::size_t>(y) * n + x;
            seen[xy] = seen[yx] = 1;
            val[xy] = fwd;
            val[yx] = bwd;
        }
        return val[xy] != 0;
    };
    const auto& chains = cm.decomposition().chains;
    for (int i = 0; i < q; ++i) {
        const auto& ci = chains[static_cast<std::size_t>(i)];
        for (int j = 0; j < q; ++j) {
            const auto& cj = chains[static_cast<std::size_t>(j)];
            const int lj = static_cast<int>(cj.size());
            int r = 0;
            for (ElementId x : ci) {
                // The sorted order is contained in the relation, so its reach
                // is a free lower bound for the scan frontier.
                r = std::max(r, cm.reach(x, j) + 1);
                while (r < lj) {
                    ElementId y = cj[static_cast<std::size_t>(r)];
                    if (y == x) {  // own slot in the own-chain scan; no self query
                        ++r;
                        continue;
                    }
                    if (!relates(x, y)) break;
                    ++r;
                }
                for (int t = 0; t < r; ++t) {
                    ElementId y = cj[static_cast<std::size_t>(t)];
                    if (y == x) continue;
                    rows[static_cast<std::size_t>(x) * words + (y >> 6)] |= std::uint64_t{1} << (y & 63);
                }
            }
        }
    }
    // Reflexive entries are exactly the ones mutual pairs force.
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool xy = (rows[static_cast<std::size_t>(x) * words + (y >> 6)] >> (y & 63)) & 1u;
            bool yx = (rows[static_cast<std::size_t>(y) * words + (x >> 6)] >> (x & 63)) & 1u;
            if (xy && yx) {
                rows[static_cast<std::size_t>(x) * words + (x >> 6)] |= std::uint64_t{1} << (x & 63);
                break;
            }
        }
    }
    return TransitiveRelation::from_matrix(n, std::move(rows));
}

} // namespace posetkit
