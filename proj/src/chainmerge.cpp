#include "posetkit/chainmerge.hpp"

#include <algorithm>
#include <sstream>

namespace posetkit {

void ChainMergeIndex::init_positions() {
    const int q = static_cast<int>(chains_.chains.size());
    ids_.clear();
    ElementId max_id = -1;
    for (const auto& ch : chains_.chains) {
        if (ch.empty()) throw InvalidDecomposition("empty chain");
        for (ElementId e : ch) {
            if (e < 0) throw InvalidDecomposition("negative element id");
            max_id = std::max(max_id, e);
            ids_.push_back(e);
        }
    }
    local_.assign(static_cast<std::size_t>(max_id) + 1, -1);
    chain_of_.assign(ids_.size(), -1);
    pos_of_.assign(ids_.size(), -1);
    int next = 0;
    for (int i = 0; i < q; ++i) {
        const auto& ch = chains_.chains[static_cast<std::size_t>(i)];
        for (int p = 0; p < static_cast<int>(ch.size()); ++p) {
            ElementId e = ch[static_cast<std::size_t>(p)];
            if (local_[static_cast<std::size_t>(e)] != -1)
                throw InvalidDecomposition("element appears in two chains");
            local_[static_cast<std::size_t>(e)] = next;
            chain_of_[static_cast<std::size_t>(next)] = i;
            pos_of_[static_cast<std::size_t>(next)] = p;
            ++next;
        }
    }
    reach_.assign(ids_.size() * static_cast<std::size_t>(q), -1);
    for (std::size_t lx = 0; lx < ids_.size(); ++lx) {
        reach_[lx * q + chain_of_[lx]] = pos_of_[lx] - 1;
    }
}

template <typename QueryFn>
void ChainMergeIndex::scan_all(QueryFn&& dominates_query) {
    const int q = static_cast<int>(chains_.chains.size());
    for (int i = 0; i < q; ++i) {
        const auto& ci = chains_.chains[static_cast<std::size_t>(i)];
        for (int j = 0; j < q; ++j) {
            if (j == i) continue;
            const auto& cj = chains_.chains[static_cast<std::size_t>(j)];
            const int lj = static_cast<int>(cj.size());
            // Bottom-up two-pointer merge: the frontier only rises along the
            // chain, which is exactly the reach monotonicity invariant.
            int r = 0;
            for (ElementId x : ci) {
                while (r < lj && dominates_query(x, cj[static_cast<std::size_t>(r)])) ++r;
                reach_[loc(x) * static_cast<std::size_t>(q) + j] = r - 1;
            }
        }
    }
}

ChainMergeIndex ChainMergeIndex::build(OracleInterface& oracle, ChainDecomposition d) {
    ChainMergeIndex idx;
    idx.chains_ = std::move(d);
    idx.init_positions();
    idx.scan_all([&](ElementId x, ElementId y) {
        ++idx.build_queries_;
        return oracle.query(x, y) == RelationVerdict::Dominates;
    });
    const std::uint64_t q = static_cast<std::uint64_t>(idx.chain_count());
    internal_check(idx.build_queries_ <= 2 * q * static_cast<std::uint64_t>(idx.size()),
                   "index build exceeded its 2qn query budget");
    return idx;
}

ChainMergeIndex ChainMergeIndex::build_from_table(const RelationStore& table, ChainDecomposition d) {
    ChainMergeIndex idx;
    idx.chains_ = std::move(d);
    idx.init_positions();
    idx.scan_all([&](ElementId x, ElementId y) {
        auto v = table.get(x, y);
        internal_check(v.has_value(), "relation table is incomplete for this decomposition");
        return *v == RelationVerdict::Dominates;
    });
    return idx;
}

RelationVerdict ChainMergeIndex::lookup(ElementId x, ElementId y) const {
    if (x == y) throw SelfQuery();
    const std::size_t lx = loc(x), ly = loc(y);
    const int ci = chain_of_[lx];
    const int cj = chain_of_[ly];
    if (ci == cj) {
        return pos_of_[lx] > pos_of_[ly] ? RelationVerdict::Dominates : RelationVerdict::DominatedBy;
    }
    const std::size_t q = static_cast<std::size_t>(chain_count());
    if (reach_[lx * q + cj] >= pos_of_[ly]) return RelationVerdict::Dominates;
    if (reach_[ly * q + ci] >= pos_of_[lx]) return RelationVerdict::DominatedBy;
    return RelationVerdict::Incomparable;
}

GroundTruthPoset ChainMergeIndex::relation_table() const {
    const int n = size();
    for (ElementId e = 0; e < n; ++e) {
        internal_check(indexed(e), "relation_table needs a dense [0, n) universe");
    }
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && dominates(x, y))
                rows[static_cast<std::size_t>(x) * words + (y >> 6)] |= std::uint64_t{1} << (y & 63);
        }
    }
    return GroundTruthPoset::from_closure_rows(n, std::move(rows));
}

void ChainMergeIndex::fill_store(RelationStore& store) const {
    for (std::size_t a = 0; a < ids_.size(); ++a) {
        for (std::size_t b = a + 1; b < ids_.size(); ++b) {
            store.set(ids_[a], ids_[b], lookup(ids_[a], ids_[b]));
        }
    }
}

std::string ChainMergeIndex::dump() const {
    std::ostringstream out;
    const int q = chain_count();
    out << "chains " << q << "\n";
    for (int i = 0; i < q; ++i) {
        out << "chain " << i << " :";
        for (ElementId e : chains_.chains[static_cast<std::size_t>(i)]) out << " " << e;
        out << "\n";
    }
    std::vector<ElementId> sorted = ids_;
    std::sort(sorted.begin(), sorted.end());
    for (ElementId x : sorted) {
        out << "elem " << x << " chain " << chain_of(x) << " pos " << position_of(x) << " reach";
        for (int j = 0; j < q; ++j) out << " " << reach(x, j);
        out << "\n";
    }
    return out.str();
}

} // namespace posetkit
