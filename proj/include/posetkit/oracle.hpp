#ifndef POSETKIT_ORACLE_HPP
#define POSETKIT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "posetkit/poset.hpp"
#include "posetkit/rng.hpp"

namespace posetkit {

/** The query interface every algorithm consumes. Implementations must keep
 *  their answers mutually consistent with some width-bounded order; beyond
 *  that they may be ground-truth-backed, caching, counting, or adversarial. */
class OracleInterface {
public:
    virtual ~OracleInterface() = default;

    RelationVerdict query(ElementId x, ElementId y) {
        if (x == y) throw SelfQuery();
        return do_query(x, y);
    }

protected:
    virtual RelationVerdict do_query(ElementId x, ElementId y) = 0;
};

/** Answers straight from a GroundTruthPoset. */
class GroundTruthOracle final : public OracleInterface {
public:
    explicit GroundTruthOracle(const GroundTruthPoset& p) : p_(&p) {}

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override { return p_->relation(x, y); }

private:
    const GroundTruthPoset* p_;
};

/** Transparent pass-through that counts forwarded queries. */
class QueryCounter final : public OracleInterface {
public:
    explicit QueryCounter(OracleInterface& inner) : inner_(&inner) {}

    std::uint64_t count() const { return count_; }
    void reset() { count_ = 0; }

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override {
        ++count_;
        return inner_->query(x, y);
    }

private:
    OracleInterface* inner_;
    std::uint64_t count_ = 0;
};

/** Presents a relabelled sub-universe: local id i maps to ids[i]. */
class SubsetOracle final : public OracleInterface {
public:
    SubsetOracle(OracleInterface& inner, std::vector<ElementId> ids)
        : inner_(&inner), ids_(std::move(ids)) {}

    const std::vector<ElementId>& ids() const { return ids_; }

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override {
        return inner_->query(ids_[static_cast<std::size_t>(x)], ids_[static_cast<std::size_t>(y)]);
    }

private:
    OracleInterface* inner_;
    std::vector<ElementId> ids_;
};

/** Plain partial verdict table: a pair memo with no inference. Both
 *  orientations of a pair are stored together. */
class RelationStore {
public:
    explicit RelationStore(int n);

    int size() const { return n_; }
    std::optional<RelationVerdict> get(ElementId x, ElementId y) const;
    void set(ElementId x, ElementId y, RelationVerdict v);
    bool known_dominates(ElementId x, ElementId y) const;
    bool complete() const;

private:
    int n_;
    std::vector<std::uint8_t> cells_;
};

/** Answers from a RelationStore when possible, otherwise forwards and records.
 *  Mergesort runs behind one of these so relations a finished sub-problem
 *  already determined are never bought twice. */
class CachingOracle final : public OracleInterface {
public:
    CachingOracle(OracleInterface& inner, RelationStore& store) : inner_(&inner), store_(&store) {}

    std::uint64_t forwarded() const { return forwarded_; }

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override {
        if (auto v = store_->get(x, y)) return *v;
        ++forwarded_;
        RelationVerdict v = inner_->query(x, y);
        store_->set(x, y, v);
        return v;
    }

private:
    OracleInterface* inner_;
    RelationStore* store_;
    std::uint64_t forwarded_ = 0;
};

/** Verdict memo plus the transitive closure of every answered domination.
 *  implied() resolves a pair from repeats, antisymmetry, or transitivity;
 *  nothing else is inferable for strict orders. */
class KnownRelations {
public:
    explicit KnownRelations(int n);

    int size() const { return n_; }
    std::optional<RelationVerdict> implied(ElementId x, ElementId y) const;
    void record(ElementId x, ElementId y, RelationVerdict v);
    bool dominates_known(ElementId x, ElementId y) const {
        return (down_[static_cast<std::size_t>(x) * words_ + (y >> 6)] >> (y & 63)) & 1u;
    }

    // Closure sanity: known x>y and y>z imply known x>z (tested invariant).
    bool closure_holds() const;

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> down_, up_;
    RelationStore answered_;
};

/** Forwards only queries whose answer is not implied by previous responses
 *  via repeats, antisymmetry, or transitivity. Disabled by default in the
 *  sorters (their query bounds are about raw counts); required inside the
 *  transitive-relation adapter. */
class InferenceCache final : public OracleInterface {
public:
    using InferredHook = std::function<void(ElementId, ElementId, RelationVerdict)>;

    InferenceCache(OracleInterface& inner, int n) : inner_(&inner), known_(n) {}

    std::uint64_t forwarded() const { return forwarded_; }
    const KnownRelations& known() const { return known_; }
    void set_inferred_hook(InferredHook h) { on_inferred_ = std::move(h); }

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override;

private:
    OracleInterface* inner_;
    KnownRelations known_;
    std::uint64_t forwarded_ = 0;
    InferredHook on_inferred_;
};

/** Ground truth for a transitive (not necessarily irreflexive) relation.
 *  Diagonal entries arise only through closure of mutual pairs, which is the
 *  only reflexivity a pairwise oracle can ever exhibit. */
class TransitiveRelation {
public:
    TransitiveRelation() = default;
    static TransitiveRelation from_matrix(int n, std::vector<std::uint64_t> rows);
    // A poset's closure with `mutual_pairs` randomly chosen comparable pairs
    // turned into two-way relations, re-closed.
    static TransitiveRelation from_poset_with_mutuals(const GroundTruthPoset& p, int mutual_pairs,
                                                      std::uint64_t seed);

    int size() const { return n_; }
    bool holds(ElementId x, ElementId y) const {
        return (rel_[static_cast<std::size_t>(x) * words_ + (y >> 6)] >> (y & 63)) & 1u;
    }
    bool operator==(const TransitiveRelation& o) const { return n_ == o.n_ && rel_ == o.rel_; }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rel_;

    void close();
};

/** Four-valued oracle over a transitive relation: one counted query reveals
 *  both directions of a pair. */
class TransitiveRelationOracle {
public:
    explicit TransitiveRelationOracle(const TransitiveRelation& t) : t_(&t) {}

    // (x holds-over y, y holds-over x)
    std::pair<bool, bool> pair_query(ElementId x, ElementId y) {
        if (x == y) throw SelfQuery();
        ++count_;
        return {t_->holds(x, y), t_->holds(y, x)};
    }

    std::uint64_t count() const { return count_; }
    int size() const { return t_->size(); }

private:
    const TransitiveRelation* t_;
    std::uint64_t count_ = 0;
};

/** Poset oracle layered over a transitive relation. Checks inference first;
 *  otherwise spends one inner query. A mutual pair is resolved by the
 *  deterministic tie rule: the higher id dominates. Either direction would
 *  stay consistent, so determinism is purely for reproducibility. Emitted
 *  verdicts always form a poset minimally induced by the relation. */
class TransitiveOracleAdapter final : public OracleInterface {
public:
    explicit TransitiveOracleAdapter(TransitiveRelationOracle& inner)
        : inner_(&inner), known_(inner.size()) {}

    std::uint64_t inner_queries() const { return inner_->count(); }
    const KnownRelations& known() const { return known_; }
    int size() const { return inner_->size(); }
    TransitiveRelationOracle& inner() { return *inner_; }

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override;

private:
    TransitiveRelationOracle* inner_;
    KnownRelations known_;
};

class ChainMergeIndex;  // chainmerge.hpp

/** Second pass of transitive-relation sorting: given a completed sort of the
 *  induced poset into q chains, locate for every element and chain the largest
 *  member it relates over, by merge scans against the inner oracle. At most
 *  2nq inner queries. Returns the full relation matrix (diagonal filled where
 *  mutual pairs force it). */
TransitiveRelation recover_extra_relations(TransitiveRelationOracle& inner, const ChainMergeIndex& cm);

} // namespace posetkit

#endif
