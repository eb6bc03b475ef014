#ifndef POSETKIT_ADVERSARY_HPP
#define POSETKIT_ADVERSARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "posetkit/oracle.hpp"
#include "posetkit/poset.hpp"

namespace posetkit {

/** Exact per-color deviation bookkeeping for the k-selection adversary,
 *  scaled by lcm(1..w) so every update is integer arithmetic. The running
 *  invariants: deviations sum to zero, and for every m the m smallest sum to
 *  at least m(m-w)/2. */
class DeviationTable {
public:
    explicit DeviationTable(int w);

    int colors() const { return static_cast<int>(d_.size()); }
    std::int64_t scale() const { return scale_; }
    std::int64_t scaled(int color) const { return d_[static_cast<std::size_t>(color)]; }
    double value(int color) const {
        return static_cast<double>(d_[static_cast<std::size_t>(color)]) / static_cast<double>(scale_);
    }

    // Pick the eligible color of smallest deviation (lowest id on ties) and
    // apply the three-rule update; returns the chosen color.
    int assign(const std::vector<int>& eligible);

    bool zero_sum() const;
    // 2 * (sum of m smallest scaled) >= scale * m * (m - w), for every m.
    bool prefix_sums_ok() const;

private:
    std::int64_t scale_;
    std::vector<std::int64_t> d_;
};

struct AdversaryAnswer {
    ElementId x, y;
    RelationVerdict verdict;
};

/** Adaptive oracle that commits to nothing beyond consistency with a poset of
 *  w pairwise-incomparable chains. Low-count queries are answered
 *  incomparable while an incomparability graph accumulates; an element is
 *  assigned a chain color the moment its query count reaches w-1, always
 *  distinct from its neighbors' colors; same-color pairs are ordered by the
 *  adversary's fixed element indexing. The k-selection variant picks colors
 *  by smallest deviation instead of lowest id. */
class MinAdversary final : public OracleInterface {
public:
    enum class ColorRule { LowestEligible, SmallestDeviation };

    MinAdversary(int n, int w, ColorRule rule = ColorRule::LowestEligible);
    // Same, with the element indexing drawn from a seed instead of identity.
    MinAdversary(int n, int w, ColorRule rule, std::uint64_t index_seed);

    int size() const { return n_; }
    int width_bound() const { return w_; }
    std::uint64_t queries() const { return static_cast<std::uint64_t>(log_.size()); }
    int color_of(ElementId e) const { return color_[static_cast<std::size_t>(e)]; }
    int query_count_of(ElementId e) const { return qcount_[static_cast<std::size_t>(e)]; }
    int rank_of(ElementId e) const { return rank_[static_cast<std::size_t>(e)]; }
    const DeviationTable& deviations() const { return dev_; }
    const std::vector<AdversaryAnswer>& transcript() const { return log_; }

    /** Complete the coloring (fresh colors first, then any color legal
     *  against the incomparability graph), order every color class by index,
     *  and return the resulting union of chains. Replays the transcript
     *  against it and throws WitnessMismatch on any disagreement. */
    GroundTruthPoset finalize_witness() const;
    std::vector<ElementId> witness_minimals() const;
    std::vector<int> witness_coloring() const;

protected:
    RelationVerdict do_query(ElementId x, ElementId y) override;

private:
    int n_, w_;
    ColorRule rule_;
    int words_;
    std::vector<int> rank_;
    std::vector<int> qcount_;
    std::vector<int> color_;
    std::vector<std::uint64_t> graph_;  // incomparability edges
    std::vector<char> has_comparable_;
    DeviationTable dev_;
    std::vector<AdversaryAnswer> log_;

    bool edge(ElementId a, ElementId b) const {
        return (graph_[static_cast<std::size_t>(a) * words_ + (b >> 6)] >> (b & 63)) & 1u;
    }
    void add_edge(ElementId a, ElementId b);
    void maybe_color(ElementId e);
    std::vector<int> eligible_colors(ElementId e, const std::vector<int>& coloring) const;
};

/** Small exact rational; enough for the bound formulas that are genuinely
 *  rational. decimal_string() is exact (denominators here are powers of 2). */
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t num, std::int64_t den);
    long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
    std::string decimal_string() const;
};

// Queries any algorithm needs against the min-adversary: (w+1)n/2 - w.
Rational lower_bound_min(std::int64_t n, std::int64_t w);

// The k-selection adversary bound with r = n/(2w-1); requires k <= r (else
// DomainError). Logs base 2; the value is irrational in general.
long double lower_bound_ksel(std::int64_t n, std::int64_t w, std::int64_t k);

// Distributional lower bound for randomized k-selection over the w-chain
// model: (w+3)n/4 - wk + w(1 - exp(-n/(8w))) * log2 C(n/(2w), k-1).
long double random_ksel_bound(std::int64_t n, std::int64_t w, std::int64_t k);

// Classical total-order bound for finding the k-th smallest of n:
// n - k + log2 C(n, k-1). Reporting reference only.
long double kth_smallest_lower_bound(std::int64_t n, std::int64_t k);

} // namespace posetkit

#endif
