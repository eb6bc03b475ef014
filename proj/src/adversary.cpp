#include "posetkit/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "posetkit/rng.hpp"

namespace posetkit {

DeviationTable::DeviationTable(int w) {
    internal_check(w >= 1, "deviation table needs at least one color");
    scale_ = 1;
    for (int s = 2; s <= w; ++s) scale_ = std::lcm(scale_, static_cast<std::int64_t>(s));
    d_.assign(static_cast<std::size_t>(w), 0);
}

int DeviationTable::assign(const std::vector<int>& eligible) {
    internal_check(!eligible.empty(), "color assignment needs an eligible color");
    int chosen = eligible.front();
    for (int c : eligible) {
        if (d_[static_cast<std::size_t>(c)] < d_[static_cast<std::size_t>(chosen)]) chosen = c;
    }
    const std::int64_t share = scale_ / static_cast<std::int64_t>(eligible.size());
    for (int c : eligible) d_[static_cast<std::size_t>(c)] -= share;
    d_[static_cast<std::size_t>(chosen)] += scale_;
    return chosen;
}

bool DeviationTable::zero_sum() const {
    std::int64_t s = 0;
    for (std::int64_t v : d_) s += v;
    return s == 0;
}

bool DeviationTable::prefix_sums_ok() const {
    std::vector<std::int64_t> sorted = d_;
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t w = static_cast<std::int64_t>(d_.size());
    std::int64_t acc = 0;
    for (std::int64_t m = 1; m <= w; ++m) {
        acc += sorted[static_cast<std::size_t>(m - 1)];
        if (2 * acc < scale_ * m * (m - w)) return false;
    }
    return true;
}

MinAdversary::MinAdversary(int n, int w, ColorRule rule)
    : n_(n), w_(w), rule_(rule), words_((n + 63) / 64), rank_(static_cast<std::size_t>(n)),
      qcount_(static_cast<std::size_t>(n), 0), color_(static_cast<std::size_t>(n), -1),
      graph_(static_cast<std::size_t>(n) * words_, 0), has_comparable_(static_cast<std::size_t>(n), 0),
      dev_(w) {
    internal_check(n >= 0 && w >= 1, "adversary needs n >= 0, w >= 1");
    for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(i)] = i;
}

MinAdversary::MinAdversary(int n, int w, ColorRule rule, std::uint64_t index_seed) : MinAdversary(n, w, rule) {
    Rng rng(index_seed);
    std::vector<int> perm = rng_permutation(rng, n);
    for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)];
}

void MinAdversary::add_edge(ElementId a, ElementId b) {
    graph_[static_cast<std::size_t>(a) * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
    graph_[static_cast<std::size_t>(b) * words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
}

std::vector<int> MinAdversary::eligible_colors(ElementId e, const std::vector<int>& coloring) const {
    std::vector<char> taken(static_cast<std::size_t>(w_), 0);
    for (int b = 0; b < n_; ++b) {
        if (edge(e, b) && coloring[static_cast<std::size_t>(b)] >= 0)
            taken[static_cast<std::size_t>(coloring[static_cast<std::size_t>(b)])] = 1;
    }
    std::vector<int> out;
    for (int c = 0; c < w_; ++c) {
        if (!taken[static_cast<std::size_t>(c)]) out.push_back(c);
    }
    return out;
}

void MinAdversary::maybe_color(ElementId e) {
    if (color_[static_cast<std::size_t>(e)] >= 0 || qcount_[static_cast<std::size_t>(e)] < w_ - 1) return;
    std::vector<int> eligible = eligible_colors(e, color_);
    internal_check(!eligible.empty(), "an element at the coloring threshold always has an eligible color");
    int chosen;
    if (rule_ == ColorRule::SmallestDeviation) {
        chosen = dev_.assign(eligible);
        internal_check(dev_.zero_sum() && dev_.prefix_sums_ok(), "deviation invariants violated");
    } else {
        chosen = eligible.front();
    }
    color_[static_cast<std::size_t>(e)] = chosen;
}

RelationVerdict MinAdversary::do_query(ElementId x, ElementId y) {
    internal_check(x >= 0 && x < n_ && y >= 0 && y < n_, "query out of range");
    ++qcount_[static_cast<std::size_t>(x)];
    ++qcount_[static_cast<std::size_t>(y)];
    const bool low_count = qcount_[static_cast<std::size_t>(x)] <= w_ - 1 ||
                           qcount_[static_cast<std::size_t>(y)] <= w_ - 1;
    if (low_count) add_edge(x, y);
    // Threshold coloring; with w == 1 the threshold is zero, so the first
    // touch colors. The fresh edge keeps the two assignments distinct.
    maybe_color(x);
    maybe_color(y);
    RelationVerdict v;
    if (low_count) {
        v = RelationVerdict::Incomparable;
    } else if (color_[static_cast<std::size_t>(x)] != color_[static_cast<std::size_t>(y)]) {
        add_edge(x, y);
        v = RelationVerdict::Incomparable;
    } else {
        v = rank_[static_cast<std::size_t>(x)] > rank_[static_cast<std::size_t>(y)]
                ? RelationVerdict::Dominates
                : RelationVerdict::DominatedBy;
        has_comparable_[static_cast<std::size_t>(x)] = 1;
        has_comparable_[static_cast<std::size_t>(y)] = 1;
    }
    log_.push_back({x, y, v});
    return v;
}

std::vector<int> MinAdversary::witness_coloring() const {
    std::vector<int> coloring = color_;
    std::vector<char> used(static_cast<std::size_t>(w_), 0);
    for (int c : coloring) {
        if (c >= 0) used[static_cast<std::size_t>(c)] = 1;
    }
    // Unassigned elements take a never-used color when one exists: they then
    // head their own chain, which keeps candidate survivors minimal.
    for (ElementId e = 0; e < n_; ++e) {
        if (coloring[static_cast<std::size_t>(e)] >= 0) continue;
        int chosen = -1;
        for (int c = 0; c < w_; ++c) {
            if (!used[static_cast<std::size_t>(c)]) {
                chosen = c;
                break;
            }
        }
        if (chosen < 0) {
            std::vector<int> eligible = eligible_colors(e, coloring);
            internal_check(!eligible.empty(), "unassigned elements always have an eligible color");
            chosen = eligible.front();
        }
        coloring[static_cast<std::size_t>(e)] = chosen;
        used[static_cast<std::size_t>(chosen)] = 1;
    }
    // Use every chain at least once where a free element allows it.
    for (int c = 0; c < w_; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        for (ElementId e = 0; e < n_; ++e) {
            if (has_comparable_[static_cast<std::size_t>(e)]) continue;
            int own = coloring[static_cast<std::size_t>(e)];
            int class_size = 0;
            for (int v : coloring) class_size += v == own;
            if (class_size < 2) continue;
            coloring[static_cast<std::size_t>(e)] = c;
            used[static_cast<std::size_t>(c)] = 1;
            break;
        }
    }
    return coloring;
}

GroundTruthPoset MinAdversary::finalize_witness() const {
    std::vector<int> coloring = witness_coloring();
    std::vector<std::vector<ElementId>> classes(static_cast<std::size_t>(w_));
    for (ElementId e = 0; e < n_; ++e) classes[static_cast<std::size_t>(coloring[static_cast<std::size_t>(e)])].push_back(e);
    std::vector<std::pair<ElementId, ElementId>> edges;
    for (auto& cls : classes) {
        std::sort(cls.begin(), cls.end(),
                  [&](ElementId a, ElementId b) { return rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]; });
        for (std::size_t i = 1; i < cls.size(); ++i) edges.emplace_back(cls[i], cls[i - 1]);
    }
    GroundTruthPoset witness = GroundTruthPoset::from_edges(n_, edges);
    for (const auto& ans : log_) {
        if (witness.relation(ans.x, ans.y) != ans.verdict)
            throw WitnessMismatch("transcript answer disagrees with the finalized witness");
    }
    return witness;
}

std::vector<ElementId> MinAdversary::witness_minimals() const {
    GroundTruthPoset witness = finalize_witness();
    std::vector<ElementId> out;
    for (ElementId e = 0; e < n_; ++e) {
        bool minimal = true;
        for (ElementId y = 0; y < n_ && minimal; ++y) minimal = y == e || !witness.dominates(e, y);
        if (minimal) out.push_back(e);
    }
    return out;
}

Rational Rational::of(std::int64_t num, std::int64_t den) {
    internal_check(den != 0, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

std::string Rational::decimal_string() const {
    std::int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    internal_check(d == 1, "denominator is not decimal-exact");
    // Scale to 10^max(twos, fives).
    const int digits = std::max(twos, fives);
    __int128 scaled = num;
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= den;
    bool neg = scaled < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-scaled) : static_cast<unsigned __int128>(scaled);
    std::string raw;
    do {
        raw.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    } while (mag > 0);
    while (static_cast<int>(raw.size()) <= digits) raw.push_back('0');
    std::reverse(raw.begin(), raw.end());
    std::string out = neg ? "-" : "";
    if (digits == 0) return out + raw;
    out += raw.substr(0, raw.size() - static_cast<std::size_t>(digits));
    out += ".";
    out += raw.substr(raw.size() - static_cast<std::size_t>(digits));
    return out;
}

Rational lower_bound_min(std::int64_t n, std::int64_t w) {
    internal_check(n >= w && w >= 1, "lower_bound_min needs n >= w >= 1");
    return Rational::of((w + 1) * n - 2 * w, 2);
}

namespace {

// log2 of the generalized binomial C(a, j) with real a > j - 1.
long double log2_binomial_real(long double a, std::int64_t j) {
    internal_check(j >= 0, "binomial with negative lower index");
    if (j == 0) return 0.0L;
    internal_check(a > static_cast<long double>(j - 1), "binomial argument out of domain");
    long double s = 0.0L;
    for (std::int64_t i = 0; i < j; ++i) s += std::log2(a - static_cast<long double>(i));
    s -= static_cast<long double>(std::lgamma(static_cast<double>(j) + 1.0)) / std::log(2.0L);
    return s;
}

} // namespace

long double lower_bound_ksel(std::int64_t n, std::int64_t w, std::int64_t k) {
    internal_check(n >= 1 && w >= 1 && k >= 1, "lower_bound_ksel: bad arguments");
    if (k * (2 * w - 1) > n) throw DomainError("lower_bound_ksel needs k <= n/(2w-1)");
    const long double r = static_cast<long double>(n) / static_cast<long double>(2 * w - 1);
    const long double wl = static_cast<long double>(w);
    const long double nl = static_cast<long double>(n);
    const long double kl = static_cast<long double>(k);
    const long double branch1 =
        (wl - 1.0L) * log2_binomial_real(r, k - 1) + log2_binomial_real(r * wl, k - 1);
    const long double branch2 = nl * (r - kl) * (wl - 1.0L) / (2.0L * r) +
                                log2_binomial_real(static_cast<long double>(n - (w - 1) * k), k - 1);
    return (wl + 1.0L) * nl / 2.0L - wl * (kl + std::log2(kl)) - wl * wl * wl / 8.0L +
           std::min(branch1, branch2);
}

long double random_ksel_bound(std::int64_t n, std::int64_t w, std::int64_t k) {
    internal_check(n >= 1 && w >= 1 && k >= 1, "random_ksel_bound: bad arguments");
    const long double wl = static_cast<long double>(w);
    const long double nl = static_cast<long double>(n);
    const long double binom = log2_binomial_real(nl / (2.0L * wl), k - 1);
    return (wl + 3.0L) * nl / 4.0L - wl * static_cast<long double>(k) +
           wl * (1.0L - std::exp(-nl / (8.0L * wl))) * binom;
}

long double kth_smallest_lower_bound(std::int64_t n, std::int64_t k) {
    internal_check(n >= k && k >= 1, "kth_smallest_lower_bound: bad arguments");
    return static_cast<long double>(n - k) + log2_binomial_real(static_cast<long double>(n), k - 1);
}

} // namespace posetkit
