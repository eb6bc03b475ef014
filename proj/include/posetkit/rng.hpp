#ifndef POSETKIT_RNG_HPP
#define POSETKIT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace posetkit {

// The one generator used everywhere. All randomness in the library flows from
// an explicit seed through mt19937_64; reductions below avoid
// std::uniform_int_distribution so the produced streams are pinned to the
// engine, not to the standard library build.
using Rng = std::mt19937_64;

// Uniform value in [0, n). Rejection sampling keeps it unbiased.
inline std::uint64_t rng_below(Rng& rng, std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

// Fisher-Yates shuffle driven by rng_below.
template <typename T>
void rng_shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

inline std::vector<int> rng_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    rng_shuffle(rng, p);
    return p;
}

} // namespace posetkit

#endif
