#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ngmeet::rng {

// All randomness in the project flows through these helpers so that a seed
// pins the exact bit stream. std::normal_distribution and std::shuffle are
// implementation-defined; these are not.

inline double uniform01(std::mt19937_64& gen) {
    // 53-bit mantissa draw in [0, 1).
    return (gen() >> 11) * 0x1.0p-53;
}

inline double normal(std::mt19937_64& gen) {
    // Box-Muller; discards the second variate to keep the stream simple.
    double u1 = uniform01(gen);
    while (u1 <= 0.0) u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = gen();
    while (v >= limit) v = gen();
    return v % n;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_index(gen, i)]);
}

inline std::vector<std::int64_t> permutation(std::int64_t n,
                                             std::mt19937_64& gen) {
    std::vector<std::int64_t> p(n);
    for (std::int64_t i = 0; i < n; ++i) p[i] = i;
    shuffle(p, gen);
    return p;
}

}  // namespace ngmeet::rng
