#include "tcomplete/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace tcomplete {

Rng::Rng(std::initializer_list<std::uint64_t> seed_words) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * seed_words.size());
    for (std::uint64_t w : seed_words) {
        words.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0)
        throw InvalidArgument("Rng::below: empty range");
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = next();
    while (draw >= limit)
        draw = next();
    return draw % n;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
    if (k < 0 || k > n)
        throw InvalidArgument("sample_without_replacement: k must lie in [0, n]");
    std::vector<Index> pool(static_cast<size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Index>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<size_t>(k));
    return pool;
}

} // namespace tcomplete
