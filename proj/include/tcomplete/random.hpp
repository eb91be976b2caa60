#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// Seedable generator whose output is fixed across platforms and standard
/// library versions.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard specifies bit for bit. Bounded integers and normals are derived
/// from raw 64-bit draws here, since the std distributions are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : Rng({seed}) {}

    /// Seeds from several words, e.g. (master seed, slice, iteration).
    Rng(std::initializer_list<std::uint64_t> seed_words);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n), unbiased. n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal (Box-Muller, one value cached).
    double normal();

    /// k distinct values from [0, n) in draw order (partial Fisher-Yates).
    std::vector<Index> sample_without_replacement(Index n, Index k);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace tcomplete
