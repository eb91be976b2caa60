#pragma once

#include <cstdint>

#include "tcomplete/random.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// Tensor with independent standard normal entries, filled in storage order.
Tensor3d gaussian_tensor(Index n1, Index n2, Index n3, Rng& rng);

/// A * B with A (n1 x r x n3) and B (r x n2 x n3) standard normal, which has
/// tubal rank r with probability one.
Tensor3d synth_low_tubal_rank(Index n1, Index n2, Index n3, Index r, std::uint64_t seed);

} // namespace tcomplete
