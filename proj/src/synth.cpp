#include "tcomplete/synth.hpp"

#include <algorithm>
#include <string>

#include "tcomplete/talgebra.hpp"

namespace tcomplete {

Tensor3d gaussian_tensor(Index n1, Index n2, Index n3, Rng& rng) {
    Tensor3d t(n1, n2, n3);
    double* p = t.data();
    for (Index i = 0; i < t.size(); ++i)
        p[i] = rng.normal();
    return t;
}

Tensor3d synth_low_tubal_rank(Index n1, Index n2, Index n3, Index r, std::uint64_t seed) {
    if (r < 1 || r > std::min(n1, n2))
        throw InvalidArgument("synthetic tubal rank " + std::to_string(r) +
                              " must lie in [1, min(n1, n2)]");
    Rng rng(seed);
    const Tensor3d a = gaussian_tensor(n1, r, n3, rng);
    const Tensor3d b = gaussian_tensor(r, n2, n3, rng);
    return t_product(a, b);
}

} // namespace tcomplete
