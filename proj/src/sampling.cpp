#include "tcomplete/sampling.hpp"

#include <cmath>
#include <string>

#include "tcomplete/random.hpp"

namespace tcomplete {

TubalMask::TubalMask(Index n1, Index n2) {
    if (n1 < 1 || n2 < 1)
        throw InvalidArgument("TubalMask dimensions must be >= 1");
    pattern_ = Pattern::Constant(n1, n2, false);
}

TubalMask::TubalMask(Pattern pattern) : pattern_{std::move(pattern)} {
    if (pattern_.rows() < 1 || pattern_.cols() < 1)
        throw InvalidArgument("TubalMask dimensions must be >= 1");
    count_ = pattern_.count();
}

TubalMask TubalMask::full(Index n1, Index n2) {
    if (n1 < 1 || n2 < 1)
        throw InvalidArgument("TubalMask dimensions must be >= 1");
    return TubalMask(Pattern::Constant(n1, n2, true));
}

TubalMask TubalMask::from_pattern(Pattern pattern) { return TubalMask(std::move(pattern)); }

TubalMask TubalMask::from_pairs(Index n1, Index n2,
                                const std::vector<std::pair<Index, Index>>& pairs) {
    TubalMask mask(n1, n2);
    for (const auto& [i, j] : pairs) {
        if (i < 0 || i >= n1 || j < 0 || j >= n2)
            throw InvalidArgument("mask pair (" + std::to_string(i + 1) + ", " +
                                  std::to_string(j + 1) + ") out of range");
        if (mask.pattern_(i, j))
            throw InvalidArgument("duplicate mask pair (" + std::to_string(i + 1) + ", " +
                                  std::to_string(j + 1) + ")");
        mask.pattern_(i, j) = true;
    }
    mask.count_ = static_cast<Index>(pairs.size());
    return mask;
}

std::vector<std::pair<Index, Index>> TubalMask::pairs() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(static_cast<size_t>(count_));
    for (Index i = 0; i < rows(); ++i)
        for (Index j = 0; j < cols(); ++j)
            if (pattern_(i, j))
                out.emplace_back(i, j);
    return out;
}

TubalMask random_tubal_mask(Index n1, Index n2, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw InvalidArgument("sampling ratio must lie in (0, 1], got " + std::to_string(ratio));
    const Index total = n1 * n2;
    const auto count = static_cast<Index>(std::llround(ratio * static_cast<double>(total)));
    if (count < 1)
        throw EmptyMask("sampling ratio " + std::to_string(ratio) + " selects no tubes of a " +
                        std::to_string(n1) + "x" + std::to_string(n2) + " grid");
    Rng rng(seed);
    TubalMask::Pattern pattern = TubalMask::Pattern::Constant(n1, n2, false);
    for (Index p : rng.sample_without_replacement(total, count))
        pattern(p % n1, p / n1) = true;
    return TubalMask::from_pattern(std::move(pattern));
}

} // namespace tcomplete
