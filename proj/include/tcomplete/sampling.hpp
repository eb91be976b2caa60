#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// The sampled tube set Phi within [n1] x [n2]. Under tubal sampling the
/// observed entries are Omega = Phi x [n3]: a tube is either seen whole or not at all.
class TubalMask {
public:
    using Pattern = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

    /// Empty mask.
    TubalMask(Index n1, Index n2);

    static TubalMask full(Index n1, Index n2);

    /// From 0-based (i, j) pairs; throws on out-of-range or duplicate pairs.
    static TubalMask from_pairs(Index n1, Index n2,
                                const std::vector<std::pair<Index, Index>>& pairs);

    static TubalMask from_pattern(Pattern pattern);

    Index rows() const { return pattern_.rows(); }
    Index cols() const { return pattern_.cols(); }
    Index count() const { return count_; }
    double sampling_ratio() const {
        return static_cast<double>(count_) / static_cast<double>(rows() * cols());
    }

    bool observed(Index i, Index j) const { return pattern_(i, j); }
    const Pattern& pattern() const { return pattern_; }

    /// Sampled pairs in row-major order, 0-based.
    std::vector<std::pair<Index, Index>> pairs() const;

    friend bool operator==(const TubalMask& a, const TubalMask& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && (a.pattern_ == b.pattern_).all();
    }

private:
    explicit TubalMask(Pattern pattern);

    Pattern pattern_;
    Index count_ = 0;
};

/// round(ratio * n1 * n2) distinct tubes drawn uniformly without replacement.
/// Throws EmptyMask when that count is zero.
TubalMask random_tubal_mask(Index n1, Index n2, double ratio, std::uint64_t seed);

namespace detail {

inline void require_mask_fits(const TubalMask& mask, Index n1, Index n2, const char* what) {
    if (mask.rows() != n1 || mask.cols() != n2)
        throw DimensionMismatch(std::string(what) + ": mask is " + std::to_string(mask.rows()) +
                                "x" + std::to_string(mask.cols()) + ", data is " +
                                std::to_string(n1) + "x" + std::to_string(n2));
}

} // namespace detail

/// P_Phi on a single matrix (e.g. one Fourier slice).
template <typename Derived>
auto project_matrix(const Eigen::MatrixBase<Derived>& x, const TubalMask& mask) {
    using Scalar = typename Derived::Scalar;
    detail::require_mask_fits(mask, x.rows(), x.cols(), "project_matrix");
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(
        mask.pattern().select(x.derived().array(), Scalar(0)).matrix());
}

/// P_Omega: keeps sampled tubes, zeros the rest.
template <typename Scalar>
Tensor3<Scalar> project(const Tensor3<Scalar>& x, const TubalMask& mask) {
    detail::require_mask_fits(mask, x.n1(), x.n2(), "project");
    Tensor3<Scalar> out(x.n1(), x.n2(), x.n3());
    for (Index k = 0; k < x.n3(); ++k)
        out.slice(k) = mask.pattern().select(x.slice(k).array(), Scalar(0)).matrix();
    return out;
}

/// y on sampled tubes, x elsewhere (the data-consistency step).
template <typename Scalar>
Tensor3<Scalar> impose(const Tensor3<Scalar>& x, const Tensor3<Scalar>& y, const TubalMask& mask) {
    x.require_same_shape(y, "impose");
    detail::require_mask_fits(mask, x.n1(), x.n2(), "impose");
    Tensor3<Scalar> out(x.n1(), x.n2(), x.n3());
    for (Index k = 0; k < x.n3(); ++k)
        out.slice(k) = mask.pattern().select(y.slice(k).array(), x.slice(k).array()).matrix();
    return out;
}

} // namespace tcomplete
