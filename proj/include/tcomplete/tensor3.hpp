#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "tcomplete/error.hpp"

namespace tcomplete {

using Index = Eigen::Index;

/// Dense 3-mode tensor of size n1 x n2 x n3.
///
/// Storage is slice-major: the n3 frontal slices are contiguous n1 x n2
/// column-major blocks, so entry (i, j, k) lives at offset i + n1 * (j + n2 * k).
/// The whole buffer is exposed as the n1 x (n2 * n3) unfolding `matrix()`, which
/// makes element-wise arithmetic plain Eigen expressions.
template <typename Scalar_>
class Tensor3 {
public:
    using Scalar = Scalar_;
    using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using TubeMap = Eigen::Map<Vector, 0, Eigen::InnerStride<>>;
    using ConstTubeMap = Eigen::Map<const Vector, 0, Eigen::InnerStride<>>;

    Tensor3() = default;

    /// Zero tensor.
    Tensor3(Index n1, Index n2, Index n3) : n1_{n1}, n2_{n2}, n3_{n3} {
        if (n1 < 1 || n2 < 1 || n3 < 1)
            throw InvalidArgument("Tensor3 dimensions must be >= 1, got " + dims_string());
        data_.setZero(n1, n2 * n3);
    }

    /// Adopts an n1 x (n2 * n3) unfolding.
    Tensor3(Index n1, Index n2, Index n3, Matrix unfolding) : n1_{n1}, n2_{n2}, n3_{n3} {
        if (n1 < 1 || n2 < 1 || n3 < 1)
            throw InvalidArgument("Tensor3 dimensions must be >= 1, got " + dims_string());
        if (unfolding.rows() != n1 || unfolding.cols() != n2 * n3)
            throw DimensionMismatch("unfolding does not match dims " + dims_string());
        data_ = std::move(unfolding);
    }

    static Tensor3 Zero(Index n1, Index n2, Index n3) { return Tensor3(n1, n2, n3); }

    static Tensor3 from_slices(const std::vector<Matrix>& slices) {
        if (slices.empty())
            throw InvalidArgument("from_slices needs at least one slice");
        Tensor3 t(slices.front().rows(), slices.front().cols(), static_cast<Index>(slices.size()));
        for (Index k = 0; k < t.n3(); ++k) {
            if (slices[k].rows() != t.n1() || slices[k].cols() != t.n2())
                throw DimensionMismatch("from_slices: slices differ in shape");
            t.slice(k) = slices[k];
        }
        return t;
    }

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }
    Index n3() const { return n3_; }
    std::array<Index, 3> dims() const { return {n1_, n2_, n3_}; }
    Index size() const { return n1_ * n2_ * n3_; }
    bool empty() const { return size() == 0; }

    std::string dims_string() const {
        return std::to_string(n1_) + "x" + std::to_string(n2_) + "x" + std::to_string(n3_);
    }

    Scalar& operator()(Index i, Index j, Index k) { return data_(i, j + n2_ * k); }
    const Scalar& operator()(Index i, Index j, Index k) const { return data_(i, j + n2_ * k); }

    /// k-th frontal slice, n1 x n2.
    auto slice(Index k) { return data_.middleCols(k * n2_, n2_); }
    auto slice(Index k) const { return data_.middleCols(k * n2_, n2_); }

    /// (i, j)-th tube, length n3.
    TubeMap tube(Index i, Index j) {
        return TubeMap(data_.data() + i + n1_ * j, n3_, Eigen::InnerStride<>(n1_ * n2_));
    }
    ConstTubeMap tube(Index i, Index j) const {
        return ConstTubeMap(data_.data() + i + n1_ * j, n3_, Eigen::InnerStride<>(n1_ * n2_));
    }

    /// The n1 x (n2 * n3) unfolding that owns the storage.
    Matrix& matrix() { return data_; }
    const Matrix& matrix() const { return data_; }

    /// Row p of this (n1 * n2) x n3 view is the tube with p = i + n1 * j.
    auto tubes() {
        return Eigen::Map<Matrix>(data_.data(), n1_ * n2_, n3_);
    }
    auto tubes() const {
        return Eigen::Map<const Matrix>(data_.data(), n1_ * n2_, n3_);
    }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }

    RealScalar norm() const { return data_.norm(); }
    RealScalar squaredNorm() const { return data_.squaredNorm(); }
    RealScalar maxAbs() const { return empty() ? RealScalar(0) : data_.cwiseAbs().maxCoeff(); }
    bool allFinite() const { return data_.allFinite(); }

    template <typename NewScalar>
    Tensor3<NewScalar> cast() const {
        return Tensor3<NewScalar>(n1_, n2_, n3_, data_.template cast<NewScalar>());
    }

    Tensor3<RealScalar> real() const {
        return Tensor3<RealScalar>(n1_, n2_, n3_, data_.real());
    }

    Tensor3 conjugate() const { return Tensor3(n1_, n2_, n3_, data_.conjugate()); }

    bool same_shape(const Tensor3& other) const { return dims() == other.dims(); }

    Tensor3& operator+=(const Tensor3& rhs) {
        require_same_shape(rhs, "+=");
        data_ += rhs.data_;
        return *this;
    }
    Tensor3& operator-=(const Tensor3& rhs) {
        require_same_shape(rhs, "-=");
        data_ -= rhs.data_;
        return *this;
    }
    Tensor3& operator*=(Scalar s) {
        data_ *= s;
        return *this;
    }

    friend Tensor3 operator+(Tensor3 lhs, const Tensor3& rhs) { return lhs += rhs; }
    friend Tensor3 operator-(Tensor3 lhs, const Tensor3& rhs) { return lhs -= rhs; }
    friend Tensor3 operator*(Tensor3 t, Scalar s) { return t *= s; }
    friend Tensor3 operator*(Scalar s, Tensor3 t) { return t *= s; }
    friend Tensor3 operator-(Tensor3 t) { return t *= Scalar(-1); }

    /// Exact (bitwise on values) comparison.
    friend bool operator==(const Tensor3& a, const Tensor3& b) {
        return a.dims() == b.dims() && a.data_ == b.data_;
    }

    void require_same_shape(const Tensor3& other, const char* what) const {
        if (!same_shape(other))
            throw DimensionMismatch(std::string(what) + ": " + dims_string() + " vs " +
                                    other.dims_string());
    }

private:
    Index n1_ = 0;
    Index n2_ = 0;
    Index n3_ = 0;
    Matrix data_;
};

using Tensor3d = Tensor3<double>;
using Tensor3cd = Tensor3<std::complex<double>>;

/// Fourier-domain mirror of a real tensor: frontal slices of fft(A, [], 3).
template <typename Real>
using SpectralTensor3 = Tensor3<std::complex<Real>>;

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny).
template <typename Scalar>
typename Tensor3<Scalar>::RealScalar relative_distance(const Tensor3<Scalar>& a,
                                                       const Tensor3<Scalar>& b) {
    using Real = typename Tensor3<Scalar>::RealScalar;
    a.require_same_shape(b, "relative_distance");
    const Real denom = b.norm();
    const Real diff = (a.matrix() - b.matrix()).norm();
    return denom > Real(0) ? diff / denom : diff;
}

} // namespace tcomplete
