#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "tcomplete/fourier.hpp"
#include "tcomplete/parallel.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// How per-Fourier-slice work is scheduled.
///
/// `Exploit` computes slices 0..n3/2 and fills the rest as conjugate mirrors,
/// forcing self-conjugate slices real. `Full` computes every slice directly.
/// Both give the same result to rounding for phase-invariant operations.
enum class SpectralSymmetry { Exploit, Full };

namespace detail {

inline Index computed_slices(Index n3, SpectralSymmetry sym) {
    return sym == SpectralSymmetry::Exploit ? n3 / 2 + 1 : n3;
}

inline bool self_conjugate(Index k, Index n3) { return k == 0 || 2 * k == n3; }

/// Mirrors slices n3/2+1.. from their conjugate partners and drops the
/// imaginary part of self-conjugate slices.
template <typename Real>
void complete_by_symmetry(SpectralTensor3<Real>& t, SpectralSymmetry sym) {
    if (sym != SpectralSymmetry::Exploit)
        return;
    using Complex = std::complex<Real>;
    const Index n3 = t.n3();
    for (Index k = n3 / 2 + 1; k < n3; ++k)
        t.slice(k) = t.slice(n3 - k).conjugate();
    t.slice(0) = t.slice(0).real().template cast<Complex>();
    if (n3 % 2 == 0)
        t.slice(n3 / 2) = t.slice(n3 / 2).real().template cast<Complex>();
}

template <typename MatrixType>
Eigen::BDCSVD<MatrixType> checked_svd(const MatrixType& m, unsigned options) {
    Eigen::BDCSVD<MatrixType> svd(m, options);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite())
        throw NumericalFailure("SVD failed to converge on a " + std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()) + " slice");
    return svd;
}

template <typename Real>
void require_finite(const Tensor3<Real>& a, const char* what) {
    if (!a.allFinite())
        throw NumericalFailure(std::string(what) + ": input has non-finite entries");
}

} // namespace detail

/// n x n x n3 tensor whose first frontal slice is the identity, rest zero.
template <typename Real>
Tensor3<Real> identity_tensor(Index n, Index n3) {
    Tensor3<Real> t(n, n, n3);
    t.slice(0).setIdentity();
    return t;
}

/// t-product of an n1 x n2 x n3 and an n2 x l x n3 tensor, computed as
/// slice-wise matrix products in the Fourier domain.
template <typename Real>
Tensor3<Real> t_product(const Tensor3<Real>& a, const Tensor3<Real>& b,
                        SpectralSymmetry sym = SpectralSymmetry::Exploit) {
    if (a.n2() != b.n1() || a.n3() != b.n3())
        throw DimensionMismatch("t_product: " + a.dims_string() + " * " + b.dims_string());
    const auto ahat = fft_mode3(a);
    const auto bhat = fft_mode3(b);
    SpectralTensor3<Real> chat(a.n1(), b.n2(), a.n3());
    detail::parallel_for(detail::computed_slices(a.n3(), sym),
                         [&](Index k) { chat.slice(k).noalias() = ahat.slice(k) * bhat.slice(k); });
    detail::complete_by_symmetry(chat, sym);
    return ifft_mode3(chat);
}

/// Tensor transpose: each slice transposed, slices 2..n3 in reverse order.
/// Equivalent to the conjugate transpose of every Fourier slice.
template <typename Real>
Tensor3<Real> t_transpose(const Tensor3<Real>& a) {
    const Index n3 = a.n3();
    Tensor3<Real> out(a.n2(), a.n1(), n3);
    for (Index k = 0; k < n3; ++k)
        out.slice(k) = a.slice((n3 - k) % n3).transpose();
    return out;
}

/// A = U * S * V^T with orthogonal U (n1 x m x n3), V (n2 x m x n3) and
/// f-diagonal S (m x m x n3), m = min(n1, n2).
template <typename Real>
struct TSvd {
    Tensor3<Real> u;
    Tensor3<Real> s;
    Tensor3<Real> v;
    /// m x n3; column k holds the (nonincreasing) singular values of Fourier slice k.
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> spectrum;
};

/// Per-Fourier-slice SVD assembled into tensors. Self-conjugate slices use a
/// real SVD and the remaining ones are conjugate mirrors, so the factors are real.
template <typename Real>
TSvd<Real> t_svd(const Tensor3<Real>& a) {
    using Complex = std::complex<Real>;
    using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    detail::require_finite(a, "t_svd");

    const Index n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    const Index m = std::min(n1, n2);
    const auto ahat = fft_mode3(a);
    SpectralTensor3<Real> uhat(n1, m, n3), shat(m, m, n3), vhat(n2, m, n3);
    RealMatrix spectrum(m, n3);
    constexpr unsigned thin = Eigen::ComputeThinU | Eigen::ComputeThinV;

    detail::parallel_for(n3 / 2 + 1, [&](Index k) {
        if (detail::self_conjugate(k, n3)) {
            const RealMatrix slice = ahat.slice(k).real();
            const auto svd = detail::checked_svd(slice, thin);
            uhat.slice(k) = svd.matrixU().template cast<Complex>();
            vhat.slice(k) = svd.matrixV().template cast<Complex>();
            spectrum.col(k) = svd.singularValues();
        } else {
            const ComplexMatrix slice = ahat.slice(k);
            const auto svd = detail::checked_svd(slice, thin);
            uhat.slice(k) = svd.matrixU();
            vhat.slice(k) = svd.matrixV();
            spectrum.col(k) = svd.singularValues();
        }
        shat.slice(k).diagonal() = spectrum.col(k).template cast<Complex>();
    });
    for (Index k = n3 / 2 + 1; k < n3; ++k)
        spectrum.col(k) = spectrum.col(n3 - k);
    detail::complete_by_symmetry(uhat, SpectralSymmetry::Exploit);
    detail::complete_by_symmetry(shat, SpectralSymmetry::Exploit);
    detail::complete_by_symmetry(vhat, SpectralSymmetry::Exploit);
    return {ifft_mode3(uhat), ifft_mode3(shat), ifft_mode3(vhat), std::move(spectrum)};
}

/// Singular values of every Fourier slice, m x n3 (column k = slice k).
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>
spectral_singular_values(const Tensor3<Real>& a, SpectralSymmetry sym = SpectralSymmetry::Exploit) {
    using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    detail::require_finite(a, "spectral_singular_values");
    const Index n3 = a.n3();
    const auto ahat = fft_mode3(a);
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> sv(std::min(a.n1(), a.n2()), n3);
    detail::parallel_for(detail::computed_slices(n3, sym), [&](Index k) {
        const ComplexMatrix slice = ahat.slice(k);
        sv.col(k) = detail::checked_svd(slice, 0).singularValues();
    });
    if (sym == SpectralSymmetry::Exploit)
        for (Index k = n3 / 2 + 1; k < n3; ++k)
            sv.col(k) = sv.col(n3 - k);
    return sv;
}

/// Moore-Penrose pseudo-inverse, per Fourier slice. Singular values at or below
/// rtol times the largest singular value over all slices are treated as zero.
template <typename Real>
Tensor3<Real> t_pinv(const Tensor3<Real>& a, Real rtol = Real(1e-10),
                     SpectralSymmetry sym = SpectralSymmetry::Exploit) {
    using Complex = std::complex<Real>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    detail::require_finite(a, "t_pinv");
    const Index n3 = a.n3();
    const Index computed = detail::computed_slices(n3, sym);
    const auto ahat = fft_mode3(a);

    std::vector<Eigen::BDCSVD<ComplexMatrix>> svds(static_cast<size_t>(computed));
    detail::parallel_for(computed, [&](Index k) {
        const ComplexMatrix slice = ahat.slice(k);
        svds[k] = detail::checked_svd(slice, Eigen::ComputeThinU | Eigen::ComputeThinV);
    });
    Real largest = 0;
    for (const auto& svd : svds)
        if (svd.singularValues().size() > 0)
            largest = std::max(largest, svd.singularValues()(0));
    const Real cutoff = rtol * largest;

    SpectralTensor3<Real> phat(a.n2(), a.n1(), n3);
    detail::parallel_for(computed, [&](Index k) {
        const auto& svd = svds[k];
        const auto& s = svd.singularValues();
        Index rank = 0;
        while (rank < s.size() && s(rank) > cutoff)
            ++rank;
        const Eigen::Matrix<Complex, Eigen::Dynamic, 1> inv =
            s.head(rank).cwiseInverse().template cast<Complex>();
        phat.slice(k).noalias() =
            svd.matrixV().leftCols(rank) * inv.asDiagonal() * svd.matrixU().leftCols(rank).adjoint();
    });
    detail::complete_by_symmetry(phat, sym);
    return ifft_mode3(phat);
}

/// Multi rank (numerical rank of every Fourier slice) and tubal rank (its max).
struct MultiRank {
    std::vector<Index> ranks;
    Index tubal_rank = 0;
};

/// A singular value counts when it exceeds tol times the largest singular value
/// over all Fourier slices.
template <typename Real>
MultiRank tubal_rank(const Tensor3<Real>& a, Real tol = Real(1e-9)) {
    if (!(tol > 0))
        throw InvalidArgument("tubal_rank: tol must be positive");
    const auto sv = spectral_singular_values(a);
    const Real largest = sv.size() > 0 ? sv.maxCoeff() : Real(0);
    MultiRank out;
    out.ranks.resize(static_cast<size_t>(a.n3()));
    for (Index k = 0; k < a.n3(); ++k) {
        out.ranks[k] = (sv.col(k).array() > tol * largest).count();
        out.tubal_rank = std::max(out.tubal_rank, out.ranks[k]);
    }
    return out;
}

/// True when every frontal slice is diagonal up to `tol` (absolute).
template <typename Real>
bool is_f_diagonal(const Tensor3<Real>& t, Real tol = Real(0)) {
    for (Index k = 0; k < t.n3(); ++k)
        for (Index j = 0; j < t.n2(); ++j)
            for (Index i = 0; i < t.n1(); ++i)
                if (i != j && std::abs(t(i, j, k)) > tol)
                    return false;
    return true;
}

} // namespace tcomplete
