#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "tcomplete/prox.hpp"
#include "tcomplete/talgebra.hpp"

namespace tcomplete {

/// Spectral penalty promoting low tubal rank.
enum class Regularizer {
    Tnn,  ///< tensor nuclear norm: sum of Fourier-slice singular values
    Tl12, ///< per-slice L1 minus L2 of the singular values, summed over slices
};

inline const char* to_string(Regularizer reg) {
    return reg == Regularizer::Tnn ? "tnn" : "tl12";
}

/// Sum over Fourier slices j and indices i of the singular values of slice j.
template <typename Real>
Real tnn(const Tensor3<Real>& x) {
    return spectral_singular_values(x).sum();
}

/// Sum over Fourier slices of ||s_j||_1 - ||s_j||_2.
template <typename Real>
Real tl12(const Tensor3<Real>& x) {
    const auto sv = spectral_singular_values(x);
    Real total = 0;
    for (Index k = 0; k < sv.cols(); ++k)
        total += sv.col(k).sum() - sv.col(k).norm();
    return total;
}

namespace detail {

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> shrink_spectrum(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& s,
                                                       Real mu, Regularizer reg) {
    return reg == Regularizer::Tnn ? soft_threshold(s, mu) : prox_l1_minus_l2(s, mu);
}

/// U diag(shrink(s)) V^H for one slice.
template <typename MatrixType, typename Real>
MatrixType shrink_slice(const MatrixType& slice, Real mu, Regularizer reg) {
    using Scalar = typename MatrixType::Scalar;
    const auto svd = checked_svd(slice, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Matrix<Real, Eigen::Dynamic, 1> s = svd.singularValues();
    const Eigen::Matrix<Real, Eigen::Dynamic, 1> shrunk = shrink_spectrum(s, mu, reg);
    Index keep = shrunk.size();
    while (keep > 0 && shrunk(keep - 1) == Real(0))
        --keep;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = shrunk.head(keep).template cast<Scalar>();
    return svd.matrixU().leftCols(keep) * d.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
}

} // namespace detail

/// Proximal map of mu * h on the t-SVD spectrum: every Fourier slice's singular
/// values are shrunk (soft threshold for TNN, L1-L2 prox for TL12) and the
/// slice is rebuilt from its singular vectors; equals U * S_mu * V^T.
template <typename Real>
Tensor3<Real> spectral_shrink(const Tensor3<Real>& x, Real mu, Regularizer reg,
                              SpectralSymmetry sym = SpectralSymmetry::Exploit) {
    using Complex = std::complex<Real>;
    using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    if (!(mu > 0))
        throw InvalidArgument("spectral_shrink: mu must be positive");
    detail::require_finite(x, "spectral_shrink");
    const Index n3 = x.n3();
    const auto xhat = fft_mode3(x);
    SpectralTensor3<Real> out(x.n1(), x.n2(), n3);
    detail::parallel_for(detail::computed_slices(n3, sym), [&](Index k) {
        if (sym == SpectralSymmetry::Exploit && detail::self_conjugate(k, n3)) {
            const RealMatrix slice = xhat.slice(k).real();
            out.slice(k) = detail::shrink_slice(slice, mu, reg).template cast<Complex>();
        } else {
            const ComplexMatrix slice = xhat.slice(k);
            out.slice(k) = detail::shrink_slice(slice, mu, reg);
        }
    });
    detail::complete_by_symmetry(out, sym);
    return ifft_mode3(out);
}

} // namespace tcomplete
