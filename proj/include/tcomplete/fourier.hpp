#pragma once

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// Unnormalized DFT of every tube: slice k of the result holds frequency k.
template <typename Real>
SpectralTensor3<Real> fft_mode3(const Tensor3<Real>& a) {
    using Complex = std::complex<Real>;
    SpectralTensor3<Real> out(a.n1(), a.n2(), a.n3());
    const Index n3 = a.n3();
    if (n3 == 1) {
        out.matrix() = a.matrix().template cast<Complex>();
        return out;
    }
    Eigen::FFT<Real> fft;
    std::vector<Real> in(static_cast<size_t>(n3));
    std::vector<Complex> spec(static_cast<size_t>(n3));
    const auto src = a.tubes();
    auto dst = out.tubes();
    for (Index p = 0; p < src.rows(); ++p) {
        for (Index k = 0; k < n3; ++k)
            in[k] = src(p, k);
        fft.fwd(spec.data(), in.data(), n3);
        for (Index k = 0; k < n3; ++k)
            dst(p, k) = spec[k];
    }
    return out;
}

/// Largest |slice_k - conj(slice_{-k})| over all slices, i.e. how far `s` is
/// from being the transform of a real tensor.
template <typename Real>
Real conjugate_symmetry_defect(const SpectralTensor3<Real>& s) {
    const Index n3 = s.n3();
    Real defect = 0;
    for (Index k = 0; k <= n3 / 2; ++k) {
        const Index mirror = (n3 - k) % n3;
        defect = std::max(defect, (s.slice(k) - s.slice(mirror).conjugate()).cwiseAbs().maxCoeff());
    }
    return defect;
}

/// Inverse of fft_mode3 (scaled by 1/n3). Throws SymmetryViolation when the
/// input is not conjugate symmetric to `tol` relative to its largest entry;
/// the imaginary residue of the inverse is discarded.
template <typename Real>
Tensor3<Real> ifft_mode3(const SpectralTensor3<Real>& s, Real tol = Real(1e-8)) {
    using Complex = std::complex<Real>;
    const Real scale = std::max(Real(1), s.maxAbs());
    const Real defect = conjugate_symmetry_defect(s);
    if (!(defect <= tol * scale))
        throw SymmetryViolation("ifft_mode3: conjugate symmetry defect " + std::to_string(defect) +
                                " exceeds tolerance");
    Tensor3<Real> out(s.n1(), s.n2(), s.n3());
    const Index n3 = s.n3();
    if (n3 == 1) {
        out.matrix() = s.matrix().real();
        return out;
    }
    Eigen::FFT<Real> fft;
    std::vector<Complex> spec(static_cast<size_t>(n3));
    std::vector<Complex> time(static_cast<size_t>(n3));
    const auto src = s.tubes();
    auto dst = out.tubes();
    for (Index p = 0; p < src.rows(); ++p) {
        for (Index k = 0; k < n3; ++k)
            spec[k] = src(p, k);
        fft.inv(time.data(), spec.data(), n3);
        for (Index k = 0; k < n3; ++k)
            dst(p, k) = time[k].real();
    }
    return out;
}

} // namespace tcomplete
