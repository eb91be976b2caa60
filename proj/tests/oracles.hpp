#pragma once

// Reference implementations used only by tests. None of them goes through the
// library's FFT or Fourier-slice code paths.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tcomplete/tensor3.hpp"

namespace tcomplete::oracle {

/// Direct O(n3^2) DFT of every tube.
inline Tensor3cd naive_dft(const Tensor3d& a) {
    const Index n3 = a.n3();
    Tensor3cd out(a.n1(), a.n2(), n3);
    for (Index i = 0; i < a.n1(); ++i)
        for (Index j = 0; j < a.n2(); ++j)
            for (Index f = 0; f < n3; ++f) {
                std::complex<double> acc = 0;
                for (Index t = 0; t < n3; ++t) {
                    const double angle = -2.0 * std::numbers::pi * double(f * t) / double(n3);
                    acc += a(i, j, t) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
                out(i, j, f) = acc;
            }
    return out;
}

/// Inverse of naive_dft; the imaginary parts are discarded.
inline Tensor3d naive_idft(const Tensor3cd& ahat) {
    const Index n3 = ahat.n3();
    Tensor3d out(ahat.n1(), ahat.n2(), n3);
    for (Index i = 0; i < ahat.n1(); ++i)
        for (Index j = 0; j < ahat.n2(); ++j)
            for (Index t = 0; t < n3; ++t) {
                std::complex<double> acc = 0;
                for (Index f = 0; f < n3; ++f) {
                    const double angle = 2.0 * std::numbers::pi * double(f * t) / double(n3);
                    acc += ahat(i, j, f) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
                out(i, j, t) = acc.real() / double(n3);
            }
    return out;
}

/// Singular value thresholding of every Fourier slice with a caller-supplied
/// map on the singular-value vector, via the direct DFT and a Jacobi SVD.
template <typename Shrink>
Tensor3d per_slice_shrink(const Tensor3d& a, Shrink shrink) {
    Tensor3cd ahat = naive_dft(a);
    for (Index k = 0; k < a.n3(); ++k) {
        const Eigen::MatrixXcd slice = ahat.slice(k);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(slice, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd s = shrink(Eigen::VectorXd(svd.singularValues()));
        ahat.slice(k) = svd.matrixU() * s.cast<std::complex<double>>().asDiagonal() *
                        svd.matrixV().adjoint();
    }
    return naive_idft(ahat);
}

/// C(i, j, :) = sum_k A(i, k, :) circularly convolved with B(k, j, :).
inline Tensor3d convolution_t_product(const Tensor3d& a, const Tensor3d& b) {
    const Index n3 = a.n3();
    Tensor3d c(a.n1(), b.n2(), n3);
    for (Index i = 0; i < a.n1(); ++i)
        for (Index j = 0; j < b.n2(); ++j)
            for (Index k = 0; k < a.n2(); ++k)
                for (Index t = 0; t < n3; ++t)
                    for (Index s = 0; s < n3; ++s)
                        c(i, j, t) += a(i, k, s) * b(k, j, (t - s + n3) % n3);
    return c;
}

/// Singular values of every Fourier slice via the direct DFT and a Jacobi SVD.
inline Eigen::MatrixXd per_slice_singular_values(const Tensor3d& a) {
    const Tensor3cd ahat = naive_dft(a);
    Eigen::MatrixXd sv(std::min(a.n1(), a.n2()), a.n3());
    for (Index k = 0; k < a.n3(); ++k) {
        const Eigen::MatrixXcd slice = ahat.slice(k);
        sv.col(k) = Eigen::JacobiSVD<Eigen::MatrixXcd>(slice).singularValues();
    }
    return sv;
}

inline double l1l2_objective(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double mu) {
    return mu * (x.lpNorm<1>() - x.norm()) + 0.5 * (x - v).squaredNorm();
}

/// Minimum of mu (||x||_1 - ||x||_2) + 0.5 ||x - v||^2 over x >= 0 by search
/// over the radius r = ||x||.
///
/// For fixed r the objective is 0.5 r^2 - mu r + 0.5 ||v||^2 - max <v - mu, x>
/// over nonnegative x on the sphere of radius r, and that inner maximum is
/// r * g with g = ||(v - mu)_+|| when some v_i > mu, else max_i(v_i) - mu.
/// The outer 1-D problem is minimized by a dense grid followed by golden
/// section refinement rather than in closed form.
inline double l1l2_min_by_radius_search(const Eigen::VectorXd& v, double mu) {
    const Eigen::VectorXd shifted = (v.array() - mu).matrix();
    const double g = shifted.maxCoeff() > 0 ? shifted.cwiseMax(0.0).norm() : shifted.maxCoeff();
    const double base = 0.5 * v.squaredNorm();
    auto f = [&](double r) { return 0.5 * r * r - mu * r - r * g + base; };

    const double hi = v.norm() + 2.0 * mu + 1.0;
    const int grid = 4000;
    double best_r = 0.0, best = f(0.0);
    for (int s = 1; s <= grid; ++s) {
        const double r = hi * s / grid;
        if (f(r) < best) {
            best = f(r);
            best_r = r;
        }
    }
    double lo = std::max(0.0, best_r - hi / grid), up = std::min(hi, best_r + hi / grid);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double a = up - phi * (up - lo), b = lo + phi * (up - lo);
        if (f(a) < f(b))
            up = b;
        else
            lo = a;
    }
    return std::min({best, f(0.5 * (lo + up)), f(0.0)});
}

} // namespace tcomplete::oracle
