#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace tcomplete {

/// mu * (||x||_1 - ||x||_2) + 0.5 * ||x - v||_2^2
template <typename DerivedX, typename DerivedV>
typename DerivedV::RealScalar l1_minus_l2_objective(const Eigen::MatrixBase<DerivedX>& x,
                                                    const Eigen::MatrixBase<DerivedV>& v,
                                                    typename DerivedV::RealScalar mu) {
    return mu * (x.template lpNorm<1>() - x.norm()) + (x - v).squaredNorm() / 2;
}

/// max(v - mu, 0), entrywise.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
soft_threshold(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar mu) {
    return (v.array() - mu).cwiseMax(typename Derived::Scalar(0)).matrix();
}

/// Proximal operator of mu * (||x||_1 - ||x||_2) for a nonnegative vector v
/// (a singular value spectrum).
///
/// Candidates: when max(v) > mu, w * (||w|| + mu) / ||w|| with w = max(v - mu, 0);
/// when 0 < max(v) <= mu, the 1-sparse vector keeping max(v) at its first
/// maximizing index; and always zero. The candidate with the lowest objective wins.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
prox_l1_minus_l2(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar mu) {
    using Real = typename Derived::Scalar;
    using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    const Vector vv = v;
    Vector best = Vector::Zero(vv.size());
    if (vv.size() == 0)
        return best;
    Real best_value = l1_minus_l2_objective(best, vv, mu);

    Eigen::Index top = 0;
    const Real peak = vv.maxCoeff(&top);
    Vector candidate = Vector::Zero(vv.size());
    if (peak > mu) {
        const Vector w = soft_threshold(vv, mu);
        const Real wn = w.norm();
        candidate = w * ((wn + mu) / wn);
    } else if (peak > 0) {
        candidate(top) = peak;
    } else {
        return best;
    }
    const Real value = l1_minus_l2_objective(candidate, vv, mu);
    if (value < best_value) {
        best = candidate;
        best_value = value;
    }
    return best;
}

} // namespace tcomplete
