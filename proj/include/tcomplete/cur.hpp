#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "tcomplete/sampling.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// Which rows/columns the ICURC-R stopping error is measured on.
enum class ErrorStrips {
    CurrentDraw, ///< the rows I and columns J resampled in the current iteration
    Fixed,       ///< the fixed output indices
};

struct IcurcConfig {
    Index rank = 2;
    /// |I| and |J|; 0 selects default_core_size().
    Index row_count = 0;
    Index col_count = 0;
    double eps = 1e-6;
    int max_iters = 500;
    std::uint64_t seed = 0;
    /// Fixed row/column indices of the returned components; drawn from `seed`
    /// when empty.
    std::vector<Index> fixed_rows;
    std::vector<Index> fixed_cols;
    ErrorStrips error_strips = ErrorStrips::CurrentDraw;
    /// Singular values of the core below pinv_rtol * sigma_max are inverted as zero.
    double pinv_rtol = 1e-12;

    /// max(r + 2, ceil(1.5 r ln(max(n1, n2)))), capped at min(n1, n2).
    static Index default_core_size(Index rank, Index n1, Index n2);

    /// Copy with sizes and fixed index sets filled in for an n1 x n2 problem.
    /// Throws RankTooLarge when rank exceeds the core size.
    IcurcConfig resolved(Index n1, Index n2) const;
};

/// Estimated CUR factors of one completed matrix: X ~ c * u_pinv * r.
template <typename Scalar>
struct CurComponents {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Matrix c;      ///< n1 x |J|, the fixed columns
    Matrix u_pinv; ///< |J| x |I|, pseudo-inverse of the rank-r core
    Matrix r;      ///< |I| x n2, the fixed rows
    int iters = 0;
    bool converged = false;
    /// e^(l) for every evaluated iterate, starting at X = 0.
    std::vector<double> errors;

    Matrix product() const { return c * u_pinv * r; }
};

/// Best rank-r approximation (truncated SVD).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
truncate_rank(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Index r);

/// Iterative CUR completion with resampling of one observed matrix y = P_Phi(y).
///
/// Every iteration draws fresh rows I and columns J, takes a unit gradient step
/// on the row strip, column strip and core, truncates the core to rank r, and
/// sets X = C U^+ R. Stops when e^(l) < eps or after max_iters updates.
/// `stream` separates the random draws of independent calls (e.g. slices).
template <typename Scalar>
CurComponents<Scalar> icurc_r(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y,
                              const TubalMask& phi, const IcurcConfig& cfg,
                              std::uint64_t stream = 0);

struct TccurResult {
    Tensor3d estimate;
    std::vector<double> per_slice_errors; ///< final e^(l) per Fourier slice
    std::vector<int> iters;
    std::vector<bool> converged;
    std::vector<std::vector<double>> error_history; ///< e^(l) trace per slice
};

/// Tensor completion via t-CUR: ICURC-R on each Fourier slice of y with the
/// shared mask and fixed indices, then X = C * U^+ * R by t-product.
/// Only slices 0..n3/2 are solved; the rest are conjugate mirrors.
TccurResult tccur(const Tensor3d& y, const TubalMask& mask, const IcurcConfig& cfg);

} // namespace tcomplete
