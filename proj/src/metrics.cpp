#include "tcomplete/metrics.hpp"

#include <cmath>

namespace tcomplete {

double relative_error(const Tensor3d& estimate, const Tensor3d& truth) {
    estimate.require_same_shape(truth, "relative_error");
    const double denom = truth.norm();
    if (!(denom > 0))
        throw ZeroTruth("relative_error: ground truth has zero norm");
    return (truth.matrix() - estimate.matrix()).norm() / denom;
}

double psnr(const Tensor3d& estimate, const Tensor3d& truth) {
    estimate.require_same_shape(truth, "psnr");
    const double err = (estimate.matrix() - truth.matrix()).squaredNorm();
    if (err == 0.0)
        return std::numeric_limits<double>::infinity();
    const double peak = truth.maxAbs();
    return 10.0 * std::log10(static_cast<double>(truth.size()) * peak * peak / err);
}

} // namespace tcomplete
