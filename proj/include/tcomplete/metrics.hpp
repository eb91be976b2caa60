#pragma once

#include <limits>
#include <string>

#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// ||truth - estimate||_F / ||truth||_F. Throws ZeroTruth for a zero truth.
double relative_error(const Tensor3d& estimate, const Tensor3d& truth);

/// Peak signal-to-noise ratio in dB, with the peak taken as the largest
/// absolute entry of the ground truth:
///   10 log10(n1 n2 n3 max|truth|^2 / ||estimate - truth||_F^2).
/// An exact match returns +infinity.
double psnr(const Tensor3d& estimate, const Tensor3d& truth);

/// One (method, ratio, trial) outcome of an experiment.
struct MetricRow {
    std::string method;
    double ratio = 0.0;
    int trial = 0;
    double re = std::numeric_limits<double>::quiet_NaN();
    double psnr = std::numeric_limits<double>::quiet_NaN();
    double time_s = 0.0;
    int iters = 0;
    bool converged = false; ///< not part of the CSV
    /// Empty on success; the failure message otherwise.
    std::string error;

    bool failed() const { return !error.empty(); }
};

} // namespace tcomplete
