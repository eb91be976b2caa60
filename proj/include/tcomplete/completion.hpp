#pragma once

#include <string>
#include <vector>

#include "tcomplete/admm.hpp"
#include "tcomplete/cur.hpp"
#include "tcomplete/sampling.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

enum class Method { Tnn, Tl12, Tccur };

const char* to_string(Method m);
/// Parses "tnn", "tl12" or "tccur"; throws InvalidArgument otherwise.
Method parse_method(const std::string& name);

/// Solver settings shared by a run; the ADMM regularizer is set from the method.
struct MethodSettings {
    AdmmConfig admm;
    IcurcConfig icurc;
};

struct CompletionOutcome {
    Tensor3d estimate;
    int iters = 0;
    bool converged = false;
    /// Wall time of the solver call alone.
    double time_s = 0.0;
    std::vector<AdmmRecord> admm_history;         ///< ADMM methods only
    std::vector<std::vector<double>> slice_errors; ///< TCCUR only, e^(l) per Fourier slice
};

/// Completes y = P(truth) with the chosen method.
CompletionOutcome run_completion(Method method, const Tensor3d& y, const TubalMask& mask,
                                 const MethodSettings& settings, const Tensor3d* truth = nullptr);

} // namespace tcomplete
