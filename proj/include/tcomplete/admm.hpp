#pragma once

#include <optional>
#include <vector>

#include "tcomplete/regularizers.hpp"
#include "tcomplete/sampling.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

/// Which X enters the multiplier update B <- B + (X - Z).
enum class MultiplierUpdate {
    Standard, ///< the X just computed in this iteration (scaled-form ADMM)
    Literal,  ///< the X from the previous iteration
};

enum class AdmmStop {
    RelativeChange,   ///< ||x_new - x|| and ||x - z||, relative to max(1, ||x||), both < tol
    ObservedResidual, ///< ||P(z) - y|| / ||y|| < tol, the error on the observed tubes
};

struct AdmmConfig {
    Regularizer regularizer = Regularizer::Tnn;
    double rho = 1e-2;
    double lambda_weight = 1.0;
    int max_iters = 500;
    double tol = 1e-6;
    AdmmStop stop = AdmmStop::RelativeChange;
    MultiplierUpdate multiplier = MultiplierUpdate::Standard;
    /// rho <- min(rho * rho_growth, rho_max) after each iteration when set.
    bool grow_rho = false;
    double rho_growth = 1.05;
    double rho_max = 1e2;

    /// Shrinkage threshold at the current rho.
    double mu(double current_rho) const { return lambda_weight / current_rho; }

    void validate() const;
};

struct AdmmRecord {
    int iter = 0;
    double rel_change = 0.0;
    std::optional<double> re;
};

/// Iterates and history of one ADMM run. `x` is the estimate; it agrees with
/// the observations on every sampled tube.
struct AdmmState {
    Tensor3d x;
    Tensor3d z;
    Tensor3d b;
    int iter = 0;
    bool converged = false;
    std::vector<AdmmRecord> history;
};

/// min h(X) s.t. P(X) = y by ADMM with X = Z splitting:
///   X <- impose(Z - B, y);  Z <- shrink(X + B, lambda / rho);  B <- B + X - Z.
/// Starts from X = Z = y, B = 0. Non-convergence is reported in the state.
AdmmState solve_admm(const Tensor3d& y, const TubalMask& mask, const AdmmConfig& cfg,
                     const Tensor3d* truth = nullptr);

} // namespace tcomplete
