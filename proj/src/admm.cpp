#include "tcomplete/admm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcomplete/metrics.hpp"

namespace tcomplete {

void AdmmConfig::validate() const {
    if (!(rho > 0) || !(lambda_weight > 0) || !(tol > 0))
        throw InvalidArgument("ADMM rho, lambda and tol must be positive");
    if (max_iters < 1)
        throw InvalidArgument("ADMM max_iters must be >= 1");
    if (grow_rho && (!(rho_growth >= 1.0) || !(rho_max >= rho)))
        throw InvalidArgument("ADMM rho growth needs rho_growth >= 1 and rho_max >= rho");
}

AdmmState solve_admm(const Tensor3d& y, const TubalMask& mask, const AdmmConfig& cfg,
                     const Tensor3d* truth) {
    cfg.validate();
    detail::require_mask_fits(mask, y.n1(), y.n2(), "solve_admm");
    if (truth)
        y.require_same_shape(*truth, "solve_admm truth");

    AdmmState st;
    st.x = y;
    st.z = y;
    st.b = Tensor3d(y.n1(), y.n2(), y.n3());
    const double y_norm = y.norm();
    double rho = cfg.rho;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        Tensor3d x_new = impose(Tensor3d(st.z - st.b), y, mask);
        st.z = spectral_shrink(Tensor3d(x_new + st.b), cfg.mu(rho), cfg.regularizer);
        if (cfg.multiplier == MultiplierUpdate::Standard)
            st.b += x_new - st.z;
        else
            st.b += st.x - st.z;

        const double change = (x_new.matrix() - st.x.matrix()).norm() / std::max(1.0, st.x.norm());
        st.x = std::move(x_new);
        st.iter = it;

        AdmmRecord rec{it, change, std::nullopt};
        if (truth)
            rec.re = relative_error(st.x, *truth);
        st.history.push_back(rec);

        // x alone stalls while the shrinkage zeroes everything and B grows,
        // so the split residual x - z has to be small as well.
        double measure = std::max(change, (st.x - st.z).norm() / std::max(1.0, st.x.norm()));
        if (cfg.stop == AdmmStop::ObservedResidual) {
            const double resid = (project(st.z, mask).matrix() - y.matrix()).norm();
            measure = y_norm > 0 ? resid / y_norm : resid;
        }
        if (measure < cfg.tol) {
            st.converged = true;
            break;
        }

        if (cfg.grow_rho) {
            const double next = std::min(rho * cfg.rho_growth, cfg.rho_max);
            // Scaled multiplier is (dual variable) / rho.
            st.b *= rho / next;
            rho = next;
        }
    }
    return st;
}

} // namespace tcomplete
