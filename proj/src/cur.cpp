#include "tcomplete/cur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcomplete/fourier.hpp"
#include "tcomplete/random.hpp"
#include "tcomplete/talgebra.hpp"

namespace tcomplete {

namespace {

// Salt separating the fixed-index draw from the per-iteration draws.
constexpr std::uint64_t kFixedIndexStream = 0x5eed'f1ed'0000'0001ULL;

std::vector<Index> sorted_sample(Rng& rng, Index n, Index k) {
    auto idx = rng.sample_without_replacement(n, k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

void check_indices(const std::vector<Index>& idx, Index n, const char* what) {
    std::vector<Index> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument(std::string(what) + " contain duplicates");
    for (Index i : idx)
        if (i < 0 || i >= n)
            throw InvalidArgument(std::string(what) + " out of range");
}

template <typename Scalar>
struct TruncatedCore {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix approx; // H_r(core)
    Matrix pinv;   // H_r(core)^+
};

template <typename Scalar>
TruncatedCore<Scalar> truncate_core(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& core,
                                    Index r, double pinv_rtol) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    if (!core.allFinite())
        throw NumericalFailure("ICURC-R core has non-finite entries");
    const auto svd = detail::checked_svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const Index keep = std::min<Index>(r, s.size());
    const Real cutoff = s.size() > 0 ? Real(pinv_rtol) * s(0) : Real(0);
    Index invertible = 0;
    while (invertible < keep && s(invertible) > cutoff)
        ++invertible;

    TruncatedCore<Scalar> out;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = s.head(keep).template cast<Scalar>();
    out.approx = svd.matrixU().leftCols(keep) * d.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dinv =
        s.head(invertible).cwiseInverse().template cast<Scalar>();
    out.pinv = svd.matrixV().leftCols(invertible) * dinv.asDiagonal() *
               svd.matrixU().leftCols(invertible).adjoint();
    if (out.pinv.size() == 0)
        out.pinv = Matrix::Zero(core.cols(), core.rows());
    return out;
}

double strip_error(double residual, double observed) {
    if (observed > 0)
        return residual / observed;
    return residual == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace

Index IcurcConfig::default_core_size(Index rank, Index n1, Index n2) {
    const double n = static_cast<double>(std::max(n1, n2));
    const auto oversampled =
        static_cast<Index>(std::ceil(1.5 * static_cast<double>(rank) * std::log(n)));
    return std::min(std::max(rank + 2, oversampled), std::min(n1, n2));
}

IcurcConfig IcurcConfig::resolved(Index n1, Index n2) const {
    if (rank < 1)
        throw InvalidArgument("ICURC-R rank must be >= 1");
    if (!(eps > 0))
        throw InvalidArgument("ICURC-R eps must be positive");
    if (max_iters < 1)
        throw InvalidArgument("ICURC-R max_iters must be >= 1");
    IcurcConfig out = *this;
    if (!fixed_rows.empty() && out.row_count == 0)
        out.row_count = static_cast<Index>(fixed_rows.size());
    if (!fixed_cols.empty() && out.col_count == 0)
        out.col_count = static_cast<Index>(fixed_cols.size());
    if (out.row_count == 0)
        out.row_count = default_core_size(rank, n1, n2);
    if (out.col_count == 0)
        out.col_count = default_core_size(rank, n1, n2);
    if (out.row_count > n1 || out.col_count > n2)
        throw InvalidArgument("ICURC-R core " + std::to_string(out.row_count) + "x" +
                              std::to_string(out.col_count) + " does not fit a " +
                              std::to_string(n1) + "x" + std::to_string(n2) + " matrix");
    if (rank > std::min(out.row_count, out.col_count))
        throw RankTooLarge("ICURC-R rank " + std::to_string(rank) + " exceeds core size " +
                           std::to_string(out.row_count) + "x" + std::to_string(out.col_count));

    Rng rng({seed, kFixedIndexStream});
    if (out.fixed_rows.empty())
        out.fixed_rows = sorted_sample(rng, n1, out.row_count);
    if (out.fixed_cols.empty())
        out.fixed_cols = sorted_sample(rng, n2, out.col_count);
    if (static_cast<Index>(out.fixed_rows.size()) != out.row_count ||
        static_cast<Index>(out.fixed_cols.size()) != out.col_count)
        throw InvalidArgument("fixed index sets must have row_count/col_count entries");
    check_indices(out.fixed_rows, n1, "fixed rows");
    check_indices(out.fixed_cols, n2, "fixed cols");
    return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
truncate_rank(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Index r) {
    if (r < 0)
        throw InvalidArgument("truncate_rank: r must be >= 0");
    if (r == 0)
        return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m.rows(), m.cols());
    return truncate_core(m, r, 0.0).approx;
}

template <typename Scalar>
CurComponents<Scalar> icurc_r(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& y_in,
                              const TubalMask& phi, const IcurcConfig& cfg_in,
                              std::uint64_t stream) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Index n1 = y_in.rows(), n2 = y_in.cols();
    detail::require_mask_fits(phi, n1, n2, "icurc_r");
    const IcurcConfig cfg = cfg_in.resolved(n1, n2);
    const Matrix y = project_matrix(y_in, phi);
    const auto& observed = phi.pattern();
    const Index nr = cfg.row_count, nc = cfg.col_count;
    const auto all = Eigen::all;

    // X = C * W with W = U^+ R; X = 0 to start.
    Matrix c = Matrix::Zero(n1, nc);
    Matrix w = Matrix::Zero(nc, n2);

    // Observed residual strips Y - P(X) on rows `rows` and columns `cols`.
    auto residual_error = [&](const std::vector<Index>& rows, const std::vector<Index>& cols) {
        const Matrix xr = c(rows, all) * w;
        const Matrix xc = c * w(all, cols);
        const double res = (observed(rows, all).select(y(rows, all) - xr, Scalar(0))).matrix().norm() +
                           (observed(all, cols).select(y(all, cols) - xc, Scalar(0))).matrix().norm();
        const double obs = y(rows, all).norm() + y(all, cols).norm();
        return strip_error(res, obs);
    };

    CurComponents<Scalar> out;
    for (int iter = 0;; ++iter) {
        Rng rng({cfg.seed, stream, static_cast<std::uint64_t>(iter)});
        const std::vector<Index> rows = sorted_sample(rng, n1, nr);
        const std::vector<Index> cols = sorted_sample(rng, n2, nc);

        const double e = cfg.error_strips == ErrorStrips::CurrentDraw
                             ? residual_error(rows, cols)
                             : residual_error(cfg.fixed_rows, cfg.fixed_cols);
        out.errors.push_back(e);
        out.iters = iter;
        if (e < cfg.eps) {
            out.converged = true;
            break;
        }
        if (iter >= cfg.max_iters)
            break;

        // Gradient step X + (Y - P(X)) on the strips: Y where observed, X elsewhere.
        const Matrix xr = c(rows, all) * w;
        const Matrix xc = c * w(all, cols);
        Matrix r_new = observed(rows, all).select(y(rows, all), xr);
        Matrix c_new = observed(all, cols).select(y(all, cols), xc);
        const Matrix core = r_new(all, cols);

        const auto truncated = truncate_core(core, cfg.rank, cfg.pinv_rtol);
        r_new(all, cols) = truncated.approx;
        c_new(rows, all) = truncated.approx;

        c = std::move(c_new);
        w.noalias() = truncated.pinv * r_new;
        if (!w.allFinite() || !c.allFinite())
            throw NumericalFailure("ICURC-R iterate became non-finite at iteration " +
                                   std::to_string(iter + 1));
    }

    // Components on the fixed indices of the final iterate.
    out.c = c * w(all, cfg.fixed_cols);
    out.r = c(cfg.fixed_rows, all) * w;
    const Matrix core = out.r(all, cfg.fixed_cols);
    out.u_pinv = truncate_core(core, cfg.rank, cfg.pinv_rtol).pinv;
    return out;
}

template Eigen::MatrixXd truncate_rank<double>(const Eigen::MatrixXd&, Index);
template Eigen::MatrixXcd truncate_rank<std::complex<double>>(const Eigen::MatrixXcd&, Index);
template CurComponents<double> icurc_r<double>(const Eigen::MatrixXd&, const TubalMask&,
                                               const IcurcConfig&, std::uint64_t);
template CurComponents<std::complex<double>>
icurc_r<std::complex<double>>(const Eigen::MatrixXcd&, const TubalMask&, const IcurcConfig&,
                              std::uint64_t);

TccurResult tccur(const Tensor3d& y, const TubalMask& mask, const IcurcConfig& cfg_in) {
    using Complex = std::complex<double>;
    const Index n1 = y.n1(), n2 = y.n2(), n3 = y.n3();
    detail::require_mask_fits(mask, n1, n2, "tccur");
    if (!y.allFinite())
        throw NumericalFailure("tccur: observations have non-finite entries");
    // One resolution so every slice shares the fixed indices.
    const IcurcConfig cfg = cfg_in.resolved(n1, n2);
    const Index nr = cfg.row_count, nc = cfg.col_count;

    const auto yhat = fft_mode3(project(y, mask));
    SpectralTensor3<double> chat(n1, nc, n3), uhat(nc, nr, n3), rhat(nr, n2, n3);
    TccurResult result;
    result.per_slice_errors.assign(static_cast<size_t>(n3), 0.0);
    result.iters.assign(static_cast<size_t>(n3), 0);
    result.converged.assign(static_cast<size_t>(n3), false);
    result.error_history.assign(static_cast<size_t>(n3), {});

    detail::parallel_for(n3 / 2 + 1, [&](Index k) {
        const auto slice_stream = static_cast<std::uint64_t>(k);
        auto record = [&](const auto& comp) {
            result.per_slice_errors[k] = comp.errors.back();
            result.iters[k] = comp.iters;
            result.converged[k] = comp.converged;
            result.error_history[k] = comp.errors;
        };
        try {
            if (detail::self_conjugate(k, n3)) {
                const Eigen::MatrixXd slice = yhat.slice(k).real();
                const auto comp = icurc_r<double>(slice, mask, cfg, slice_stream);
                chat.slice(k) = comp.c.cast<Complex>();
                uhat.slice(k) = comp.u_pinv.cast<Complex>();
                rhat.slice(k) = comp.r.cast<Complex>();
                record(comp);
            } else {
                const Eigen::MatrixXcd slice = yhat.slice(k);
                const auto comp = icurc_r<Complex>(slice, mask, cfg, slice_stream);
                chat.slice(k) = comp.c;
                uhat.slice(k) = comp.u_pinv;
                rhat.slice(k) = comp.r;
                record(comp);
            }
        } catch (const NumericalFailure& e) {
            throw NumericalFailure("Fourier slice " + std::to_string(k) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("Fourier slice " + std::to_string(k) + ": " + e.what());
        }
    });
    for (Index k = n3 / 2 + 1; k < n3; ++k) {
        result.per_slice_errors[k] = result.per_slice_errors[n3 - k];
        result.iters[k] = result.iters[n3 - k];
        result.converged[k] = result.converged[n3 - k];
        result.error_history[k] = result.error_history[n3 - k];
    }
    detail::complete_by_symmetry(chat, SpectralSymmetry::Exploit);
    detail::complete_by_symmetry(uhat, SpectralSymmetry::Exploit);
    detail::complete_by_symmetry(rhat, SpectralSymmetry::Exploit);

    const Tensor3d c = ifft_mode3(chat);
    const Tensor3d u = ifft_mode3(uhat);
    const Tensor3d r = ifft_mode3(rhat);
    result.estimate = t_product(t_product(c, u), r);
    return result;
}

} // namespace tcomplete
