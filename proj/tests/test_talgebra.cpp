#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcomplete/random.hpp"
#include "tcomplete/synth.hpp"
#include "tcomplete/talgebra.hpp"

namespace tcomplete {
namespace {

Tensor3d random_tensor(Index n1, Index n2, Index n3, std::uint64_t seed) {
    Rng rng(seed);
    return gaussian_tensor(n1, n2, n3, rng);
}

double max_abs_diff(const Tensor3cd& a, const Tensor3cd& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Tensor3 layout
// ---------------------------------------------------------------------------

TEST(Tensor3, SliceMajorLayout) {
    Tensor3d t(2, 3, 4);
    t(1, 2, 3) = 7.0;
    EXPECT_EQ(t.data()[1 + 2 * (2 + 3 * 3)], 7.0);
    EXPECT_EQ(t.slice(3)(1, 2), 7.0);
    EXPECT_EQ(t.tube(1, 2)(3), 7.0);
    EXPECT_EQ(t.tubes()(1 + 2 * 2, 3), 7.0);
}

TEST(Tensor3, RejectsNonPositiveDims) {
    EXPECT_THROW(Tensor3d(0, 2, 2), InvalidArgument);
    EXPECT_THROW(Tensor3d(2, 2, 2) + Tensor3d(2, 2, 3), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// fft_mode3 / ifft_mode3
// ---------------------------------------------------------------------------

TEST(Fourier, LengthOneIsIdentity) {
    const Tensor3d a = random_tensor(3, 4, 1, 1);
    const Tensor3cd ahat = fft_mode3(a);
    EXPECT_EQ(ahat.real(), a);
    EXPECT_EQ(ahat.matrix().imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fourier, ZeroMapsToZero) {
    const Tensor3cd z = fft_mode3(Tensor3d(3, 3, 4));
    EXPECT_EQ(z.maxAbs(), 0.0);
    EXPECT_EQ(ifft_mode3(Tensor3cd(3, 3, 4)).maxAbs(), 0.0);
}

TEST(Fourier, MatchesDirectDft) {
    for (Index n3 : {2, 3, 5, 8}) {
        const Tensor3d a = random_tensor(2, 2, n3, 10 + n3);
        EXPECT_LT(max_abs_diff(fft_mode3(a), oracle::naive_dft(a)), 1e-12) << "n3=" << n3;
    }
}

TEST(Fourier, RoundTrip) {
    const Tensor3d a = random_tensor(4, 5, 6, 2);
    const Tensor3d back = ifft_mode3(fft_mode3(a));
    EXPECT_LT((back.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(relative_distance(back, a), 1e-12);
}

TEST(Fourier, ConjugateSymmetryOfRealInput) {
    for (Index n3 : {1, 4, 7}) {
        const Tensor3cd ahat = fft_mode3(random_tensor(3, 2, n3, 3));
        EXPECT_LT(conjugate_symmetry_defect(ahat), 1e-12);
    }
}

TEST(Fourier, BrokenSymmetryIsRejected) {
    Tensor3cd ahat = fft_mode3(random_tensor(3, 3, 5, 4));
    ahat(0, 0, 2) += std::complex<double>(1e-3, 0.0);
    EXPECT_THROW(ifft_mode3(ahat), SymmetryViolation);
}

// ---------------------------------------------------------------------------
// t_product / t_transpose
// ---------------------------------------------------------------------------

TEST(TProduct, LengthOneIsMatrixProduct) {
    const Tensor3d a = random_tensor(3, 4, 1, 5), b = random_tensor(4, 2, 1, 6);
    const Eigen::MatrixXd expected = a.slice(0) * b.slice(0);
    EXPECT_LT((t_product(a, b).slice(0) - expected).norm(), 1e-12);
}

TEST(TProduct, IdentityIsNeutral) {
    const Tensor3d a = random_tensor(3, 4, 5, 7);
    EXPECT_LT(relative_distance(t_product(a, identity_tensor<double>(4, 5)), a), 1e-13);
    EXPECT_LT(relative_distance(t_product(identity_tensor<double>(3, 5), a), a), 1e-13);
}

TEST(TProduct, MatchesCircularConvolution) {
    const Tensor3d a = random_tensor(3, 4, 5, 8), b = random_tensor(4, 2, 5, 9);
    EXPECT_LT(relative_distance(t_product(a, b), oracle::convolution_t_product(a, b)), 1e-10);
}

TEST(TProduct, ExploitAndFullPathsAgree) {
    for (Index n3 : {1, 2, 5, 6}) {
        const Tensor3d a = random_tensor(4, 3, n3, 20 + n3), b = random_tensor(3, 5, n3, 40 + n3);
        const Tensor3d fast = t_product(a, b, SpectralSymmetry::Exploit);
        const Tensor3d full = t_product(a, b, SpectralSymmetry::Full);
        EXPECT_LT(relative_distance(fast, full), 1e-12) << "n3=" << n3;
    }
}

TEST(TProduct, DimensionMismatch) {
    EXPECT_THROW(t_product(Tensor3d(2, 3, 4), Tensor3d(2, 3, 4)), DimensionMismatch);
    EXPECT_THROW(t_product(Tensor3d(2, 3, 4), Tensor3d(3, 3, 5)), DimensionMismatch);
}

TEST(TTranspose, Basics) {
    const Tensor3d m = random_tensor(3, 4, 1, 10);
    EXPECT_EQ(t_transpose(m).slice(0), Eigen::MatrixXd(m.slice(0).transpose()));
    EXPECT_EQ(t_transpose(identity_tensor<double>(3, 4)), identity_tensor<double>(3, 4));
    const Tensor3d a = random_tensor(3, 4, 5, 11);
    EXPECT_EQ(t_transpose(t_transpose(a)), a);
}

TEST(TTranspose, ReversesProducts) {
    const Tensor3d a = random_tensor(3, 4, 5, 12), b = random_tensor(4, 2, 5, 13);
    const Tensor3d lhs = t_transpose(t_product(a, b));
    const Tensor3d rhs = t_product(t_transpose(b), t_transpose(a));
    EXPECT_LT(relative_distance(lhs, rhs), 1e-10);
}

// ---------------------------------------------------------------------------
// t_svd
// ---------------------------------------------------------------------------

void expect_valid_tsvd(const Tensor3d& a, double tol) {
    const auto svd = t_svd(a);
    const Index m = std::min(a.n1(), a.n2());
    ASSERT_EQ(svd.u.dims(), (std::array<Index, 3>{a.n1(), m, a.n3()}));
    ASSERT_EQ(svd.s.dims(), (std::array<Index, 3>{m, m, a.n3()}));
    ASSERT_EQ(svd.v.dims(), (std::array<Index, 3>{a.n2(), m, a.n3()}));
    EXPECT_TRUE(is_f_diagonal(svd.s, 1e-12));

    const Tensor3d rebuilt = t_product(t_product(svd.u, svd.s), t_transpose(svd.v));
    const double scale = std::max(1.0, a.norm());
    EXPECT_LT((rebuilt.matrix() - a.matrix()).norm() / scale, tol);

    const Tensor3d eye = identity_tensor<double>(m, a.n3());
    EXPECT_LT((t_product(t_transpose(svd.u), svd.u).matrix() - eye.matrix()).cwiseAbs().maxCoeff(),
              tol);
    EXPECT_LT((t_product(t_transpose(svd.v), svd.v).matrix() - eye.matrix()).cwiseAbs().maxCoeff(),
              tol);

    for (Index k = 0; k < a.n3(); ++k) {
        for (Index i = 0; i < m; ++i) {
            EXPECT_GE(svd.spectrum(i, k), 0.0);
            if (i > 0)
                EXPECT_LE(svd.spectrum(i, k), svd.spectrum(i - 1, k));
        }
    }
    // The Fourier transform of S carries the spectrum on its diagonals.
    const Tensor3cd shat = fft_mode3(svd.s);
    for (Index k = 0; k < a.n3(); ++k)
        EXPECT_LT((shat.slice(k).diagonal().real() - svd.spectrum.col(k)).cwiseAbs().maxCoeff(),
                  1e-9 * scale);
}

TEST(TSvd, ZeroTensor) {
    const auto svd = t_svd(Tensor3d(3, 4, 5));
    EXPECT_EQ(svd.s.maxAbs(), 0.0);
    EXPECT_EQ(t_product(t_product(svd.u, svd.s), t_transpose(svd.v)).maxAbs(), 0.0);
}

TEST(TSvd, RecoversSortedFDiagonal) {
    // Diagonal Fourier slices with nonincreasing positive entries.
    const Index n3 = 4;
    Tensor3cd shat(3, 3, n3);
    const double diag[3][3] = {{5, 3, 1}, {4, 2, 0.5}, {6, 1, 0.25}};
    for (Index k = 0; k < n3; ++k) {
        const Index src = k <= n3 / 2 ? k : n3 - k;
        for (Index i = 0; i < 3; ++i)
            shat(i, i, k) = diag[src][i];
    }
    const Tensor3d s = ifft_mode3(shat);
    const auto svd = t_svd(s);
    for (Index k = 0; k < n3; ++k) {
        const Index src = k <= n3 / 2 ? k : n3 - k;
        for (Index i = 0; i < 3; ++i)
            EXPECT_NEAR(svd.spectrum(i, k), diag[src][i], 1e-12);
    }
    EXPECT_LT(relative_distance(svd.s, s), 1e-12);
}

TEST(TSvd, RandomReconstruction) {
    expect_valid_tsvd(random_tensor(6, 4, 3, 14), 1e-10);
    expect_valid_tsvd(random_tensor(4, 6, 4, 15), 1e-10);
    expect_valid_tsvd(random_tensor(5, 5, 1, 16), 1e-10);
}

TEST(TSvd, PropertyOverRandomShapes) {
    Rng shapes(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n1 = 1 + static_cast<Index>(shapes.below(16));
        const Index n2 = 1 + static_cast<Index>(shapes.below(16));
        const Index n3 = 1 + static_cast<Index>(shapes.below(8));
        SCOPED_TRACE(testing::Message() << n1 << "x" << n2 << "x" << n3);
        expect_valid_tsvd(random_tensor(n1, n2, n3, 1000 + trial), 1e-10);
    }
}

TEST(TSvd, SpectrumMatchesPerSliceOracle) {
    const Tensor3d a = random_tensor(5, 4, 6, 17);
    const auto svd = t_svd(a);
    EXPECT_LT((svd.spectrum - oracle::per_slice_singular_values(a)).cwiseAbs().maxCoeff(), 1e-10);
    const auto full = spectral_singular_values(a, SpectralSymmetry::Full);
    const auto fast = spectral_singular_values(a, SpectralSymmetry::Exploit);
    EXPECT_LT((full - fast).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TSvd, NonFiniteInputFails) {
    Tensor3d a = random_tensor(3, 3, 3, 18);
    a(1, 1, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(t_svd(a), NumericalFailure);
}

// ---------------------------------------------------------------------------
// t_pinv
// ---------------------------------------------------------------------------

TEST(TPinv, IdentityAndInvertible) {
    EXPECT_LT(relative_distance(t_pinv(identity_tensor<double>(4, 3)), identity_tensor<double>(4, 3)),
              1e-12);
    const Tensor3d a = random_tensor(4, 4, 1, 19);
    const Eigen::MatrixXd inv = a.slice(0).inverse();
    EXPECT_LT((t_pinv(a).slice(0) - inv).norm() / inv.norm(), 1e-10);
}

TEST(TPinv, PenroseIdentitiesOnRankDeficient) {
    // 5x3x4 of tubal rank 2.
    const Tensor3d a = t_product(random_tensor(5, 2, 4, 20), random_tensor(2, 3, 4, 21));
    for (auto sym : {SpectralSymmetry::Exploit, SpectralSymmetry::Full}) {
        const Tensor3d p = t_pinv(a, 1e-10, sym);
        EXPECT_LT(relative_distance(t_product(t_product(a, p), a), a), 1e-8);
        EXPECT_LT(relative_distance(t_product(t_product(p, a), p), p), 1e-8);
    }
    EXPECT_LT(relative_distance(t_pinv(a, 1e-10, SpectralSymmetry::Exploit),
                                t_pinv(a, 1e-10, SpectralSymmetry::Full)),
              1e-12);
}

// ---------------------------------------------------------------------------
// tubal_rank
// ---------------------------------------------------------------------------

TEST(TubalRank, ZeroAndIdentity) {
    const auto zero = tubal_rank(Tensor3d(3, 4, 5));
    EXPECT_EQ(zero.tubal_rank, 0);
    for (Index r : zero.ranks)
        EXPECT_EQ(r, 0);
    EXPECT_EQ(tubal_rank(identity_tensor<double>(4, 3)).tubal_rank, 4);
}

TEST(TubalRank, ProductOfThinFactors) {
    const Tensor3d a = t_product(random_tensor(8, 3, 5, 22), random_tensor(3, 7, 5, 23));
    const auto rank = tubal_rank(a, 1e-9);
    EXPECT_EQ(rank.tubal_rank, 3);
    for (Index r : rank.ranks)
        EXPECT_EQ(r, 3);
    EXPECT_EQ(tubal_rank(synth_low_tubal_rank(32, 32, 8, 3, 5)).tubal_rank, 3);
}

TEST(TubalRank, RejectsNonPositiveTol) {
    EXPECT_THROW(tubal_rank(Tensor3d(2, 2, 2), 0.0), InvalidArgument);
}

} // namespace
} // namespace tcomplete
