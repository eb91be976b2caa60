#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tcomplete/image.hpp"
#include "tcomplete/io.hpp"
#include "tcomplete/metrics.hpp"
#include "tcomplete/random.hpp"
#include "tcomplete/synth.hpp"
#include "tcomplete/talgebra.hpp"

namespace tcomplete {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() /
                         ("tcomplete_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                          "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
    return dir;
}

Tensor3d filled(Index n1, Index n2, Index n3, double v) {
    Tensor3d t(n1, n2, n3);
    t.matrix().setConstant(v);
    return t;
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

TEST(Metrics, RelativeError) {
    const Tensor3d truth = filled(2, 2, 2, 1.0);
    Tensor3d est = truth;
    EXPECT_EQ(relative_error(est, truth), 0.0);
    est(0, 0, 0) = 3.0;
    EXPECT_DOUBLE_EQ(relative_error(est, truth), 2.0 / std::sqrt(8.0));
    EXPECT_DOUBLE_EQ(relative_error(Tensor3d(2, 2, 2), truth), 1.0);
    EXPECT_THROW(relative_error(truth, Tensor3d(2, 2, 2)), ZeroTruth);
    EXPECT_THROW(relative_error(truth, Tensor3d(2, 2, 3)), DimensionMismatch);
}

TEST(Metrics, PsnrWorkedExample) {
    // 8 entries, peak 1, squared error 1: 10 log10(8).
    const Tensor3d truth = filled(2, 2, 2, 1.0);
    Tensor3d est = truth;
    est(1, 1, 1) = 0.0;
    EXPECT_NEAR(psnr(est, truth), 9.0309, 1e-4);
    EXPECT_TRUE(std::isinf(psnr(truth, truth)));
}

TEST(Metrics, PsnrUsesTruthPeakAndIsScaleInvariant) {
    Rng rng(1);
    const Tensor3d truth = gaussian_tensor(4, 3, 2, rng), noise = gaussian_tensor(4, 3, 2, rng);
    const Tensor3d est = truth + 0.1 * noise;
    EXPECT_NEAR(psnr(3.5 * est, 3.5 * truth), psnr(est, truth), 1e-10);
    EXPECT_GT(psnr(truth + 0.05 * noise, truth), psnr(est, truth));
}

TEST(Synth, LowTubalRankAndDeterministic) {
    const Tensor3d a = synth_low_tubal_rank(12, 10, 6, 3, 7);
    EXPECT_EQ(tubal_rank(a).tubal_rank, 3);
    EXPECT_EQ(a, synth_low_tubal_rank(12, 10, 6, 3, 7));
    EXPECT_FALSE(a == synth_low_tubal_rank(12, 10, 6, 3, 8));
    EXPECT_THROW(synth_low_tubal_rank(4, 4, 2, 5, 1), InvalidArgument);
    EXPECT_THROW(synth_low_tubal_rank(4, 4, 2, 0, 1), InvalidArgument);
}

// ---------------------------------------------------------------------------
// T3B
// ---------------------------------------------------------------------------

TEST(T3b, RoundTripIsBitExact) {
    Rng rng(2);
    const Tensor3d a = gaussian_tensor(3, 5, 4, rng);
    std::stringstream ss;
    write_t3b(ss, a);
    EXPECT_EQ(ss.str().size(), 4 + 3 * 8 + a.size() * 8);
    EXPECT_EQ(ss.str().substr(0, 4), "T3B1");
    EXPECT_EQ(read_t3b(ss), a);
}

TEST(T3b, LittleEndianLayout) {
    Tensor3d a(1, 1, 1);
    a(0, 0, 0) = 1.0;
    std::stringstream ss;
    write_t3b(ss, a);
    const std::string s = ss.str();
    EXPECT_EQ(static_cast<unsigned char>(s[4]), 1u); // n1 low byte
    EXPECT_EQ(static_cast<unsigned char>(s[s.size() - 1]), 0x3fu); // 1.0 high byte
}

TEST(T3b, RejectsBadInput) {
    std::stringstream bad_magic("XXXX");
    EXPECT_THROW(read_t3b(bad_magic), UnsupportedFormat);

    Rng rng(3);
    std::stringstream ss;
    write_t3b(ss, gaussian_tensor(2, 2, 2, rng));
    const std::string full = ss.str();
    std::stringstream truncated(full.substr(0, full.size() - 3));
    EXPECT_THROW(read_t3b(truncated), UnsupportedFormat);
    std::stringstream header_only(full.substr(0, 10));
    EXPECT_THROW(read_t3b(header_only), UnsupportedFormat);

    Tensor3d nan_tensor(1, 1, 1);
    nan_tensor(0, 0, 0) = std::nan("");
    std::stringstream with_nan;
    write_t3b(with_nan, nan_tensor);
    EXPECT_THROW(read_t3b(with_nan), UnsupportedFormat);

    EXPECT_THROW(load_t3b("/nonexistent/dir/x.t3b"), IoFailure);
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

TEST(Png, SingleWhitePixel) {
    const fs::path p = scratch_dir() / "white.png";
    save_png(p.string(), filled(1, 1, 3, 255.0));
    const Tensor3d t = load_png(p.string());
    EXPECT_EQ(t.dims(), (std::array<Index, 3>{1, 1, 3}));
    EXPECT_EQ(t, filled(1, 1, 3, 255.0));
}

TEST(Png, RoundTripClampsAndRounds) {
    Rng rng(4);
    Tensor3d img(5, 7, 3);
    for (Index i = 0; i < img.size(); ++i)
        img.data()[i] = static_cast<double>(rng.below(256));
    const fs::path p = scratch_dir() / "rt.png";
    save_png(p.string(), img);
    EXPECT_EQ(load_png(p.string()), img);

    Tensor3d odd = img;
    odd(0, 0, 0) = -20.0;
    odd(0, 1, 1) = 300.0;
    odd(0, 2, 2) = 2.5;
    save_png(p.string(), odd);
    const Tensor3d back = load_png(p.string());
    EXPECT_EQ(back(0, 0, 0), 0.0);
    EXPECT_EQ(back(0, 1, 1), 255.0);
    EXPECT_EQ(back(0, 2, 2), 2.0);
}

TEST(Png, RejectsNonRgb) {
    EXPECT_THROW(save_png((scratch_dir() / "x.png").string(), Tensor3d(2, 2, 4)), DimensionMismatch);
    EXPECT_THROW(load_png("/nonexistent/x.png"), IoFailure);
    const fs::path p = scratch_dir() / "not_png.png";
    std::ofstream(p) << "hello";
    EXPECT_THROW(load_png(p.string()), Error);
}

TEST(Png, BundledCropsLoad) {
    const char* dir = std::getenv("TCOMPLETE_TEST_DATA");
    if (!dir)
        GTEST_SKIP() << "TCOMPLETE_TEST_DATA not set";
    for (const char* name : {"astronaut_64.png", "chelsea_64.png", "coffee_64.png"}) {
        const Tensor3d t = load_png((fs::path(dir) / name).string());
        EXPECT_EQ(t.dims(), (std::array<Index, 3>{64, 64, 3})) << name;
        EXPECT_LE(t.maxAbs(), 255.0);
    }
    EXPECT_THROW(load_png((fs::path(dir) / "gray_4.png").string()), UnsupportedFormat);
}

TEST(Inpaint, FullMaskReturnsInput) {
    Rng rng(5);
    Tensor3d img(6, 6, 3);
    for (Index i = 0; i < img.size(); ++i)
        img.data()[i] = static_cast<double>(rng.below(256));
    const auto res = inpaint(img, TubalMask::full(6, 6), Method::Tl12, MethodSettings{});
    EXPECT_EQ(res.image, img);
    EXPECT_TRUE(std::isinf(res.row.psnr));
}

TEST(Inpaint, KeepsObservedPixelsAndClamps) {
    Rng rng(6);
    Tensor3d img(16, 16, 3);
    for (Index i = 0; i < img.size(); ++i)
        img.data()[i] = static_cast<double>(rng.below(256));
    const auto mask = random_tubal_mask(16, 16, 0.5, 7);
    MethodSettings st;
    st.icurc.rank = 2;
    const auto res = inpaint(img, mask, Method::Tccur, st);
    EXPECT_EQ(project(res.image, mask), project(img, mask));
    EXPECT_GE(res.image.matrix().minCoeff(), 0.0);
    EXPECT_LE(res.image.maxAbs(), 255.0);
    EXPECT_EQ(res.row.method, "tccur");
    EXPECT_DOUBLE_EQ(res.row.ratio, 0.5);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

TEST(Csv, MetricRows) {
    std::stringstream ss;
    write_metric_header(ss);
    MetricRow row;
    row.method = "tnn";
    row.ratio = 0.3;
    row.trial = 2;
    row.re = 0.5;
    row.psnr = std::numeric_limits<double>::infinity();
    row.time_s = 1.25;
    row.iters = 17;
    write_metric_row(ss, row);
    EXPECT_EQ(ss.str(), "method,ratio,trial,re,psnr,time_s,iters\ntnn,0.3,2,0.5,inf,1.25,17\n");
}

TEST(Csv, CompletedRowsSkipsFailures) {
    const fs::path p = scratch_dir() / "m.csv";
    std::ofstream(p) << "method,ratio,trial,re,psnr,time_s,iters\n"
                     << "tnn,0.3,0,0.1,20,1,5\n"
                     << "tl12,0.3,1,nan,nan,0,0\n"
                     << "garbage\n";
    const auto keys = completed_rows(p.string());
    EXPECT_EQ(keys.size(), 1u);
    EXPECT_TRUE(keys.count({"tnn", "0.3", 0}));
    EXPECT_TRUE(completed_rows((scratch_dir() / "missing.csv").string()).empty());
}

TEST(Csv, HistoryFormats) {
    std::stringstream ss;
    write_admm_history(ss, {{1, 0.5, std::nullopt}, {2, 0.25, 0.125}});
    EXPECT_EQ(ss.str(), "iter,rel_change,re\n1,0.5,\n2,0.25,0.125\n");

    std::stringstream sl;
    write_slice_history(sl, {{1.0, 0.5}, {0.25}});
    EXPECT_EQ(sl.str(), "slice,iter,e\n0,0,1\n0,1,0.5\n1,0,0.25\n");
}

} // namespace
} // namespace tcomplete
