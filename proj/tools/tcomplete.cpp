// tcomplete: command-line front end for synthesis, completion, inpainting
// and benchmark sweeps.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tcomplete/tcomplete.hpp"

namespace {

using namespace tcomplete;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNumerical = 4 };

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int configure_threads() {
    int threads = 1;
#ifdef _OPENMP
    if (const char* env = std::getenv("TCOMPLETE_NUM_THREADS")) {
        const int n = std::atoi(env);
        if (n < 1)
            throw UsageError("TCOMPLETE_NUM_THREADS must be a positive integer");
        omp_set_num_threads(n);
    }
    threads = omp_get_max_threads();
#endif
    return threads;
}

void print_config(const json& config) {
    std::cout << "config " << config.dump() << std::endl;
}

bool has_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

// ---------------------------------------------------------------------------
// shared solver flags
// ---------------------------------------------------------------------------

struct SolverFlags {
    std::string method;
    double rho = AdmmConfig{}.rho;
    double lambda = AdmmConfig{}.lambda_weight;
    double tol = AdmmConfig{}.tol;
    std::optional<int> max_iters;
    bool grow_rho = false;
    std::string stop = "relative_change";
    std::string multiplier = "standard";
    Index rank = IcurcConfig{}.rank;
    Index core_rows = 0;
    Index core_cols = 0;
    double eps = IcurcConfig{}.eps;
    std::string error_strips = "current";
    std::uint64_t seed = 0;

    explicit SolverFlags(std::string default_method) : method(std::move(default_method)) {}

    void attach(CLI::App* app, bool with_method = true) {
        if (with_method)
            app->add_option("--method", method, "tnn, tl12 or tccur")
                ->check(CLI::IsMember({"tnn", "tl12", "tccur"}))
                ->capture_default_str();
        app->add_option("--rho", rho, "ADMM weighting parameter")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--lambda", lambda, "regularization weight; threshold is lambda / rho")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--tol", tol, "ADMM stopping tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--max-iters", max_iters, "iteration cap for ADMM and ICURC-R (default 500)")
            ->check(CLI::PositiveNumber);
        app->add_flag("--grow-rho", grow_rho, "rho <- min(1.05 rho, 100) every iteration");
        app->add_option("--stop", stop, "ADMM stop rule")
            ->check(CLI::IsMember({"relative_change", "observed_residual"}))
            ->capture_default_str();
        app->add_option("--multiplier", multiplier, "ADMM multiplier update")
            ->check(CLI::IsMember({"standard", "literal"}))
            ->capture_default_str();
        app->add_option("--rank", rank, "TCCUR target rank")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--core-rows", core_rows, "|I| (0 = default size)")->check(CLI::NonNegativeNumber);
        app->add_option("--core-cols", core_cols, "|J| (0 = default size)")->check(CLI::NonNegativeNumber);
        app->add_option("--eps", eps, "ICURC-R stopping tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--error-strips", error_strips, "ICURC-R error rows/columns")
            ->check(CLI::IsMember({"current", "fixed"}))
            ->capture_default_str();
        app->add_option("--seed", seed, "ICURC-R index seed")->capture_default_str();
    }

    MethodSettings settings() const {
        MethodSettings s;
        auto& a = s.admm;
        a.rho = rho;
        a.lambda_weight = lambda;
        a.tol = tol;
        a.grow_rho = grow_rho;
        a.stop = stop == "relative_change" ? AdmmStop::RelativeChange : AdmmStop::ObservedResidual;
        a.multiplier = multiplier == "standard" ? MultiplierUpdate::Standard : MultiplierUpdate::Literal;
        auto& c = s.icurc;
        c.rank = rank;
        c.row_count = core_rows;
        c.col_count = core_cols;
        c.eps = eps;
        c.error_strips = error_strips == "current" ? ErrorStrips::CurrentDraw : ErrorStrips::Fixed;
        c.seed = seed;
        if (max_iters) {
            a.max_iters = *max_iters;
            c.max_iters = *max_iters;
        }
        return s;
    }
};

/// Fills the default ICURC-R core size so the printed config is complete.
void resolve_core(MethodSettings& s, Index n1, Index n2) {
    auto& c = s.icurc;
    if (c.row_count == 0)
        c.row_count = IcurcConfig::default_core_size(c.rank, n1, n2);
    if (c.col_count == 0)
        c.col_count = IcurcConfig::default_core_size(c.rank, n1, n2);
}

json settings_for(Method method, const MethodSettings& s) {
    json all = to_json(s);
    if (method != Method::Tccur)
        return json{{"admm", all.at("admm")}};
    all["icurc"]["seed"] = s.icurc.seed;
    return json{{"icurc", all.at("icurc")}};
}

/// Mask from --mask, or a uniform draw from --ratio and --mask-seed.
struct MaskFlags {
    std::string path;
    std::optional<double> ratio;
    std::uint64_t seed = 0;
    std::string save_to;

    void attach(CLI::App* app, std::optional<double> default_ratio = std::nullopt) {
        ratio = default_ratio;
        auto* m = app->add_option("--mask", path, "mask file (first line 'n1 n2', then 1-indexed 'i j')");
        auto* r = app->add_option("--ratio", ratio, "sample this fraction of tubes uniformly instead")
                      ->check(CLI::Range(0.0, 1.0));
        m->excludes(r);
        app->add_option("--mask-seed", seed, "seed of the uniform mask")->capture_default_str();
        app->add_option("--save-mask", save_to, "write the mask used");
    }

    TubalMask resolve(Index n1, Index n2) const {
        if (!path.empty())
            return load_mask(path);
        if (!ratio)
            throw UsageError("one of --mask or --ratio is required");
        return random_tubal_mask(n1, n2, *ratio, seed);
    }

    json describe(const TubalMask& mask) const {
        json j{{"observed", mask.count()}, {"ratio", mask.sampling_ratio()}};
        if (!path.empty())
            j["file"] = path;
        else
            j["seed"] = seed;
        return j;
    }
};

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoFailure("cannot open '" + path + "' for writing");
    return out;
}

void append_metric(const std::string& path, const MetricRow& row) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw IoFailure("cannot open '" + path + "' for appending");
    if (fresh)
        write_metric_header(out);
    write_metric_row(out, row);
}

void report(const MetricRow& row) {
    std::cout << "result method=" << row.method << " ratio=" << format_ratio(row.ratio)
              << " iters=" << row.iters << " converged=" << (row.converged ? "yes" : "no")
              << " time_s=" << format_double(row.time_s);
    if (!std::isnan(row.re))
        std::cout << " re=" << format_double(row.re) << " psnr=" << format_double(row.psnr);
    std::cout << std::endl;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct SynthCmd {
    std::vector<Index> dims;
    Index rank = 2;
    std::uint64_t seed = 0;
    std::string out;
    std::string observed_out;
    MaskFlags mask;

    void attach(CLI::App* app) {
        app->add_option("--dims", dims, "n1 n2 n3")->expected(3)->required();
        app->add_option("--rank", rank, "tubal rank")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--seed", seed, "generator seed")->capture_default_str();
        app->add_option("--out", out, "output tensor (.t3b)")->required();
        app->add_option("--observed-out", observed_out, "also write P(X) for a sampled mask (.t3b)");
        mask.attach(app);
    }

    int run() const {
        const bool sampled = mask.ratio || !mask.path.empty();
        if (!observed_out.empty() && !sampled)
            throw UsageError("--observed-out needs --mask or --ratio");
        print_config({{"command", "synth"},
                      {"dims", dims},
                      {"rank", rank},
                      {"seed", seed},
                      {"out", out},
                      {"threads", configure_threads()}});
        const Tensor3d x = synth_low_tubal_rank(dims[0], dims[1], dims[2], rank, seed);
        save_t3b(out, x);
        if (sampled) {
            const TubalMask m = mask.resolve(dims[0], dims[1]);
            std::cout << "mask " << mask.describe(m).dump() << std::endl;
            if (!observed_out.empty())
                save_t3b(observed_out, project(x, m));
            if (!mask.save_to.empty())
                save_mask(mask.save_to, m);
        }
        std::cout << "wrote " << out << " (" << x.dims_string() << ")" << std::endl;
        return kOk;
    }
};

struct CompleteCmd {
    std::string input;
    std::string truth_path;
    std::string out;
    std::string history;
    std::string slices;
    std::string metrics;
    MaskFlags mask;
    SolverFlags solver{"tnn"};

    void attach(CLI::App* app) {
        app->add_option("--input", input, "observed tensor, or full data when --ratio samples it (.t3b)")
            ->required()
            ->check(CLI::ExistingFile);
        app->add_option("--truth", truth_path, "ground truth for RE/PSNR (.t3b)")->check(CLI::ExistingFile);
        app->add_option("--out", out, "completed tensor (.t3b)")->required();
        app->add_option("--history", history, "ADMM convergence CSV: iter,rel_change,re");
        app->add_option("--slices", slices, "TCCUR per-slice CSV: slice,iter,e");
        app->add_option("--metrics", metrics, "append a method,ratio,trial,re,psnr,time_s,iters row");
        mask.attach(app);
        solver.attach(app);
    }

    int run() const {
        const Method method = parse_method(solver.method);
        if (!history.empty() && method == Method::Tccur)
            throw UsageError("--history is written by tnn/tl12; use --slices for tccur");
        if (!slices.empty() && method != Method::Tccur)
            throw UsageError("--slices is written by tccur; use --history for tnn/tl12");
        const Tensor3d data = load_t3b(input);
        const TubalMask m = mask.resolve(data.n1(), data.n2());
        MethodSettings settings = solver.settings();
        if (method == Method::Tccur)
            resolve_core(settings, data.n1(), data.n2());

        std::optional<Tensor3d> truth;
        if (!truth_path.empty())
            truth = load_t3b(truth_path);
        else if (mask.ratio)
            truth = data;

        json config{{"command", "complete"},
                    {"input", input},
                    {"dims", data.dims()},
                    {"method", solver.method},
                    {"mask", mask.describe(m)},
                    {"truth", truth_path.empty() ? (truth ? input : "") : truth_path},
                    {"out", out},
                    {"threads", configure_threads()}};
        config.update(settings_for(method, settings));
        print_config(config);

        const Tensor3d y = project(data, m);
        // Per-iteration RE only when it is written out; it costs a norm per step.
        const Tensor3d* truth_ptr = truth && !history.empty() ? &*truth : nullptr;
        const auto outcome = run_completion(method, y, m, settings, truth_ptr);
        save_t3b(out, outcome.estimate);
        if (!mask.save_to.empty())
            save_mask(mask.save_to, m);
        if (!history.empty()) {
            auto f = open_csv(history);
            write_admm_history(f, outcome.admm_history);
        }
        if (!slices.empty()) {
            auto f = open_csv(slices);
            write_slice_history(f, outcome.slice_errors);
        }

        MetricRow row;
        row.method = to_string(method);
        row.ratio = m.sampling_ratio();
        row.time_s = outcome.time_s;
        row.iters = outcome.iters;
        if (truth) {
            row.re = relative_error(outcome.estimate, *truth);
            row.psnr = psnr(outcome.estimate, *truth);
        }
        row.converged = outcome.converged;
        report(row);
        if (!metrics.empty())
            append_metric(metrics, row);
        return kOk;
    }
};

struct InpaintCmd {
    std::string image;
    std::string out;
    std::string observed_out;
    std::string metrics;
    MaskFlags mask;
    SolverFlags solver{"tl12"};

    void attach(CLI::App* app) {
        app->add_option("--image", image, "RGB PNG")->required()->check(CLI::ExistingFile);
        app->add_option("--out", out, "completed PNG")->required();
        app->add_option("--observed-out", observed_out, "PNG of the observed pixels (missing = black)");
        app->add_option("--metrics", metrics, "append a method,ratio,trial,re,psnr,time_s,iters row");
        mask.attach(app, 0.5);
        solver.attach(app);
    }

    int run() const {
        const Tensor3d img = load_png(image);
        const TubalMask m = mask.resolve(img.n1(), img.n2());
        const Method method = parse_method(solver.method);
        MethodSettings settings = solver.settings();
        if (method == Method::Tccur)
            resolve_core(settings, img.n1(), img.n2());
        json config{{"command", "inpaint"},
                    {"image", image},
                    {"dims", img.dims()},
                    {"method", solver.method},
                    {"mask", mask.describe(m)},
                    {"out", out},
                    {"threads", configure_threads()}};
        config.update(settings_for(method, settings));
        print_config(config);

        const auto result = tcomplete::inpaint(img, m, method, settings);
        save_png(out, result.image);
        if (!observed_out.empty())
            save_png(observed_out, project(img, m));
        if (!mask.save_to.empty())
            save_mask(mask.save_to, m);
        report(result.row);
        if (!metrics.empty())
            append_metric(metrics, result.row);
        return kOk;
    }
};

struct BenchCmd {
    std::string spec_path;
    std::string out;
    std::string write_spec;
    bool resume = false;
    std::vector<Index> dims{64, 64, 8};
    Index tubal_rank = 2;
    std::vector<double> ratios{0.3};
    int trials = 1;
    std::vector<std::string> methods{"tnn", "tl12", "tccur"};
    std::uint64_t master_seed = 0;
    SolverFlags solver{"tnn"};
    CLI::App* app_ = nullptr;

    void attach(CLI::App* app) {
        app_ = app;
        app->add_option("--spec", spec_path, "experiment spec (JSON); replaces the sweep flags")
            ->check(CLI::ExistingFile);
        app->add_option("--out", out, "metrics CSV")->required();
        app->add_flag("--resume", resume, "keep finished rows of --out and run only the rest");
        app->add_option("--write-spec", write_spec, "save the resolved experiment spec (JSON)");
        app->add_option("--dims", dims, "n1 n2 n3")->expected(3)->capture_default_str();
        app->add_option("--tubal-rank", tubal_rank, "rank of the synthetic tensors")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--ratios", ratios, "sampling ratios")->check(CLI::Range(0.0, 1.0))->capture_default_str();
        app->add_option("--trials", trials, "trials per ratio")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--methods", methods, "methods to run")
            ->check(CLI::IsMember({"tnn", "tl12", "tccur"}))
            ->capture_default_str();
        app->add_option("--master-seed", master_seed, "sweep seed")->capture_default_str();
        solver.attach(app, false);
    }

    ExperimentSpec resolve_spec() const {
        if (!spec_path.empty()) {
            for (const char* flag : {"--dims", "--tubal-rank", "--ratios", "--trials", "--methods",
                                     "--master-seed", "--rho", "--lambda", "--tol", "--max-iters",
                                     "--grow-rho", "--stop", "--multiplier", "--rank", "--core-rows",
                                     "--core-cols", "--eps", "--error-strips", "--seed"})
                if (app_->count(flag) > 0)
                    throw UsageError(std::string(flag) + " cannot be combined with --spec");
            std::ifstream in(spec_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw UnsupportedFormat("'" + spec_path + "': " + e.what());
            }
            return experiment_from_json(j);
        }
        ExperimentSpec s;
        s.n1 = dims[0];
        s.n2 = dims[1];
        s.n3 = dims[2];
        s.tubal_rank = tubal_rank;
        s.sampling_ratios = ratios;
        s.trials = trials;
        s.methods.clear();
        for (const auto& m : methods)
            s.methods.push_back(parse_method(m));
        s.seed = master_seed;
        s.settings = solver.settings();
        if (app_->count("--rank") == 0)
            s.settings.icurc.rank = tubal_rank;
        s.validate();
        return s;
    }

    /// Drops failed rows (re = nan) so they are rerun; returns the finished keys.
    std::set<SweepKey> prepare_output() const {
        namespace fs = std::filesystem;
        if (!resume || !fs::exists(out)) {
            auto f = open_csv(out);
            write_metric_header(f);
            return {};
        }
        const auto done = completed_rows(out);
        std::ifstream in(out);
        std::vector<std::string> kept;
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string method, ratio, trial;
            int t = -1;
            if (std::getline(row, method, ',') && std::getline(row, ratio, ',') &&
                std::getline(row, trial, ',')) {
                try {
                    t = std::stoi(trial);
                } catch (const std::exception&) {
                }
            }
            if (done.count({method, ratio, t}))
                kept.push_back(line);
        }
        in.close();
        auto f = open_csv(out);
        write_metric_header(f);
        for (const auto& k : kept)
            f << k << '\n';
        return done;
    }

    int run() const {
        ExperimentSpec spec = resolve_spec();
        resolve_core(spec.settings, spec.n1, spec.n2);
        json config = to_json(spec);
        config["command"] = "bench";
        config["out"] = out;
        config["resume"] = resume;
        config["threads"] = configure_threads();
        print_config(config);
        if (!write_spec.empty()) {
            std::ofstream f(write_spec);
            if (!f)
                throw IoFailure("cannot open '" + write_spec + "' for writing");
            f << to_json(spec).dump(2) << '\n';
        }

        const auto skip = prepare_output();
        if (!skip.empty())
            std::cout << "resume: " << skip.size() << " rows already done" << std::endl;
        std::ofstream csv(out, std::ios::app);
        if (!csv)
            throw IoFailure("cannot open '" + out + "' for appending");
        int failures = 0;
        run_sweep(spec, [&](const MetricRow& row) {
            write_metric_row(csv, row);
            csv.flush();
            if (row.failed()) {
                ++failures;
                std::cerr << "row " << row.method << " ratio=" << format_ratio(row.ratio)
                          << " trial=" << row.trial << " failed: " << row.error << std::endl;
            } else {
                report(row);
            }
        }, skip);
        if (failures > 0)
            std::cerr << failures << " rows failed; rerun with --resume to retry them" << std::endl;
        return kOk;
    }
};

struct InfoCmd {
    std::string path;
    double tol = 1e-9;

    void attach(CLI::App* app) {
        app->add_option("path", path, ".t3b tensor, .png image or mask file")->required()->check(CLI::ExistingFile);
        app->add_option("--tol", tol, "relative tolerance for the multi rank")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    int run() const {
        print_config({{"command", "info"}, {"path", path}, {"tol", tol}, {"threads", configure_threads()}});
        if (!has_extension(path, ".t3b") && !has_extension(path, ".png")) {
            const TubalMask m = load_mask(path);
            std::cout << "mask " << m.rows() << "x" << m.cols() << " observed=" << m.count()
                      << " ratio=" << format_double(m.sampling_ratio()) << std::endl;
            return kOk;
        }
        const Tensor3d t = has_extension(path, ".png") ? load_png(path) : load_t3b(path);
        const auto mr = tubal_rank(t, tol);
        std::cout << "dims " << t.dims_string() << "\n"
                  << "norm " << format_double(t.norm()) << "\n"
                  << "max_abs " << format_double(t.maxAbs()) << "\n"
                  << "tubal_rank " << mr.tubal_rank << "\n"
                  << "multi_rank";
        for (Index r : mr.ranks)
            std::cout << ' ' << r;
        std::cout << std::endl;
        return kOk;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor completion under tubal sampling (TNN, TL12, TCCUR)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tcomplete 0.1.0");

    SynthCmd synth;
    CompleteCmd complete;
    InpaintCmd inpaint_cmd;
    BenchCmd bench;
    InfoCmd info;
    auto* synth_app = app.add_subcommand("synth", "generate a random low-tubal-rank tensor");
    auto* complete_app = app.add_subcommand("complete", "complete a tensor from observed tubes");
    auto* inpaint_app = app.add_subcommand("inpaint", "fill missing pixels of an RGB image");
    auto* bench_app = app.add_subcommand("bench", "run a synthetic sweep into a metrics CSV");
    auto* info_app = app.add_subcommand("info", "describe a tensor, image or mask file");
    synth.attach(synth_app);
    complete.attach(complete_app);
    inpaint_cmd.attach(inpaint_app);
    bench.attach(bench_app);
    info.attach(info_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*synth_app)
            return synth.run();
        if (*complete_app)
            return complete.run();
        if (*inpaint_app)
            return inpaint_cmd.run();
        if (*bench_app)
            return bench.run();
        return info.run();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return kUsage;
    } catch (const RankTooLarge& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return kUsage;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << std::endl;
        return kData;
    }
}
