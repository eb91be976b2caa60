#include "tcomplete/sweep.hpp"

#include <cstdio>

#include "tcomplete/random.hpp"
#include "tcomplete/synth.hpp"

namespace tcomplete {

using nlohmann::json;

namespace {

AdmmStop parse_stop(const std::string& s) {
    if (s == "relative_change")
        return AdmmStop::RelativeChange;
    if (s == "observed_residual")
        return AdmmStop::ObservedResidual;
    throw InvalidArgument("unknown ADMM stop rule '" + s + "'");
}

const char* stop_name(AdmmStop s) {
    return s == AdmmStop::RelativeChange ? "relative_change" : "observed_residual";
}

MultiplierUpdate parse_multiplier(const std::string& s) {
    if (s == "standard")
        return MultiplierUpdate::Standard;
    if (s == "literal")
        return MultiplierUpdate::Literal;
    throw InvalidArgument("unknown multiplier update '" + s + "'");
}

ErrorStrips parse_strips(const std::string& s) {
    if (s == "current")
        return ErrorStrips::CurrentDraw;
    if (s == "fixed")
        return ErrorStrips::Fixed;
    throw InvalidArgument("unknown error strips '" + s + "'");
}

} // namespace

void ExperimentSpec::validate() const {
    if (n1 < 1 || n2 < 1 || n3 < 1)
        throw InvalidArgument("experiment dims must be >= 1");
    if (tubal_rank < 1 || tubal_rank > std::min(n1, n2))
        throw InvalidArgument("experiment tubal rank must lie in [1, min(n1, n2)]");
    if (sampling_ratios.empty())
        throw InvalidArgument("experiment needs at least one sampling ratio");
    for (double r : sampling_ratios)
        if (!(r > 0.0 && r <= 1.0))
            throw InvalidArgument("sampling ratios must lie in (0, 1]");
    if (trials < 1)
        throw InvalidArgument("experiment trials must be >= 1");
    if (methods.empty())
        throw InvalidArgument("experiment needs at least one method");
    settings.admm.validate();
}

ExperimentSpec experiment_from_json(const json& j) {
    ExperimentSpec s;
    try {
        if (j.contains("dims")) {
            const auto dims = j.at("dims").get<std::vector<Index>>();
            if (dims.size() != 3)
                throw InvalidArgument("experiment dims must have three entries");
            s.n1 = dims[0];
            s.n2 = dims[1];
            s.n3 = dims[2];
        }
        s.tubal_rank = j.value("rank", s.tubal_rank);
        s.sampling_ratios = j.value("ratios", s.sampling_ratios);
        s.trials = j.value("trials", s.trials);
        s.seed = j.value("seed", s.seed);
        if (j.contains("methods")) {
            s.methods.clear();
            for (const auto& m : j.at("methods"))
                s.methods.push_back(parse_method(m.get<std::string>()));
        }
        s.settings.icurc.rank = s.tubal_rank;
        if (j.contains("admm")) {
            const auto& a = j.at("admm");
            auto& cfg = s.settings.admm;
            cfg.rho = a.value("rho", cfg.rho);
            cfg.lambda_weight = a.value("lambda", cfg.lambda_weight);
            cfg.tol = a.value("tol", cfg.tol);
            cfg.max_iters = a.value("max_iters", cfg.max_iters);
            cfg.grow_rho = a.value("grow_rho", cfg.grow_rho);
            cfg.rho_growth = a.value("rho_growth", cfg.rho_growth);
            cfg.rho_max = a.value("rho_max", cfg.rho_max);
            if (a.contains("stop"))
                cfg.stop = parse_stop(a.at("stop").get<std::string>());
            if (a.contains("multiplier"))
                cfg.multiplier = parse_multiplier(a.at("multiplier").get<std::string>());
        }
        if (j.contains("icurc")) {
            const auto& c = j.at("icurc");
            auto& cfg = s.settings.icurc;
            cfg.rank = c.value("rank", cfg.rank);
            cfg.row_count = c.value("core_rows", cfg.row_count);
            cfg.col_count = c.value("core_cols", cfg.col_count);
            cfg.eps = c.value("eps", cfg.eps);
            cfg.max_iters = c.value("max_iters", cfg.max_iters);
            if (c.contains("error_strips"))
                cfg.error_strips = parse_strips(c.at("error_strips").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("experiment spec: ") + e.what());
    }
    s.validate();
    return s;
}

json to_json(const MethodSettings& settings) {
    const auto& a = settings.admm;
    const auto& c = settings.icurc;
    return json{
        {"admm",
         {{"rho", a.rho},
          {"lambda", a.lambda_weight},
          {"tol", a.tol},
          {"max_iters", a.max_iters},
          {"stop", stop_name(a.stop)},
          {"multiplier", a.multiplier == MultiplierUpdate::Standard ? "standard" : "literal"},
          {"grow_rho", a.grow_rho},
          {"rho_growth", a.rho_growth},
          {"rho_max", a.rho_max}}},
        {"icurc",
         {{"rank", c.rank},
          {"core_rows", c.row_count},
          {"core_cols", c.col_count},
          {"eps", c.eps},
          {"max_iters", c.max_iters},
          {"error_strips", c.error_strips == ErrorStrips::CurrentDraw ? "current" : "fixed"}}},
    };
}

json to_json(const ExperimentSpec& s) {
    json methods = json::array();
    for (Method m : s.methods)
        methods.push_back(to_string(m));
    json out{
        {"dims", {s.n1, s.n2, s.n3}},
        {"rank", s.tubal_rank},
        {"ratios", s.sampling_ratios},
        {"trials", s.trials},
        {"methods", methods},
        {"seed", s.seed},
    };
    out.update(to_json(s.settings));
    return out;
}

TrialSeeds trial_seeds(std::uint64_t master, std::size_t ratio_index, int trial) {
    Rng rng({master, static_cast<std::uint64_t>(ratio_index), static_cast<std::uint64_t>(trial)});
    TrialSeeds s{};
    s.truth = rng.next();
    s.mask = rng.next();
    s.solver = rng.next();
    return s;
}

std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", ratio);
    return buf;
}

std::vector<MetricRow> run_sweep(const ExperimentSpec& spec,
                                 const std::function<void(const MetricRow&)>& sink,
                                 const std::set<SweepKey>& skip) {
    spec.validate();
    std::vector<MetricRow> rows;
    for (Method method : spec.methods) {
        for (std::size_t ri = 0; ri < spec.sampling_ratios.size(); ++ri) {
            const double ratio = spec.sampling_ratios[ri];
            for (int trial = 0; trial < spec.trials; ++trial) {
                if (skip.count({to_string(method), format_ratio(ratio), trial}))
                    continue;
                MetricRow row;
                row.method = to_string(method);
                row.ratio = ratio;
                row.trial = trial;
                try {
                    const TrialSeeds seeds = trial_seeds(spec.seed, ri, trial);
                    const Tensor3d truth =
                        synth_low_tubal_rank(spec.n1, spec.n2, spec.n3, spec.tubal_rank, seeds.truth);
                    const TubalMask mask = random_tubal_mask(spec.n1, spec.n2, ratio, seeds.mask);
                    const Tensor3d y = project(truth, mask);
                    MethodSettings settings = spec.settings;
                    settings.icurc.seed = seeds.solver;
                    const auto outcome = run_completion(method, y, mask, settings);
                    row.re = relative_error(outcome.estimate, truth);
                    row.psnr = psnr(outcome.estimate, truth);
                    row.time_s = outcome.time_s;
                    row.iters = outcome.iters;
                    row.converged = outcome.converged;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
                if (sink)
                    sink(row);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace tcomplete
