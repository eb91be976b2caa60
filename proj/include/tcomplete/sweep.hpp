#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcomplete/completion.hpp"
#include "tcomplete/metrics.hpp"

namespace tcomplete {

/// A synthetic completion experiment: for every method, sampling ratio and
/// trial, draw a fresh low-tubal-rank truth and mask, complete, and score.
struct ExperimentSpec {
    Index n1 = 64;
    Index n2 = 64;
    Index n3 = 8;
    Index tubal_rank = 2;
    std::vector<double> sampling_ratios{0.3};
    int trials = 1;
    std::vector<Method> methods{Method::Tnn, Method::Tl12, Method::Tccur};
    std::uint64_t seed = 0;
    MethodSettings settings;

    void validate() const;
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);
/// The "admm" and "icurc" blocks of an experiment spec.
nlohmann::json to_json(const MethodSettings& settings);

/// Seeds for one (ratio index, trial) cell; identical across methods so every
/// method sees the same truth and mask.
struct TrialSeeds {
    std::uint64_t truth;
    std::uint64_t mask;
    std::uint64_t solver;
};
TrialSeeds trial_seeds(std::uint64_t master, std::size_t ratio_index, int trial);

/// (method, ratio as written to CSV, trial) of a finished row.
using SweepKey = std::tuple<std::string, std::string, int>;

/// Ratio text used in CSV rows and resume keys.
std::string format_ratio(double ratio);

/// Runs the sweep in (method, ratio, trial) order. Each finished row is passed
/// to `sink` before the next starts; rows whose key is in `skip` are not rerun.
/// A solver failure becomes a row with `error` set and the sweep continues.
std::vector<MetricRow> run_sweep(const ExperimentSpec& spec,
                                 const std::function<void(const MetricRow&)>& sink = {},
                                 const std::set<SweepKey>& skip = {});

} // namespace tcomplete
