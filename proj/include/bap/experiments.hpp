#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bap/instance.hpp"
#include "bap/pruner.hpp"

namespace bap {

struct ExperimentConfig {
    std::string name;  // complexity | convergence | message | optimgap | kstar | merge
    std::vector<int> n_values;
    int trials = 100;
    uint64_t seed = 0;
    std::string topology = "complete";
    std::vector<Strategy> strategies;  // empty: per-name default
    int threads = 1;

    void validate() const;
    /// Applies the per-name defaults for n_values, trials, and strategies.
    static ExperimentConfig defaults_for(const std::string& name);
};

struct ExperimentRow {
    int n = 0;
    int trial = 0;
    Strategy strategy = Strategy::dfs_greedy;
    int prune_iterations = 0;
    long long time_steps = 0;
    int max_explored_per_round = 0;
    double mean_explored_per_round = 0.0;  // over rounds that explored anything
    double bottleneck_weight = 0.0;
    double greedy_weight = 0.0;
    double gap = 0.0;
};

/// Runs every (n, trial, strategy) cell, possibly across threads. Rows come
/// back sorted by (n, trial, strategy); output is independent of the thread
/// count. Each trial draws its instance from derive_seed(seed, n, trial).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

/// Parses "4:20" (inclusive range), "4:20:4" (strided), or "4,8,12".
std::vector<int> parse_n_range(const std::string& text);

}  // namespace bap
