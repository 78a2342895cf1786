#include "bap/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <stdexcept>

#include "bap/greedy.hpp"
#include "bap/merge.hpp"
#include "bap/sim.hpp"

namespace bap {

void ExperimentConfig::validate() const {
    static const char* names[] = {"complexity", "convergence", "message",
                                  "optimgap",   "kstar",       "merge"};
    if (std::find(std::begin(names), std::end(names), name) == std::end(names))
        throw std::invalid_argument("unknown experiment: " + name);
    if (n_values.empty()) throw std::invalid_argument("empty n range");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
    for (int n : n_values)
        if (n < 1 || (name == "merge" && n % 2 != 0))
            throw std::invalid_argument("bad n for this experiment");
}

ExperimentConfig ExperimentConfig::defaults_for(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.n_values = parse_n_range("4:28:4");
    cfg.trials = 100;
    cfg.strategies = {Strategy::dfs_greedy, Strategy::bfs};
    if (name == "optimgap") cfg.strategies = {Strategy::dfs_greedy};
    if (name == "kstar") {
        cfg.n_values = {50};
        cfg.trials = 1;
    }
    if (name == "merge") {
        cfg.n_values = {20};
        cfg.trials = 10;
        cfg.strategies = {Strategy::dfs_greedy};
    }
    return cfg;
}

std::vector<int> parse_n_range(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        int lo = 0, hi = 0, step = 1;
        int parts = std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step);
        if (parts < 2 || step < 1 || lo < 1 || hi < lo)
            throw std::invalid_argument("bad n range: " + text);
        for (int n = lo; n <= hi; n += step) out.push_back(n);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stoi(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("bad n range: " + text);
    return out;
}

namespace {

void explored_stats(const RoundMetrics& metrics, int& max_explored, double& mean_explored) {
    max_explored = 0;
    long long sum = 0, rounds = 0;
    for (int e : metrics.explored_per_round) {
        max_explored = std::max(max_explored, e);
        if (e > 0) {
            sum += e;
            ++rounds;
        }
    }
    mean_explored = rounds > 0 ? static_cast<double>(sum) / rounds : 0.0;
}

std::vector<ExperimentRow> run_cell(const ExperimentConfig& cfg, int n, int trial) {
    const uint64_t cell_seed = derive_seed(cfg.seed, static_cast<uint64_t>(n), trial);
    const bool merge_demo = cfg.name == "merge";
    Instance inst = generate_instance(
        n, n, merge_demo ? PointDistribution::two_clusters : PointDistribution::uniform_square,
        cell_seed);
    CommGraph comm = parse_topology(cfg.topology, inst.graph.m);
    GreedyOutcome greedy = greedy_assign(inst.graph, comm);

    std::vector<ExperimentRow> rows;
    for (Strategy strategy : cfg.strategies) {
        ExperimentRow row;
        row.n = n;
        row.trial = trial;
        row.strategy = strategy;
        if (merge_demo) {
            std::vector<int> a1, t1, a2, t2;
            for (int i = 0; i < inst.graph.m; ++i) (i < inst.graph.m / 2 ? a1 : a2).push_back(i);
            for (int j = 0; j < inst.graph.n; ++j) (j < inst.graph.n / 2 ? t1 : t2).push_back(j);
            Partition part = solve_partition(inst.graph, a1, t1, a2, t2, strategy);
            MergeResult merged = merge_or_warmstart(part, strategy);
            row.prune_iterations =
                merged.trace ? static_cast<int>(merged.trace->records.size()) : 0;
            auto [edge, weight] = max_edge_in_matching(inst.graph, merged.matching);
            row.bottleneck_weight = weight;
        } else {
            DistributedRun run = run_distributed_prune_bap(
                inst.graph, comm, Matching::index_pairing(inst.graph.m, inst.graph.n), strategy);
            row.prune_iterations = static_cast<int>(run.trace.records.size());
            row.time_steps = run.metrics.time_steps;
            explored_stats(run.metrics, row.max_explored_per_round, row.mean_explored_per_round);
            row.bottleneck_weight = run.trace.final_bottleneck_weight;
        }
        row.greedy_weight = greedy.largest_weight;
        row.gap = row.greedy_weight - row.bottleneck_weight;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.strategies.empty()) throw std::invalid_argument("no strategies selected");

    struct Cell {
        int n_index;
        int trial;
    };
    std::vector<Cell> cells;
    for (int ni = 0; ni < static_cast<int>(cfg.n_values.size()); ++ni)
        for (int trial = 0; trial < cfg.trials; ++trial) cells.push_back({ni, trial});

    const size_t per_cell = cfg.strategies.size();
    std::vector<ExperimentRow> rows(cells.size() * per_cell);
    auto worker = [&](int offset) {
        for (size_t k = offset; k < cells.size(); k += cfg.threads) {
            auto cell_rows = run_cell(cfg, cfg.n_values[cells[k].n_index], cells[k].trial);
            std::copy(cell_rows.begin(), cell_rows.end(), rows.begin() + k * per_cell);
        }
    };
    if (cfg.threads == 1) {
        worker(0);
    } else {
        std::vector<std::future<void>> futures;
        for (int k = 0; k < cfg.threads; ++k)
            futures.push_back(std::async(std::launch::async, worker, k));
        for (auto& f : futures) f.get();
    }
    return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::string out =
        "n,trial,strategy,prune_iterations,time_steps,max_explored_per_round,"
        "mean_explored_per_round,bottleneck_weight,greedy_weight,gap\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%d,%d,%s,%d,%lld,%d,%.9g,%.9g,%.9g,%.9g\n", r.n,
                      r.trial, strategy_name(r.strategy).c_str(), r.prune_iterations,
                      r.time_steps, r.max_explored_per_round, r.mean_explored_per_round,
                      r.bottleneck_weight, r.greedy_weight, r.gap);
        out += line;
    }
    return out;
}

}  // namespace bap
