// Command-line frontend: instance generation, solving, oracle checks,
// experiment sweeps, and two-block merging.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bap/experiments.hpp"
#include "bap/greedy.hpp"
#include "bap/instance.hpp"
#include "bap/merge.hpp"
#include "bap/oracles.hpp"
#include "bap/pruner.hpp"
#include "bap/sim.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"bottleneck assignment toolkit"};
    app.require_subcommand(1);

    std::string instance_path, out_path, topology = "complete", strategy_name = "dfs";
    std::string warm_start_path, experiment_name, n_range = "4:28:4";
    uint64_t seed = 0;
    int trials = 100, n = 8, m = -1, threads = 1;
    bool verify = false, clusters = false;

    auto* gen = app.add_subcommand("gen", "generate a Euclidean instance");
    gen->add_option("--n", n, "task count")->required();
    gen->add_option("--m", m, "agent count (default n)");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_flag("--clusters", clusters, "two separated clusters instead of one square");
    gen->add_option("--out", out_path, "output instance file")->required();

    auto* solve = app.add_subcommand("solve", "solve an instance with the pruning solver");
    solve->add_option("--instance", instance_path)->required();
    solve->add_option("--strategy", strategy_name, "dfs | dfs-index | bfs");
    solve->add_option("--topology", topology, "complete | path | ring | file:<json>");
    solve->add_option("--warm-start", warm_start_path, "matching json to start from");
    solve->add_option("--out", out_path, "iteration trace csv");
    solve->add_flag("--verify", verify, "cross-check the result against the brute-force oracle");

    auto* oracle = app.add_subcommand("oracle", "brute-force bottleneck of a small instance");
    oracle->add_option("--instance", instance_path)->required();

    auto* experiment = app.add_subcommand("experiment", "run a sweep and write csv");
    experiment->add_option("--name", experiment_name,
                           "complexity | convergence | message | optimgap | kstar | merge")
        ->required();
    experiment->add_option("--n", n_range, "n values, e.g. 4:20, 4:28:4 or 4,8,12");
    experiment->add_option("--trials", trials);
    experiment->add_option("--seed", seed);
    experiment->add_option("--topology", topology);
    experiment->add_option("--strategy", strategy_name, "restrict to one strategy");
    experiment->add_option("--threads", threads);
    experiment->add_option("--out", out_path)->required();

    auto* merge = app.add_subcommand("merge", "solve two halves and merge them");
    merge->add_option("--instance", instance_path)->required();
    merge->add_option("--strategy", strategy_name);
    merge->add_option("--out", out_path, "merge report json");
    merge->add_flag("--verify", verify, "verify cluster and criticality preconditions");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        if (m < 0) m = n;
        bap::Instance inst = bap::generate_instance(
            n, m, clusters ? bap::PointDistribution::two_clusters
                           : bap::PointDistribution::uniform_square,
            seed);
        bap::write_file(out_path, bap::instance_to_json(inst));
        std::printf("wrote %s (%d agents, %d tasks)\n", out_path.c_str(), m, n);
        return 0;
    }

    if (solve->parsed()) {
        bap::Instance inst = bap::load_instance_file(instance_path);
        bap::Strategy strategy = bap::strategy_from_name(strategy_name);
        bap::CommGraph comm = bap::parse_topology(topology, inst.graph.m);
        bap::Matching m0 = warm_start_path.empty()
                               ? bap::Matching::index_pairing(inst.graph.m, inst.graph.n)
                               : bap::load_matching_file(warm_start_path);
        bap::DistributedRun run =
            bap::run_distributed_prune_bap(inst.graph, comm, m0, strategy);
        std::printf("bottleneck %.9g at (%d,%d), %zu iterations, %lld time steps\n",
                    run.trace.final_bottleneck_weight, run.trace.final_bottleneck_edge.agent,
                    run.trace.final_bottleneck_edge.task, run.trace.records.size(),
                    run.metrics.time_steps);
        if (verify) {
            auto [oracle_m, oracle_w] = bap::brute_force_bottleneck(inst.graph);
            if (oracle_w != run.trace.final_bottleneck_weight) {
                std::fprintf(stderr, "oracle disagrees: %.9g\n", oracle_w);
                return 1;
            }
            std::printf("oracle agrees\n");
        }
        if (!out_path.empty()) bap::write_file(out_path, bap::prune_trace_csv(run.trace));
        return 0;
    }

    if (oracle->parsed()) {
        bap::Instance inst = bap::load_instance_file(instance_path);
        auto [matching, weight] = bap::brute_force_bottleneck(inst.graph);
        std::printf("bottleneck %.9g\n", weight);
        return 0;
    }

    if (experiment->parsed()) {
        bap::ExperimentConfig cfg = bap::ExperimentConfig::defaults_for(experiment_name);
        if (experiment->count("--n") > 0) cfg.n_values = bap::parse_n_range(n_range);
        if (experiment->count("--trials") > 0) cfg.trials = trials;
        if (experiment->count("--strategy") > 0)
            cfg.strategies = {bap::strategy_from_name(strategy_name)};
        cfg.seed = seed;
        cfg.topology = topology;
        cfg.threads = threads;
        auto rows = bap::run_experiment(cfg);
        bap::write_file(out_path, bap::experiment_csv(rows));
        std::printf("wrote %s (%zu rows)\n", out_path.c_str(), rows.size());
        return 0;
    }

    if (merge->parsed()) {
        bap::Instance inst = bap::load_instance_file(instance_path);
        bap::Strategy strategy = bap::strategy_from_name(strategy_name);
        std::vector<int> a1, t1, a2, t2;
        for (int i = 0; i < inst.graph.m; ++i) (i < inst.graph.m / 2 ? a1 : a2).push_back(i);
        for (int j = 0; j < inst.graph.n; ++j) (j < inst.graph.n / 2 ? t1 : t2).push_back(j);
        bap::Partition part = bap::solve_partition(inst.graph, a1, t1, a2, t2, strategy);
        bap::MergeResult result = bap::merge_or_warmstart(part, strategy, verify);
        auto [edge, weight] = bap::max_edge_in_matching(inst.graph, result.matching);
        std::printf("decision %s, merged bottleneck %.9g\n",
                    result.report.decision == bap::MergeReport::Decision::reuse_union
                        ? "reuse_union"
                        : "warm_start_required",
                    weight);
        if (!out_path.empty()) bap::write_file(out_path, bap::merge_report_json(result.report));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
