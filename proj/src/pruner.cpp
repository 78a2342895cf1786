#include "bap/pruner.hpp"

#include <cstdio>
#include <stdexcept>

#include "bap/oracles.hpp"

namespace bap {

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::dfs_greedy: return "dfs_greedy";
        case Strategy::dfs_index: return "dfs_index";
        case Strategy::bfs: return "bfs";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "dfs" || name == "dfs_greedy" || name == "dfs-greedy") return Strategy::dfs_greedy;
    if (name == "dfs-index" || name == "dfs_index") return Strategy::dfs_index;
    if (name == "bfs") return Strategy::bfs;
    throw std::invalid_argument("unknown strategy: " + name);
}

namespace {

SearchOutcome run_search(const SearchInput& input, Strategy strategy) {
    switch (strategy) {
        case Strategy::dfs_greedy: return aug_dfs(input, PickMode::greedy_min_weight);
        case Strategy::dfs_index: return aug_dfs(input, PickMode::lowest_index);
        case Strategy::bfs: return aug_bfs(input);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::pair<Matching, PruneTrace> prune_bap(const WeightedBipartiteGraph& g, const Matching& m0,
                                          Strategy strategy) {
    g.validate();
    if (!m0.is_valid_for(g.m, g.n) || !m0.within(g.present))
        throw std::invalid_argument("initial matching invalid for this graph");
    if (m0.cardinality() != mcm_oracle(g, g.present).cardinality())
        throw std::invalid_argument("initial matching is not maximum cardinality");
    if (m0.cardinality() != g.n)
        throw std::invalid_argument("every task must be matchable");

    Matching m = m0;
    PruneTrace trace;
    while (true) {
        auto [removed, weight] = max_edge_in_matching(g, m);
        SearchInput input;
        input.graph = &g;
        input.removed_edge = removed;
        input.matching = m;
        input.matching.matched_task[removed.agent] = -1;
        input.edges = pruned_edge_set(g, m).edges;
        input.edges.erase(removed);

        SearchOutcome outcome = run_search(input, strategy);
        trace.records.push_back({static_cast<int>(trace.records.size()) + 1, removed, weight,
                                 input.edges.count(), outcome.found, outcome.iterations});
        if (!outcome.found) break;
        m = outcome.new_matching;
    }
    trace.final_matching = m;
    auto [edge, weight] = max_edge_in_matching(g, m);
    trace.final_bottleneck_edge = edge;
    trace.final_bottleneck_weight = weight;
    return {m, trace};
}

Matching warm_start_from(const std::vector<Matching>& parts) {
    if (parts.empty()) throw std::invalid_argument("no matchings to merge");
    const int m = parts.front().agent_count();
    Matching out = Matching::none(m);
    std::vector<char> task_used;
    for (const auto& part : parts) {
        if (part.agent_count() != m)
            throw std::invalid_argument("matchings cover different agent sets");
        for (int a = 0; a < m; ++a) {
            int t = part.matched_task[a];
            if (t < 0) continue;
            if (out.matched_task[a] >= 0)
                throw std::invalid_argument("matchings share an agent");
            if (t >= static_cast<int>(task_used.size())) task_used.resize(t + 1, 0);
            if (task_used[t]) throw std::invalid_argument("matchings share a task");
            task_used[t] = 1;
            out.matched_task[a] = t;
        }
    }
    return out;
}

std::string prune_trace_csv(const PruneTrace& trace) {
    std::string out = "iteration,removed_agent,removed_task,weight,edges_left,found,search_iters\n";
    char line[160];
    for (const auto& r : trace.records) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%.9g,%d,%d,%d\n", r.iteration,
                      r.removed_edge.agent, r.removed_edge.task, r.bottleneck_weight,
                      r.surviving_edge_count, r.search_found ? 1 : 0, r.search_iterations);
        out += line;
    }
    return out;
}

}  // namespace bap
