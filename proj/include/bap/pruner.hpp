#pragma once

#include <string>
#include <vector>

#include "bap/augpath.hpp"
#include "bap/graph.hpp"

namespace bap {

enum class Strategy { dfs_greedy, dfs_index, bfs };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);  // accepts dfs, dfs-index, bfs

struct PruneIteration {
    int iteration = 0;  // 1-based
    Edge removed_edge;
    double bottleneck_weight = 0.0;  // weight of the removed edge
    int surviving_edge_count = 0;    // edges left after pruning
    bool search_found = false;
    int search_iterations = 0;
};

struct PruneTrace {
    std::vector<PruneIteration> records;
    Matching final_matching;
    Edge final_bottleneck_edge;
    double final_bottleneck_weight = 0.0;
};

/// Iteratively removes the heaviest matched edge, prunes everything at or
/// above its weight, and searches the remainder for a replacement matching.
/// Stops when no replacement exists; the last matching minimises the
/// bottleneck objective and the last removed edge is critical for it.
/// `m0` must be a maximum-cardinality matching of `g`.
std::pair<Matching, PruneTrace> prune_bap(const WeightedBipartiteGraph& g, const Matching& m0,
                                          Strategy strategy);

/// Union of disjoint partial matchings over a shared index space. Throws if
/// two parts share an agent or a task.
Matching warm_start_from(const std::vector<Matching>& parts);

/// CSV with columns iteration, removed_agent, removed_task, weight,
/// edges_left, found, search_iters.
std::string prune_trace_csv(const PruneTrace& trace);

}  // namespace bap
