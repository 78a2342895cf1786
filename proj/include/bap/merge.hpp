#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bap/graph.hpp"
#include "bap/pruner.hpp"

namespace bap {

/// A two-block split of one assignment instance. Index sets refer to the
/// full graph; sub-matchings and bottleneck edges use full-graph indices
/// with entries only inside their own block.
struct Partition {
    WeightedBipartiteGraph graph_full;
    std::vector<int> agents_1, tasks_1;
    std::vector<int> agents_2, tasks_2;
    Matching m1, m2;
    Edge e1, e2;  // bottleneck edges of the solved blocks

    void validate() const;
};

/// Extracts the block spanned by the given agent and task index sets.
WeightedBipartiteGraph sub_instance(const WeightedBipartiteGraph& g,
                                    const std::vector<int>& agents,
                                    const std::vector<int>& tasks);

/// Solves both blocks independently and returns the assembled partition.
/// Each block's bottleneck edge comes from the solver's terminal state, so
/// it is critical for the block's final matching by construction.
Partition solve_partition(const WeightedBipartiteGraph& g, const std::vector<int>& agents_1,
                          const std::vector<int>& tasks_1, const std::vector<int>& agents_2,
                          const std::vector<int>& tasks_2, Strategy strategy);

/// Upper bound on the combined bottleneck: max of the block bottlenecks.
double bottleneck_bound(const Partition& p);

/// True iff `e` is the deterministic heaviest matched edge and removing it
/// from the pruned edge set leaves no augmenting path. Such an edge pins the
/// optimum: no maximum matching avoids its weight class.
bool is_critical_bottleneck_edge(const WeightedBipartiteGraph& g, const Matching& matching,
                                 Edge e);

/// True iff every vertex can reach an endpoint of `e` by an alternating path
/// inside the pruned edge set. `matching` must be an optimal assignment
/// (the caller verifies that at test scale) and `e` one of its heaviest edges.
bool is_bottleneck_cluster(const WeightedBipartiteGraph& g, const Matching& matching, Edge e);

/// Splits a cluster into the two alternating trees rooted at the endpoints
/// of the critical edge. Returns (agent-rooted tree, task-rooted tree).
/// Throws when the vertices or the pruned edges do not split into two trees.
std::pair<AlternatingTree, AlternatingTree> agent_task_trees(const WeightedBipartiteGraph& g,
                                                             const Matching& matching, Edge ec);

struct MergeReport {
    double bound = 0.0;
    bool cond_i = false;    // cheap edge from a block-2 agent into block 1's task tree
    bool cond_ii = false;   // cheap edge from a block-2 task into block 1's agent tree
    bool cond_iii = false;  // cheap matched-capped alternating path between the witnesses
    std::optional<Edge> witness_i;
    std::optional<Edge> witness_ii;
    std::vector<Edge> witness_path;
    bool degenerate = false;  // equal block bottlenecks or tied heaviest edge
    enum class Decision { reuse_union, warm_start_required } decision = Decision::reuse_union;
};

/// Evaluates the three merge conditions against the heavier block. The union
/// of the block matchings is already optimal unless all three hold. With
/// `verify` set, block optimality structure (criticality, cluster) is checked
/// first and violations throw; otherwise the caller vouches for it.
MergeReport check_merge_conditions(const Partition& p, bool verify = false);

/// Returns the union matching when the report allows it; otherwise re-solves
/// the full instance warm-started from the union.
struct MergeResult {
    Matching matching;
    MergeReport report;
    std::optional<PruneTrace> trace;  // present only when a re-solve ran
};
MergeResult merge_or_warmstart(const Partition& p, Strategy strategy, bool verify = false);

std::string merge_report_json(const MergeReport& report);

}  // namespace bap
