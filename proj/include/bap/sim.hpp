#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bap/augpath.hpp"
#include "bap/graph.hpp"
#include "bap/pruner.hpp"

namespace bap {

/// Undirected, connected, time-invariant communication topology over the
/// agents. Construction computes the diameter and rejects disconnected
/// graphs.
struct CommGraph {
    int agent_count = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbour lists
    int diameter = 0;

    static CommGraph complete(int m);
    static CommGraph path(int m);
    static CommGraph ring(int m);
    static CommGraph from_links(int m, const std::vector<std::pair<int, int>>& links);
};

/// A value flooding the network during a consensus phase.
struct ConsensusValue {
    Edge edge;
    double weight = 0.0;
    bool operator==(const ConsensusValue&) const = default;
};

/// Per-tick snapshots of every agent's current best value, index 0 being the
/// state before any exchange.
struct ConsensusTrace {
    std::vector<std::vector<std::optional<ConsensusValue>>> after_tick;
};

/// Floods local proposals for exactly `diameter` ticks; every agent then
/// holds the global extremum. Ties resolve to the lowest (agent, task) pair.
/// Throws if no agent proposes anything.
std::pair<Edge, double> max_consensus(const CommGraph& comm,
                                      const std::vector<std::optional<ConsensusValue>>& proposals,
                                      ConsensusTrace* trace = nullptr,
                                      long long* messages = nullptr);
std::pair<Edge, double> min_consensus(const CommGraph& comm,
                                      const std::vector<std::optional<ConsensusValue>>& proposals,
                                      ConsensusTrace* trace = nullptr,
                                      long long* messages = nullptr);

/// What one agent is allowed to know: its own incident edges and weights,
/// its matched task, and the bookkeeping both searches need.
struct AgentLocalState {
    int id = -1;
    std::vector<double> weights;    // weight of {id, t} for each task t
    std::vector<uint8_t> incident;  // edge presence for this agent's row
    int matched_task = -1;
    int parent_task = -1;
    bool explored = false;
    std::vector<int> task_stack;       // depth-first path, shared by replication
    std::set<int> descendant_tasks;    // breadth-first subtree record
    std::vector<uint8_t> pruned;       // this agent's share of the pruned edge set

    bool has_pruned_edge(int task) const { return pruned[task] != 0; }
};

/// Splits the graph row-wise: agent i receives only row i.
std::vector<AgentLocalState> make_agent_states(const WeightedBipartiteGraph& g,
                                               const Matching& matching);

/// Local pruning once (removed, weight) is known network-wide: every agent
/// keeps its matched edge plus strictly cheaper edges; the removed edge's
/// owner drops it and marks itself free. Pure local computation, zero ticks.
void distributed_prune(std::vector<AgentLocalState>& states, Edge removed, double weight);

struct RoundRow {
    long long tick = 0;  // cumulative tick count at the end of the round
    long long msgs = 0;
    int explored = 0;
    int payload_items = 0;
};

struct RoundMetrics {
    long long time_steps = 0;
    long long messages_sent = 0;
    std::vector<int> explored_per_round;  // search rounds only
    int max_payload_items = 0;
    std::vector<RoundRow> rows;

    void merge(const RoundMetrics& other);
};

/// Runs one augmenting-path search as a message-passing protocol: every
/// search pass floods for diameter-many ticks, after which all agents agree
/// on the pass outcome. Produces the same result as the centralized search.
/// Input states are not modified.
std::pair<SearchOutcome, RoundMetrics> run_distributed_search(
    const std::vector<AgentLocalState>& states, const CommGraph& comm, int root_task,
    Strategy strategy);

struct DistributedRun {
    Matching matching;
    PruneTrace trace;
    RoundMetrics metrics;
};

/// The full solver under the distributed execution model: max-consensus on
/// the heaviest matched edge, local pruning, then the distributed search,
/// repeated until no replacement matching exists.
DistributedRun run_distributed_prune_bap(const WeightedBipartiteGraph& g, const CommGraph& comm,
                                         const Matching& m0, Strategy strategy);

/// CSV with columns tick, msgs, explored, payload_items (one row per round).
std::string round_metrics_csv(const RoundMetrics& metrics);

}  // namespace bap
