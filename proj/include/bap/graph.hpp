#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <map>
#include <utility>
#include <vector>

namespace bap {

/// An agent-task pair. Agents and tasks are indexed from 0.
struct Edge {
    int agent = -1;
    int task = -1;
    auto operator<=>(const Edge&) const = default;
};

/// A vertex of the bipartite graph: either an agent or a task.
struct Vertex {
    bool is_task = false;
    int index = -1;

    static Vertex agent(int i) { return Vertex{false, i}; }
    static Vertex task(int j) { return Vertex{true, j}; }
    auto operator<=>(const Vertex&) const = default;
};

/// Dense m-by-n membership mask over agent-task pairs.
class EdgeSet {
public:
    EdgeSet() = default;
    EdgeSet(int m, int n, bool fill = false)
        : m_(m), n_(n), bits_(static_cast<size_t>(m) * n, fill ? 1 : 0) {}

    int agent_count() const { return m_; }
    int task_count() const { return n_; }

    bool contains(int agent, int task) const {
        return bits_[static_cast<size_t>(agent) * n_ + task] != 0;
    }
    bool contains(Edge e) const { return contains(e.agent, e.task); }

    void insert(int agent, int task) { bits_[static_cast<size_t>(agent) * n_ + task] = 1; }
    void insert(Edge e) { insert(e.agent, e.task); }
    void erase(int agent, int task) { bits_[static_cast<size_t>(agent) * n_ + task] = 0; }
    void erase(Edge e) { erase(e.agent, e.task); }

    int count() const;
    std::vector<Edge> edges() const;  // ascending (agent, task)

    bool operator==(const EdgeSet&) const = default;

private:
    int m_ = 0, n_ = 0;
    std::vector<uint8_t> bits_;
};

/// Weighted bipartite assignment graph. `m` agents, `n` tasks, a weight per
/// pair and a presence mask so that filtered subgraphs are first-class.
struct WeightedBipartiteGraph {
    int m = 0;
    int n = 0;
    std::vector<double> weights;  // row-major, m*n
    EdgeSet present;
    std::vector<std::string> agent_labels;  // optional, empty when unnamed
    std::vector<std::string> task_labels;

    static WeightedBipartiteGraph complete(const std::vector<std::vector<double>>& w);
    static WeightedBipartiteGraph masked(const std::vector<std::vector<double>>& w,
                                         const std::vector<std::vector<bool>>& mask);

    double weight(int agent, int task) const {
        return weights[static_cast<size_t>(agent) * n + task];
    }
    double weight(Edge e) const { return weight(e.agent, e.task); }
    bool has_edge(int agent, int task) const { return present.contains(agent, task); }
    bool has_edge(Edge e) const { return present.contains(e); }

    /// Throws std::invalid_argument on bad shape or non-finite present weights.
    void validate() const;
};

/// A matching stored as the per-agent matched task, -1 meaning free.
/// The edge-set view is derived on demand and never stored separately.
struct Matching {
    std::vector<int> matched_task;

    static Matching none(int m) { return Matching{std::vector<int>(m, -1)}; }
    /// Pairs agent p with task p for p < min(m, n).
    static Matching index_pairing(int m, int n);

    int agent_count() const { return static_cast<int>(matched_task.size()); }
    int cardinality() const;
    bool is_matched(int agent) const { return matched_task[agent] >= 0; }
    int task_of(int agent) const { return matched_task[agent]; }
    /// Agent matched to `task`, or -1. Linear scan.
    int mate_of_task(int task) const;
    bool contains(Edge e) const {
        return e.agent >= 0 && e.agent < agent_count() && matched_task[e.agent] == e.task;
    }

    std::vector<Edge> edges() const;  // ascending agent order

    /// In-range entries and no task matched twice.
    bool is_valid_for(int m, int n) const;
    /// Every matched edge lies in `allowed`.
    bool within(const EdgeSet& allowed) const;

    bool operator==(const Matching&) const = default;
};

/// Rooted tree over explored vertices; parent links and levels.
/// The path from any vertex to the root alternates matched and unmatched
/// edges relative to the matching it was built against.
struct AlternatingTree {
    Vertex root;
    std::map<Vertex, Vertex> parent;  // child -> parent
    std::map<Vertex, int> level;      // root has level 0

    bool contains(Vertex v) const { return v == root || parent.count(v) > 0; }
    std::vector<Vertex> vertices() const;  // sorted
    std::vector<Edge> edges() const;       // (child, parent) pairs, sorted
};

/// Matching edges plus every edge strictly cheaper than the matching's
/// heaviest edge.
struct PrunedEdgeSet {
    EdgeSet edges;
    double threshold = 0.0;  // weight of the heaviest matched edge
};

/// Vertices adjacent to `v` through edges in `filter`, ascending index order.
std::vector<Vertex> neighbors(const WeightedBipartiteGraph& g, Vertex v, const EdgeSet& filter);

/// Chains an ordered edge list into its vertex sequence. Throws
/// std::invalid_argument when consecutive edges do not connect or a vertex
/// repeats. Empty input yields an empty sequence.
std::vector<Vertex> path_vertices(const std::vector<Edge>& path);

/// True iff every vertex touched by the path is incident to at most one
/// path edge inside the matching and at most one outside it.
bool is_alternating_path(const std::vector<Edge>& path, const Matching& matching);

/// Alternating and both endpoints free. The empty path is not augmenting.
bool is_augmenting_path(const std::vector<Edge>& path, const Matching& matching);

/// Symmetric difference of the matching with an augmenting path; grows
/// cardinality by exactly one. Throws if the path is not augmenting.
Matching augment(const Matching& matching, const std::vector<Edge>& path);

/// Heaviest matched edge; ties broken by lowest (agent, task) index pair.
/// Throws on an empty matching.
std::pair<Edge, double> max_edge_in_matching(const WeightedBipartiteGraph& g,
                                             const Matching& matching);

/// Requires `matching` to be a maximum-cardinality matching of `g`.
PrunedEdgeSet pruned_edge_set(const WeightedBipartiteGraph& g, const Matching& matching);

}  // namespace bap
