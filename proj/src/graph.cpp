#include "bap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "bap/oracles.hpp"

namespace bap {

int EdgeSet::count() const {
    int c = 0;
    for (uint8_t b : bits_) c += b;
    return c;
}

std::vector<Edge> EdgeSet::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < m_; ++a)
        for (int t = 0; t < n_; ++t)
            if (contains(a, t)) out.push_back({a, t});
    return out;
}

WeightedBipartiteGraph WeightedBipartiteGraph::complete(
    const std::vector<std::vector<double>>& w) {
    WeightedBipartiteGraph g;
    g.m = static_cast<int>(w.size());
    g.n = g.m > 0 ? static_cast<int>(w[0].size()) : 0;
    g.present = EdgeSet(g.m, g.n, true);
    g.weights.reserve(static_cast<size_t>(g.m) * g.n);
    for (const auto& row : w) {
        if (static_cast<int>(row.size()) != g.n)
            throw std::invalid_argument("weight matrix is ragged");
        g.weights.insert(g.weights.end(), row.begin(), row.end());
    }
    g.validate();
    return g;
}

WeightedBipartiteGraph WeightedBipartiteGraph::masked(
    const std::vector<std::vector<double>>& w, const std::vector<std::vector<bool>>& mask) {
    WeightedBipartiteGraph g = complete(w);
    if (mask.size() != w.size()) throw std::invalid_argument("mask shape mismatch");
    for (int a = 0; a < g.m; ++a) {
        if (static_cast<int>(mask[a].size()) != g.n)
            throw std::invalid_argument("mask shape mismatch");
        for (int t = 0; t < g.n; ++t)
            if (!mask[a][t]) g.present.erase(a, t);
    }
    g.validate();
    return g;
}

void WeightedBipartiteGraph::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("graph needs at least one agent and one task");
    if (static_cast<int>(weights.size()) != m * n)
        throw std::invalid_argument("weight storage does not match m*n");
    if (present.agent_count() != m || present.task_count() != n)
        throw std::invalid_argument("presence mask shape mismatch");
    for (int a = 0; a < m; ++a)
        for (int t = 0; t < n; ++t)
            if (present.contains(a, t) && !std::isfinite(weight(a, t)))
                throw std::invalid_argument("present edge with non-finite weight");
}

Matching Matching::index_pairing(int m, int n) {
    Matching r = Matching::none(m);
    for (int p = 0; p < std::min(m, n); ++p) r.matched_task[p] = p;
    return r;
}

int Matching::cardinality() const {
    int c = 0;
    for (int t : matched_task) c += (t >= 0);
    return c;
}

int Matching::mate_of_task(int task) const {
    for (int a = 0; a < agent_count(); ++a)
        if (matched_task[a] == task) return a;
    return -1;
}

std::vector<Edge> Matching::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < agent_count(); ++a)
        if (matched_task[a] >= 0) out.push_back({a, matched_task[a]});
    return out;
}

bool Matching::is_valid_for(int m, int n) const {
    if (agent_count() != m) return false;
    std::vector<char> used(n, 0);
    for (int t : matched_task) {
        if (t < -1 || t >= n) return false;
        if (t >= 0) {
            if (used[t]) return false;
            used[t] = 1;
        }
    }
    return true;
}

bool Matching::within(const EdgeSet& allowed) const {
    for (int a = 0; a < agent_count(); ++a)
        if (matched_task[a] >= 0 && !allowed.contains(a, matched_task[a])) return false;
    return true;
}

std::vector<Vertex> AlternatingTree::vertices() const {
    std::vector<Vertex> out{root};
    for (const auto& [child, p] : parent) out.push_back(child);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> AlternatingTree::edges() const {
    std::vector<Edge> out;
    for (const auto& [child, p] : parent) {
        Edge e = child.is_task ? Edge{p.index, child.index} : Edge{child.index, p.index};
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vertex> neighbors(const WeightedBipartiteGraph& g, Vertex v, const EdgeSet& filter) {
    std::vector<Vertex> out;
    if (v.is_task) {
        if (v.index < 0 || v.index >= g.n) throw std::invalid_argument("task index out of range");
        for (int a = 0; a < g.m; ++a)
            if (filter.contains(a, v.index)) out.push_back(Vertex::agent(a));
    } else {
        if (v.index < 0 || v.index >= g.m) throw std::invalid_argument("agent index out of range");
        for (int t = 0; t < g.n; ++t)
            if (filter.contains(v.index, t)) out.push_back(Vertex::task(t));
    }
    return out;
}

std::vector<Vertex> path_vertices(const std::vector<Edge>& path) {
    if (path.empty()) return {};
    for (const Edge& e : path)
        if (e.agent < 0 || e.task < 0) throw std::invalid_argument("path contains an invalid edge");
    auto ends = [](const Edge& e) {
        return std::pair<Vertex, Vertex>{Vertex::agent(e.agent), Vertex::task(e.task)};
    };
    std::vector<Vertex> seq;
    if (path.size() == 1) {
        auto [a, t] = ends(path[0]);
        return {a, t};
    }
    // Orient the first edge so that the shared vertex with the second edge
    // comes last, then chain.
    auto [a0, t0] = ends(path[0]);
    auto [a1, t1] = ends(path[1]);
    Vertex head;
    if (a0 == a1) {
        seq = {t0, a0};
        head = a0;
    } else if (t0 == t1) {
        seq = {a0, t0};
        head = t0;
    } else {
        throw std::invalid_argument("path edges 0 and 1 do not share a vertex");
    }
    for (size_t k = 1; k < path.size(); ++k) {
        auto [a, t] = ends(path[k]);
        Vertex next;
        if (a == head)
            next = t;
        else if (t == head)
            next = a;
        else
            throw std::invalid_argument("path edges are not consecutive");
        seq.push_back(next);
        head = next;
    }
    std::set<Vertex> distinct(seq.begin(), seq.end());
    if (distinct.size() != seq.size()) throw std::invalid_argument("path repeats a vertex");
    return seq;
}

bool is_alternating_path(const std::vector<Edge>& path, const Matching& matching) {
    path_vertices(path);  // validates path structure
    // Count per incident vertex how many path edges fall inside / outside M.
    std::map<Vertex, std::pair<int, int>> touch;  // (in matching, not in matching)
    for (const Edge& e : path) {
        bool in_m = matching.contains(e);
        auto bump = [&](Vertex v) {
            auto& [mi, mo] = touch[v];
            (in_m ? mi : mo) += 1;
        };
        bump(Vertex::agent(e.agent));
        bump(Vertex::task(e.task));
    }
    for (const auto& [v, counts] : touch)
        if (counts.first > 1 || counts.second > 1) return false;
    return true;
}

bool is_augmenting_path(const std::vector<Edge>& path, const Matching& matching) {
    if (path.empty()) return false;
    if (!is_alternating_path(path, matching)) return false;
    std::vector<Vertex> seq = path_vertices(path);
    auto is_free = [&](Vertex v) {
        if (v.is_task) return matching.mate_of_task(v.index) < 0;
        return !matching.is_matched(v.index);
    };
    return is_free(seq.front()) && is_free(seq.back());
}

Matching augment(const Matching& matching, const std::vector<Edge>& path) {
    if (!is_augmenting_path(path, matching))
        throw std::invalid_argument("augment requires an augmenting path");
    Matching out = matching;
    for (const Edge& e : path) {
        if (matching.contains(e)) {
            out.matched_task[e.agent] = -1;  // dropped; re-added below if flipped back
        }
    }
    for (const Edge& e : path) {
        if (!matching.contains(e)) out.matched_task[e.agent] = e.task;
    }
    return out;
}

std::pair<Edge, double> max_edge_in_matching(const WeightedBipartiteGraph& g,
                                             const Matching& matching) {
    if (matching.cardinality() == 0) throw std::invalid_argument("matching is empty");
    Edge best{-1, -1};
    double bw = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < matching.agent_count(); ++a) {
        int t = matching.matched_task[a];
        if (t < 0) continue;
        double w = g.weight(a, t);
        if (w > bw || (w == bw && Edge{a, t} < best)) {
            bw = w;
            best = {a, t};
        }
    }
    return {best, bw};
}

PrunedEdgeSet pruned_edge_set(const WeightedBipartiteGraph& g, const Matching& matching) {
    if (!matching.is_valid_for(g.m, g.n) || !matching.within(g.present))
        throw std::invalid_argument("not a matching of the graph");
    if (matching.cardinality() != mcm_oracle(g, g.present).cardinality())
        throw std::invalid_argument("matching is not maximum cardinality");
    auto [e, threshold] = max_edge_in_matching(g, matching);
    PrunedEdgeSet out{EdgeSet(g.m, g.n, false), threshold};
    for (int a = 0; a < g.m; ++a)
        for (int t = 0; t < g.n; ++t)
            if (g.present.contains(a, t) &&
                (matching.matched_task[a] == t || g.weight(a, t) < threshold))
                out.edges.insert(a, t);
    return out;
}

}  // namespace bap
