#include "bap/merge.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "bap/oracles.hpp"

namespace bap {

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool is_partition_of(const std::vector<int>& a, const std::vector<int>& b, int count) {
    std::vector<int> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    if (static_cast<int>(all.size()) != count) return false;
    for (int i = 0; i < count; ++i)
        if (all[i] != i) return false;
    return true;
}

// Vertices alternating-reachable from a root, following the pattern that
// matches paths ending at that root: entering one side through unmatched
// edges and the other through matched edges. `from_task` selects which.
struct ReachSets {
    std::vector<char> agents;
    std::vector<char> tasks;
};

ReachSets alternating_reach(const WeightedBipartiteGraph& g, const EdgeSet& allowed,
                            const Matching& matching, Vertex root, Edge excluded) {
    ReachSets r{std::vector<char>(g.m, 0), std::vector<char>(g.n, 0)};
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a)
        if (matching.matched_task[a] >= 0) mate_of_task[matching.matched_task[a]] = a;

    std::queue<Vertex> q;
    (root.is_task ? r.tasks[root.index] : r.agents[root.index]) = 1;
    q.push(root);
    const bool tasks_expand_unmatched = root.is_task;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        if (v.is_task == tasks_expand_unmatched) {
            // expand through unmatched allowed edges
            if (v.is_task) {
                for (int a = 0; a < g.m; ++a) {
                    Edge e{a, v.index};
                    if (r.agents[a] || !allowed.contains(e) || e == excluded) continue;
                    if (matching.contains(e)) continue;
                    r.agents[a] = 1;
                    q.push(Vertex::agent(a));
                }
            } else {
                for (int t = 0; t < g.n; ++t) {
                    Edge e{v.index, t};
                    if (r.tasks[t] || !allowed.contains(e) || e == excluded) continue;
                    if (matching.contains(e)) continue;
                    r.tasks[t] = 1;
                    q.push(Vertex::task(t));
                }
            }
        } else {
            // cross through the matched edge
            if (v.is_task) {
                int a = mate_of_task[v.index];
                if (a >= 0 && !r.agents[a] && allowed.contains(a, v.index) &&
                    Edge{a, v.index} != excluded) {
                    r.agents[a] = 1;
                    q.push(Vertex::agent(a));
                }
            } else {
                int t = matching.matched_task[v.index];
                if (t >= 0 && !r.tasks[t] && allowed.contains(v.index, t) &&
                    Edge{v.index, t} != excluded) {
                    r.tasks[t] = 1;
                    q.push(Vertex::task(t));
                }
            }
        }
    }
    return r;
}

void check_heaviest(const WeightedBipartiteGraph& g, const Matching& matching, Edge e) {
    if (!matching.contains(e)) throw std::invalid_argument("edge is not in the matching");
    auto [top, w] = max_edge_in_matching(g, matching);
    if (g.weight(e) != w) throw std::invalid_argument("edge is not a heaviest matched edge");
}

}  // namespace

void Partition::validate() const {
    graph_full.validate();
    if (!is_partition_of(agents_1, agents_2, graph_full.m) ||
        !is_partition_of(tasks_1, tasks_2, graph_full.n))
        throw std::invalid_argument("index sets do not partition the instance");
    if (agents_1.size() < tasks_1.size() || agents_2.size() < tasks_2.size())
        throw std::invalid_argument("each block needs at least as many agents as tasks");
    auto check_block = [&](const Matching& mk, const std::vector<int>& agents,
                           const std::vector<int>& tasks, Edge ek) {
        if (mk.agent_count() != graph_full.m)
            throw std::invalid_argument("block matching must use full-graph indices");
        std::set<int> aset(agents.begin(), agents.end()), tset(tasks.begin(), tasks.end());
        for (int a = 0; a < graph_full.m; ++a) {
            int t = mk.matched_task[a];
            if (t < 0) continue;
            if (!aset.count(a) || !tset.count(t))
                throw std::invalid_argument("block matching leaves its block");
        }
        if (!mk.contains(ek))
            throw std::invalid_argument("block bottleneck edge not in the block matching");
    };
    check_block(m1, agents_1, tasks_1, e1);
    check_block(m2, agents_2, tasks_2, e2);
}

WeightedBipartiteGraph sub_instance(const WeightedBipartiteGraph& g,
                                    const std::vector<int>& agents,
                                    const std::vector<int>& tasks) {
    WeightedBipartiteGraph sub;
    sub.m = static_cast<int>(agents.size());
    sub.n = static_cast<int>(tasks.size());
    sub.present = EdgeSet(sub.m, sub.n, false);
    sub.weights.assign(static_cast<size_t>(sub.m) * sub.n, 0.0);
    for (int a = 0; a < sub.m; ++a)
        for (int t = 0; t < sub.n; ++t) {
            sub.weights[static_cast<size_t>(a) * sub.n + t] = g.weight(agents[a], tasks[t]);
            if (g.present.contains(agents[a], tasks[t])) sub.present.insert(a, t);
        }
    sub.validate();
    return sub;
}

Partition solve_partition(const WeightedBipartiteGraph& g, const std::vector<int>& agents_1,
                          const std::vector<int>& tasks_1, const std::vector<int>& agents_2,
                          const std::vector<int>& tasks_2, Strategy strategy) {
    Partition p;
    p.graph_full = g;
    p.agents_1 = sorted_copy(agents_1);
    p.tasks_1 = sorted_copy(tasks_1);
    p.agents_2 = sorted_copy(agents_2);
    p.tasks_2 = sorted_copy(tasks_2);

    auto solve_block = [&](const std::vector<int>& agents, const std::vector<int>& tasks,
                           Matching& mk, Edge& ek) {
        WeightedBipartiteGraph sub = sub_instance(g, agents, tasks);
        auto [local, trace] =
            prune_bap(sub, Matching::index_pairing(sub.m, sub.n), strategy);
        mk = Matching::none(g.m);
        for (int a = 0; a < sub.m; ++a)
            if (local.matched_task[a] >= 0)
                mk.matched_task[agents[a]] = tasks[local.matched_task[a]];
        ek = Edge{agents[trace.final_bottleneck_edge.agent],
                  tasks[trace.final_bottleneck_edge.task]};
    };
    solve_block(p.agents_1, p.tasks_1, p.m1, p.e1);
    solve_block(p.agents_2, p.tasks_2, p.m2, p.e2);
    p.validate();
    return p;
}

double bottleneck_bound(const Partition& p) {
    return std::max(p.graph_full.weight(p.e1), p.graph_full.weight(p.e2));
}

bool is_critical_bottleneck_edge(const WeightedBipartiteGraph& g, const Matching& matching,
                                 Edge e) {
    if (!matching.contains(e)) throw std::invalid_argument("edge is not in the matching");
    auto [top, w] = max_edge_in_matching(g, matching);
    if (top != e) return false;
    PrunedEdgeSet phi = pruned_edge_set(g, matching);
    phi.edges.erase(e);
    Matching reduced = matching;
    reduced.matched_task[e.agent] = -1;
    return !has_augmenting_path(g, phi.edges, reduced);
}

bool is_bottleneck_cluster(const WeightedBipartiteGraph& g, const Matching& matching, Edge e) {
    check_heaviest(g, matching, e);
    PrunedEdgeSet phi = pruned_edge_set(g, matching);
    ReachSets to_task = alternating_reach(g, phi.edges, matching, Vertex::task(e.task), e);
    ReachSets to_agent = alternating_reach(g, phi.edges, matching, Vertex::agent(e.agent), e);
    for (int a = 0; a < g.m; ++a)
        if (!to_task.agents[a] && !to_agent.agents[a] && a != e.agent) return false;
    for (int t = 0; t < g.n; ++t)
        if (!to_task.tasks[t] && !to_agent.tasks[t] && t != e.task) return false;
    return true;
}

std::pair<AlternatingTree, AlternatingTree> agent_task_trees(const WeightedBipartiteGraph& g,
                                                             const Matching& matching, Edge ec) {
    if (!is_critical_bottleneck_edge(g, matching, ec))
        throw std::invalid_argument("edge is not critical for this matching");
    PrunedEdgeSet phi = pruned_edge_set(g, matching);
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a)
        if (matching.matched_task[a] >= 0) mate_of_task[matching.matched_task[a]] = a;

    std::vector<char> agent_taken(g.m, 0), task_taken(g.n, 0);
    auto grow = [&](Vertex root) {
        AlternatingTree tree;
        tree.root = root;
        tree.level[root] = 0;
        (root.is_task ? task_taken[root.index] : agent_taken[root.index]) = 1;
        std::queue<Vertex> q;
        q.push(root);
        const bool tasks_expand_unmatched = root.is_task;
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            auto attach = [&](Vertex child) {
                if (child.is_task ? task_taken[child.index] : agent_taken[child.index])
                    throw std::invalid_argument("pruned edges do not split into two trees");
                (child.is_task ? task_taken[child.index] : agent_taken[child.index]) = 1;
                tree.parent[child] = v;
                tree.level[child] = tree.level[v] + 1;
                q.push(child);
            };
            if (v.is_task == tasks_expand_unmatched) {
                if (v.is_task) {
                    for (int a = 0; a < g.m; ++a) {
                        Edge e{a, v.index};
                        if (!phi.edges.contains(e) || e == ec || matching.contains(e)) continue;
                        attach(Vertex::agent(a));
                    }
                } else {
                    for (int t = 0; t < g.n; ++t) {
                        Edge e{v.index, t};
                        if (!phi.edges.contains(e) || e == ec || matching.contains(e)) continue;
                        attach(Vertex::task(t));
                    }
                }
            } else {
                if (v.is_task) {
                    int a = mate_of_task[v.index];
                    if (a >= 0 && Edge{a, v.index} != ec) attach(Vertex::agent(a));
                } else {
                    int t = matching.matched_task[v.index];
                    if (t >= 0 && Edge{v.index, t} != ec) attach(Vertex::task(t));
                }
            }
        }
        return tree;
    };

    AlternatingTree task_tree = grow(Vertex::task(ec.task));
    AlternatingTree agent_tree = grow(Vertex::agent(ec.agent));

    for (int a = 0; a < g.m; ++a)
        if (!agent_taken[a]) throw std::invalid_argument("trees do not cover every agent");
    for (int t = 0; t < g.n; ++t)
        if (!task_taken[t]) throw std::invalid_argument("trees do not cover every task");
    int tree_edges = static_cast<int>(task_tree.parent.size() + agent_tree.parent.size());
    if (tree_edges != phi.edges.count() - 1)
        throw std::invalid_argument("pruned edges do not split into two trees");
    return {agent_tree, task_tree};
}

namespace {

// Alternating path from agent `from` to task `to` inside the block, every
// edge cheaper than `cap`, starting and ending with matched edges so matched
// edges outnumber the rest. Empty result means no such path.
std::vector<Edge> matched_capped_path(const WeightedBipartiteGraph& g, const Matching& matching,
                                      const std::vector<char>& in_block_agent,
                                      const std::vector<char>& in_block_task, int from, int to,
                                      double cap) {
    std::vector<int> mate_of_task(g.n, -1);
    for (int a = 0; a < g.m; ++a)
        if (matching.matched_task[a] >= 0) mate_of_task[matching.matched_task[a]] = a;

    std::vector<int> task_pred(g.n, -1);   // agent whose matched edge reached the task
    std::vector<int> agent_pred(g.m, -1);  // task whose unmatched edge reached the agent
    std::vector<char> agent_seen(g.m, 0), task_seen(g.n, 0);
    std::queue<int> agents;
    if (matching.matched_task[from] < 0) return {};
    agent_seen[from] = 1;
    agents.push(from);
    while (!agents.empty()) {
        int x = agents.front();
        agents.pop();
        int t = matching.matched_task[x];
        if (t < 0 || task_seen[t] || !in_block_task[t]) continue;
        if (g.weight(x, t) >= cap) continue;
        task_seen[t] = 1;
        task_pred[t] = x;
        if (t == to) break;
        for (int y = 0; y < g.m; ++y) {
            if (agent_seen[y] || !in_block_agent[y] || !g.present.contains(y, t)) continue;
            if (matching.contains({y, t}) || g.weight(y, t) >= cap) continue;
            agent_seen[y] = 1;
            agent_pred[y] = t;
            agents.push(y);
        }
    }
    if (!task_seen[to]) return {};
    std::vector<Edge> rev;
    int t = to;
    while (true) {
        int x = task_pred[t];
        rev.push_back({x, t});
        if (x == from) break;
        t = agent_pred[x];
        rev.push_back({x, t});
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

}  // namespace

MergeReport check_merge_conditions(const Partition& p, bool verify) {
    p.validate();
    if (p.tasks_1.empty() || p.tasks_2.empty())
        throw std::invalid_argument("both blocks must be non-empty");
    const auto& g = p.graph_full;

    // orient so block "1" carries the heavier bottleneck
    bool swapped = g.weight(p.e1) < g.weight(p.e2);
    const auto& agents_1 = swapped ? p.agents_2 : p.agents_1;
    const auto& tasks_1 = swapped ? p.tasks_2 : p.tasks_1;
    const auto& agents_2 = swapped ? p.agents_1 : p.agents_2;
    const auto& tasks_2 = swapped ? p.tasks_1 : p.tasks_2;
    const auto& m1 = swapped ? p.m2 : p.m1;
    const auto& m2 = swapped ? p.m1 : p.m2;
    const Edge e1 = swapped ? p.e2 : p.e1;
    const double w1 = g.weight(e1);
    const double w2 = g.weight(swapped ? p.e1 : p.e2);

    WeightedBipartiteGraph sub1 = sub_instance(g, agents_1, tasks_1);
    std::vector<int> agent_local(g.m, -1), task_local(g.n, -1);
    for (size_t k = 0; k < agents_1.size(); ++k) agent_local[agents_1[k]] = static_cast<int>(k);
    for (size_t k = 0; k < tasks_1.size(); ++k) task_local[tasks_1[k]] = static_cast<int>(k);
    Matching m1_local = Matching::none(sub1.m);
    for (int a = 0; a < g.m; ++a)
        if (m1.matched_task[a] >= 0 && agent_local[a] >= 0)
            m1_local.matched_task[agent_local[a]] = task_local[m1.matched_task[a]];
    Edge e1_local{agent_local[e1.agent], task_local[e1.task]};

    if (verify) {
        WeightedBipartiteGraph sub2 = sub_instance(g, agents_2, tasks_2);
        Matching m2_local = Matching::none(sub2.m);
        std::vector<int> al2(g.m, -1), tl2(g.n, -1);
        for (size_t k = 0; k < agents_2.size(); ++k) al2[agents_2[k]] = static_cast<int>(k);
        for (size_t k = 0; k < tasks_2.size(); ++k) tl2[tasks_2[k]] = static_cast<int>(k);
        for (int a = 0; a < g.m; ++a)
            if (m2.matched_task[a] >= 0 && al2[a] >= 0)
                m2_local.matched_task[al2[a]] = tl2[m2.matched_task[a]];
        Edge e2g = swapped ? p.e1 : p.e2;
        Edge e2_local{al2[e2g.agent], tl2[e2g.task]};
        if (!is_critical_bottleneck_edge(sub1, m1_local, e1_local))
            throw std::invalid_argument("block 1 bottleneck edge is not critical");
        if (!is_critical_bottleneck_edge(sub2, m2_local, e2_local))
            throw std::invalid_argument("block 2 bottleneck edge is not critical");
        if (!is_bottleneck_cluster(sub1, m1_local, e1_local))
            throw std::invalid_argument("block 1 is not a bottleneck cluster");
        if (!is_bottleneck_cluster(sub2, m2_local, e2_local))
            throw std::invalid_argument("block 2 is not a bottleneck cluster");
    }

    MergeReport report;
    report.bound = std::max(w1, w2);
    int heaviest_ties = 0;
    for (const Edge& e : m1.edges())
        if (g.weight(e) == w1) ++heaviest_ties;
    report.degenerate = (w1 == w2) || heaviest_ties > 1;

    // vertex sets of the heavier block's two trees, by alternating reach
    PrunedEdgeSet phi1 = pruned_edge_set(sub1, m1_local);
    ReachSets nu = alternating_reach(sub1, phi1.edges, m1_local,
                                     Vertex::task(e1_local.task), e1_local);
    ReachSets mu = alternating_reach(sub1, phi1.edges, m1_local,
                                     Vertex::agent(e1_local.agent), e1_local);
    std::vector<int> nu_tasks, mu_agents;
    for (size_t k = 0; k < tasks_1.size(); ++k)
        if (nu.tasks[k] || static_cast<int>(k) == e1_local.task) nu_tasks.push_back(tasks_1[k]);
    for (size_t k = 0; k < agents_1.size(); ++k)
        if (mu.agents[k] || static_cast<int>(k) == e1_local.agent) mu_agents.push_back(agents_1[k]);

    std::vector<int> cross_agents, cross_tasks;  // condition witnesses, block 2 side
    for (int i : agents_2)
        for (int b : nu_tasks)
            if (g.present.contains(i, b) && g.weight(i, b) < w1) {
                if (!report.cond_i) report.witness_i = Edge{i, b};
                report.cond_i = true;
                if (cross_agents.empty() || cross_agents.back() != i) cross_agents.push_back(i);
                break;
            }
    for (int a : mu_agents)
        for (int j : tasks_2)
            if (g.present.contains(a, j) && g.weight(a, j) < w1) {
                if (!report.cond_ii) report.witness_ii = Edge{a, j};
                report.cond_ii = true;
            }
    for (int j : tasks_2)
        for (int a : mu_agents)
            if (g.present.contains(a, j) && g.weight(a, j) < w1) {
                cross_tasks.push_back(j);
                break;
            }

    if (report.cond_i && report.cond_ii) {
        std::vector<char> in_agent(g.m, 0), in_task(g.n, 0);
        for (int a : agents_2) in_agent[a] = 1;
        for (int t : tasks_2) in_task[t] = 1;
        for (int i : cross_agents) {
            for (int j : cross_tasks) {
                auto path = matched_capped_path(g, m2, in_agent, in_task, i, j, w1);
                if (!path.empty()) {
                    report.cond_iii = true;
                    report.witness_path = path;
                    break;
                }
            }
            if (report.cond_iii) break;
        }
    }
    report.decision = (report.cond_i && report.cond_ii && report.cond_iii)
                          ? MergeReport::Decision::warm_start_required
                          : MergeReport::Decision::reuse_union;
    return report;
}

MergeResult merge_or_warmstart(const Partition& p, Strategy strategy, bool verify) {
    if (p.tasks_2.empty() && p.agents_2.empty()) {
        MergeReport r;
        r.bound = p.graph_full.weight(p.e1);
        return {p.m1, r, std::nullopt};
    }
    if (p.tasks_1.empty() && p.agents_1.empty()) {
        MergeReport r;
        r.bound = p.graph_full.weight(p.e2);
        return {p.m2, r, std::nullopt};
    }
    MergeReport report = check_merge_conditions(p, verify);
    Matching start = warm_start_from({p.m1, p.m2});
    if (report.decision == MergeReport::Decision::reuse_union)
        return {start, report, std::nullopt};
    auto [solved, trace] = prune_bap(p.graph_full, start, strategy);
    return {solved, report, trace};
}

std::string merge_report_json(const MergeReport& report) {
    nlohmann::json j;
    j["bound"] = report.bound;
    j["cond_i"] = report.cond_i;
    j["cond_ii"] = report.cond_ii;
    j["cond_iii"] = report.cond_iii;
    j["degenerate"] = report.degenerate;
    j["decision"] = report.decision == MergeReport::Decision::reuse_union
                        ? "reuse_union"
                        : "warm_start_required";
    if (report.witness_i) j["witness_i"] = {report.witness_i->agent, report.witness_i->task};
    if (report.witness_ii) j["witness_ii"] = {report.witness_ii->agent, report.witness_ii->task};
    if (!report.witness_path.empty()) {
        auto arr = nlohmann::json::array();
        for (const Edge& e : report.witness_path) arr.push_back({e.agent, e.task});
        j["witness_path"] = arr;
    }
    return j.dump(2);
}

}  // namespace bap
