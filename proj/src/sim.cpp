#include "bap/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>

#include "bap/oracles.hpp"

namespace bap {

namespace {

int bfs_eccentricity(const std::vector<std::vector<int>>& adj, int source) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    int ecc = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                ecc = std::max(ecc, dist[w]);
                q.push(w);
            }
        }
    }
    for (int d : dist)
        if (d < 0) throw std::invalid_argument("communication graph must be connected");
    return ecc;
}

CommGraph finish(int m, std::vector<std::vector<int>> adj) {
    if (m < 1) throw std::invalid_argument("communication graph needs at least one agent");
    CommGraph c;
    c.agent_count = m;
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    c.adj = std::move(adj);
    c.diameter = 0;
    for (int v = 0; v < m; ++v) c.diameter = std::max(c.diameter, bfs_eccentricity(c.adj, v));
    return c;
}

}  // namespace

CommGraph CommGraph::complete(int m) {
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) adj[i].push_back(j);
    return finish(m, std::move(adj));
}

CommGraph CommGraph::path(int m) {
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i + 1 < m; ++i) {
        adj[i].push_back(i + 1);
        adj[i + 1].push_back(i);
    }
    return finish(m, std::move(adj));
}

CommGraph CommGraph::ring(int m) {
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m && m > 1; ++i) {
        int j = (i + 1) % m;
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return finish(m, std::move(adj));
}

CommGraph CommGraph::from_links(int m, const std::vector<std::pair<int, int>>& links) {
    std::vector<std::vector<int>> adj(m);
    for (auto [i, j] : links) {
        if (i < 0 || i >= m || j < 0 || j >= m || i == j)
            throw std::invalid_argument("bad communication link");
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return finish(m, std::move(adj));
}

namespace {

// better(a, b): should a replace b?
using Better = bool (*)(const ConsensusValue&, const ConsensusValue&);

bool better_max(const ConsensusValue& a, const ConsensusValue& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.edge < b.edge;
}

bool better_min(const ConsensusValue& a, const ConsensusValue& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.edge < b.edge;
}

// Synchronous flooding of a single extremum for exactly `ticks` ticks.
// Every agent holding a value sends it to all neighbours each tick.
std::vector<std::optional<ConsensusValue>> flood_extremum(
    const CommGraph& comm, std::vector<std::optional<ConsensusValue>> knowledge, int ticks,
    Better better, ConsensusTrace* trace, long long* messages) {
    if (trace) trace->after_tick.push_back(knowledge);
    for (int tick = 0; tick < ticks; ++tick) {
        std::vector<std::optional<ConsensusValue>> next = knowledge;
        for (int i = 0; i < comm.agent_count; ++i) {
            if (!knowledge[i]) continue;
            for (int j : comm.adj[i]) {
                if (messages) ++*messages;
                if (!next[j] || better(*knowledge[i], *next[j])) next[j] = knowledge[i];
            }
        }
        knowledge = std::move(next);
        if (trace) trace->after_tick.push_back(knowledge);
    }
    return knowledge;
}

std::pair<Edge, double> consensus(const CommGraph& comm,
                                  const std::vector<std::optional<ConsensusValue>>& proposals,
                                  Better better, ConsensusTrace* trace, long long* messages) {
    if (static_cast<int>(proposals.size()) != comm.agent_count)
        throw std::invalid_argument("one proposal slot per agent required");
    auto knowledge = flood_extremum(comm, proposals, comm.diameter, better, trace, messages);
    std::optional<ConsensusValue> agreed;
    for (const auto& k : knowledge) {
        if (!k) continue;
        if (!agreed || better(*k, *agreed)) agreed = k;
    }
    if (!agreed) throw std::invalid_argument("no agent proposed a value");
    return {agreed->edge, agreed->weight};
}

}  // namespace

std::pair<Edge, double> max_consensus(const CommGraph& comm,
                                      const std::vector<std::optional<ConsensusValue>>& proposals,
                                      ConsensusTrace* trace, long long* messages) {
    return consensus(comm, proposals, better_max, trace, messages);
}

std::pair<Edge, double> min_consensus(const CommGraph& comm,
                                      const std::vector<std::optional<ConsensusValue>>& proposals,
                                      ConsensusTrace* trace, long long* messages) {
    return consensus(comm, proposals, better_min, trace, messages);
}

std::vector<AgentLocalState> make_agent_states(const WeightedBipartiteGraph& g,
                                               const Matching& matching) {
    if (!matching.is_valid_for(g.m, g.n) || !matching.within(g.present))
        throw std::invalid_argument("matching invalid for this graph");
    std::vector<AgentLocalState> states(g.m);
    for (int i = 0; i < g.m; ++i) {
        auto& s = states[i];
        s.id = i;
        s.weights.resize(g.n);
        s.incident.resize(g.n);
        s.pruned.assign(g.n, 0);
        for (int t = 0; t < g.n; ++t) {
            s.weights[t] = g.weight(i, t);
            s.incident[t] = g.present.contains(i, t) ? 1 : 0;
        }
        s.matched_task = matching.matched_task[i];
        s.parent_task = s.matched_task;
    }
    return states;
}

void distributed_prune(std::vector<AgentLocalState>& states, Edge removed, double weight) {
    for (auto& s : states) {
        for (int t = 0; t < static_cast<int>(s.pruned.size()); ++t)
            s.pruned[t] = (s.incident[t] && s.weights[t] < weight) ? 1 : 0;
        if (s.matched_task >= 0) s.pruned[s.matched_task] = s.incident[s.matched_task];
    }
    auto& owner = states[removed.agent];
    owner.pruned[removed.task] = 0;
    owner.matched_task = -1;
    owner.parent_task = -1;
}

void RoundMetrics::merge(const RoundMetrics& other) {
    time_steps += other.time_steps;
    messages_sent += other.messages_sent;
    explored_per_round.insert(explored_per_round.end(), other.explored_per_round.begin(),
                              other.explored_per_round.end());
    max_payload_items = std::max(max_payload_items, other.max_payload_items);
    long long base = rows.empty() ? 0 : rows.back().tick;
    for (RoundRow row : other.rows) {
        row.tick += base;
        rows.push_back(row);
    }
}

namespace {

struct DfsCandidate {
    int agent = -1;
    double weight = 0.0;
    int mate = -1;
};

// Reduce-flood of the preferred candidate; silence after diameter ticks
// means no agent had one.
std::optional<DfsCandidate> flood_candidate(const CommGraph& comm,
                                            std::vector<std::optional<DfsCandidate>> knowledge,
                                            bool greedy, long long* messages) {
    auto prefer = [greedy](const DfsCandidate& a, const DfsCandidate& b) {
        if (greedy && a.weight != b.weight) return a.weight < b.weight;
        return a.agent < b.agent;
    };
    for (int tick = 0; tick < comm.diameter; ++tick) {
        auto next = knowledge;
        for (int i = 0; i < comm.agent_count; ++i) {
            if (!knowledge[i]) continue;
            for (int j : comm.adj[i]) {
                ++*messages;
                if (!next[j] || prefer(*knowledge[i], *next[j])) next[j] = knowledge[i];
            }
        }
        knowledge = std::move(next);
    }
    std::optional<DfsCandidate> best;
    for (const auto& k : knowledge)
        if (k && (!best || prefer(*k, *best))) best = k;
    return best;
}

struct BfsRecord {
    int agent = -1;
    int parent = -1;
    int mate = -1;
    auto operator<=>(const BfsRecord&) const = default;
};

// Gather-flood: agents repeatedly forward everything they have heard this
// round; after diameter ticks everyone holds the full record set.
std::vector<BfsRecord> flood_records(const CommGraph& comm,
                                     std::vector<std::vector<BfsRecord>> knowledge,
                                     long long* messages) {
    for (int tick = 0; tick < comm.diameter; ++tick) {
        auto next = knowledge;
        for (int i = 0; i < comm.agent_count; ++i) {
            if (knowledge[i].empty()) continue;
            for (int j : comm.adj[i]) {
                ++*messages;
                next[j].insert(next[j].end(), knowledge[i].begin(), knowledge[i].end());
            }
        }
        for (auto& set : next) {
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
        }
        knowledge = std::move(next);
    }
    std::vector<BfsRecord> all;
    for (const auto& set : knowledge) all.insert(all.end(), set.begin(), set.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

void require_single_free_task(const std::vector<AgentLocalState>& states, int n, int root) {
    std::vector<char> matched(n, 0);
    for (const auto& s : states)
        if (s.matched_task >= 0) matched[s.matched_task] = 1;
    int free_tasks = 0;
    for (char c : matched) free_tasks += (c == 0);
    if (free_tasks != 1 || root < 0 || root >= n || matched[root])
        throw std::invalid_argument("search requires the root to be the unique free task");
}

SearchOutcome dfs_protocol(std::vector<AgentLocalState>& states, const CommGraph& comm,
                           int root, bool greedy, RoundMetrics& metrics) {
    const int m = comm.agent_count;
    for (auto& s : states) {
        s.explored = false;
        s.parent_task = s.matched_task;
        s.task_stack = {root};
    }
    SearchOutcome out;
    std::vector<std::pair<int, int>> chain;
    bool complete = false;
    while (!complete) {
        ++out.iterations;
        const int t = states[0].task_stack.back();  // identical on every agent
        std::vector<std::optional<DfsCandidate>> proposals(m);
        for (auto& s : states)
            if (!s.explored && s.has_pruned_edge(t))
                proposals[s.id] = DfsCandidate{s.id, s.weights[t], s.matched_task};
        long long msgs = 0;
        auto best = flood_candidate(comm, proposals, greedy, &msgs);
        metrics.time_steps += comm.diameter;
        metrics.messages_sent += msgs;

        int explored_now = 0, payload = 0;
        if (!best && t == root) {
            complete = true;
        } else if (!best) {
            // every agent pops; the matched partner of t withdraws its claim
            for (auto& s : states) {
                s.task_stack.pop_back();
                if (s.matched_task == t) s.parent_task = s.matched_task;
            }
            chain.pop_back();
        } else if (best->mate < 0) {
            states[best->agent].parent_task = t;
            out.explored_agents.push_back(best->agent);
            explored_now = 1;
            payload = 1;
            complete = true;
            out.found = true;
            out.path = [&] {
                std::vector<Edge> p;
                for (const auto& [task, agent] : chain) {
                    p.push_back({agent, task});
                    p.push_back({agent, states[agent].matched_task});
                }
                p.push_back({best->agent, t});
                return p;
            }();
        } else {
            auto& winner = states[best->agent];
            winner.parent_task = t;
            winner.explored = true;
            for (auto& s : states) s.task_stack.push_back(best->mate);
            chain.push_back({t, best->agent});
            out.explored_agents.push_back(best->agent);
            explored_now = 1;
            payload = 1;
        }
        out.explored_per_iteration.push_back(explored_now);
        metrics.explored_per_round.push_back(explored_now);
        metrics.max_payload_items = std::max(metrics.max_payload_items, payload);
        metrics.rows.push_back({metrics.time_steps, msgs, explored_now, payload});
    }
    out.new_matching = Matching::none(m);
    for (const auto& s : states)
        if (s.parent_task >= 0) out.new_matching.matched_task[s.id] = s.parent_task;
    return out;
}

SearchOutcome bfs_protocol(std::vector<AgentLocalState>& states, const CommGraph& comm,
                           int root, RoundMetrics& metrics) {
    const int m = comm.agent_count;
    for (auto& s : states) {
        s.explored = false;
        s.parent_task = -1;
        s.descendant_tasks.clear();
    }
    SearchOutcome out;
    std::vector<int> frontier{root};
    bool complete = false;
    while (!complete) {
        ++out.iterations;
        std::vector<std::vector<BfsRecord>> knowledge(m);
        for (auto& s : states) {
            if (s.explored) continue;
            int best_t = -1;
            for (int t : frontier)
                if (s.has_pruned_edge(t) && (best_t < 0 || t < best_t)) best_t = t;
            if (best_t >= 0) knowledge[s.id] = {BfsRecord{s.id, best_t, s.matched_task}};
        }
        long long msgs = 0;
        std::vector<BfsRecord> wave = flood_records(comm, knowledge, &msgs);
        metrics.time_steps += comm.diameter;
        metrics.messages_sent += msgs;
        const int explored_now = static_cast<int>(wave.size());
        out.explored_per_iteration.push_back(explored_now);
        metrics.explored_per_round.push_back(explored_now);
        metrics.max_payload_items = std::max(metrics.max_payload_items, explored_now);
        metrics.rows.push_back({metrics.time_steps, msgs, explored_now, explored_now});

        for (const auto& rec : wave) {
            auto& s = states[rec.agent];
            s.explored = true;
            s.parent_task = rec.parent;
            if (rec.mate >= 0) s.descendant_tasks.insert(rec.mate);
            out.explored_agents.push_back(rec.agent);
        }
        // subtree bookkeeping: a newly announced child task belongs to every
        // agent whose subtree already contains its parent
        for (const auto& rec : wave)
            if (rec.mate >= 0)
                for (auto& s : states)
                    if (s.explored && s.id != rec.agent && s.descendant_tasks.count(rec.parent))
                        s.descendant_tasks.insert(rec.mate);

        if (wave.empty()) {
            complete = true;
        } else {
            int free_agent = -1, free_parent = -1;
            for (const auto& rec : wave) {
                if (rec.mate >= 0) continue;
                if (free_agent < 0 || std::pair(rec.parent, rec.agent) <
                                          std::pair(free_parent, free_agent)) {
                    free_agent = rec.agent;
                    free_parent = rec.parent;
                }
            }
            if (free_agent >= 0) {
                complete = true;
                out.found = true;
                // assemble the new matching from per-agent records only
                out.new_matching = Matching::none(m);
                for (const auto& s : states) {
                    int task = s.matched_task;
                    if (s.id == free_agent)
                        task = s.parent_task;
                    else if (s.explored && s.descendant_tasks.count(free_parent))
                        task = s.parent_task;
                    if (task >= 0) out.new_matching.matched_task[s.id] = task;
                }
                // path, walked back from the free agent
                std::vector<int> mate_of_task(states[0].weights.size(), -1);
                for (const auto& s : states)
                    if (s.matched_task >= 0) mate_of_task[s.matched_task] = s.id;
                std::vector<Edge> rev;
                int a = free_agent;
                while (true) {
                    rev.push_back({a, states[a].parent_task});
                    if (states[a].parent_task == root) break;
                    a = mate_of_task[states[a].parent_task];
                    rev.push_back({a, states[a].matched_task});
                }
                std::reverse(rev.begin(), rev.end());
                out.path = rev;
            } else {
                std::set<int> next;
                for (const auto& rec : wave) next.insert(rec.mate);
                frontier.assign(next.begin(), next.end());
            }
        }
    }
    if (!out.found) {
        out.new_matching = Matching::none(m);
        for (const auto& s : states)
            if (s.matched_task >= 0) out.new_matching.matched_task[s.id] = s.matched_task;
    }
    return out;
}

SearchOutcome search_protocol(std::vector<AgentLocalState>& states, const CommGraph& comm,
                              int root, Strategy strategy, RoundMetrics& metrics) {
    switch (strategy) {
        case Strategy::dfs_greedy: return dfs_protocol(states, comm, root, true, metrics);
        case Strategy::dfs_index: return dfs_protocol(states, comm, root, false, metrics);
        case Strategy::bfs: return bfs_protocol(states, comm, root, metrics);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::pair<SearchOutcome, RoundMetrics> run_distributed_search(
    const std::vector<AgentLocalState>& states, const CommGraph& comm, int root_task,
    Strategy strategy) {
    if (states.empty() || static_cast<int>(states.size()) != comm.agent_count)
        throw std::invalid_argument("one state per communication node required");
    require_single_free_task(states, static_cast<int>(states[0].weights.size()), root_task);
    std::vector<AgentLocalState> work = states;
    RoundMetrics metrics;
    SearchOutcome outcome = search_protocol(work, comm, root_task, strategy, metrics);
    return {outcome, metrics};
}

DistributedRun run_distributed_prune_bap(const WeightedBipartiteGraph& g, const CommGraph& comm,
                                         const Matching& m0, Strategy strategy) {
    g.validate();
    if (comm.agent_count != g.m)
        throw std::invalid_argument("communication graph must cover every agent");
    if (!m0.is_valid_for(g.m, g.n) || !m0.within(g.present))
        throw std::invalid_argument("initial matching invalid for this graph");
    if (m0.cardinality() != mcm_oracle(g, g.present).cardinality())
        throw std::invalid_argument("initial matching is not maximum cardinality");
    if (m0.cardinality() != g.n)
        throw std::invalid_argument("every task must be matchable");

    std::vector<AgentLocalState> states = make_agent_states(g, m0);
    DistributedRun run;
    while (true) {
        std::vector<std::optional<ConsensusValue>> proposals(g.m);
        for (const auto& s : states)
            if (s.matched_task >= 0)
                proposals[s.id] = ConsensusValue{{s.id, s.matched_task}, s.weights[s.matched_task]};
        long long msgs = 0;
        auto [removed, weight] = max_consensus(comm, proposals, nullptr, &msgs);
        run.metrics.time_steps += comm.diameter;
        run.metrics.messages_sent += msgs;
        run.metrics.max_payload_items = std::max(run.metrics.max_payload_items, 1);
        run.metrics.rows.push_back({run.metrics.time_steps, msgs, 0, 1});

        distributed_prune(states, removed, weight);
        int surviving = 0;
        for (const auto& s : states)
            for (uint8_t b : s.pruned) surviving += b;

        SearchOutcome outcome = search_protocol(states, comm, removed.task, strategy, run.metrics);
        run.trace.records.push_back({static_cast<int>(run.trace.records.size()) + 1, removed,
                                     weight, surviving, outcome.found, outcome.iterations});
        if (outcome.found) {
            for (auto& s : states) s.matched_task = outcome.new_matching.matched_task[s.id];
        } else {
            states[removed.agent].matched_task = removed.task;  // removal is rolled back
            break;
        }
    }
    run.matching = Matching::none(g.m);
    for (const auto& s : states)
        if (s.matched_task >= 0) run.matching.matched_task[s.id] = s.matched_task;
    run.trace.final_matching = run.matching;
    auto [edge, weight] = max_edge_in_matching(g, run.matching);
    run.trace.final_bottleneck_edge = edge;
    run.trace.final_bottleneck_weight = weight;
    return run;
}

std::string round_metrics_csv(const RoundMetrics& metrics) {
    std::string out = "tick,msgs,explored,payload_items\n";
    char line[96];
    for (const auto& r : metrics.rows) {
        std::snprintf(line, sizeof(line), "%lld,%lld,%d,%d\n", r.tick, r.msgs, r.explored,
                      r.payload_items);
        out += line;
    }
    return out;
}

}  // namespace bap
