#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "task.hpp"

namespace dagbound {

struct FlowArc {
    int from;
    int to;
    int capacity;
    std::int64_t cost;
};

struct FlowNetwork {
    int node_count = 0;
    std::vector<FlowArc> arcs;
    int source = -1;
    int sink = -1;
};

// Vertex split bookkeeping for networks built by build_reduction_network.
struct ReductionMap {
    int dag_vertex_count = 0;
    std::vector<int> in_node;   // per DAG vertex
    std::vector<int> out_node;  // per DAG vertex
    std::vector<int> split_arc; // index of the in->out arc, -1 if vertex inactive
};

struct FlowSolution {
    std::vector<int> flow;  // per arc, parallel to FlowNetwork::arcs
    int amount = 0;
    std::int64_t cost = 0;
};

struct AmountInfeasibleError : std::runtime_error {
    int amount;
    explicit AmountInfeasibleError(int k)
        : std::runtime_error("no flow of amount " + std::to_string(k) + " exists"), amount(k) {}
};
struct NotIntegralError : std::runtime_error {
    NotIntegralError() : std::runtime_error("flow solution is not a valid integral flow") {}
};
struct NotReductionNetworkError : std::runtime_error {
    NotReductionNetworkError() : std::runtime_error("network was not built by the reduction") {}
};
struct TooLargeError : std::runtime_error {
    explicit TooLargeError(int n)
        : std::runtime_error("brute force limited to 12 vertices, got " + std::to_string(n)) {}
};

// Reduction from max-volume disjoint chain packing to minimum-cost flow,
// restricted to an active vertex subset:
//   1. an arc u_out -> v_in for every active ancestor pair (u, v), cost 0
//   2. each active vertex split by an arc v_in -> v_out with cost -c(v)
//   3. a new source with arcs to every v_in, a new sink from every v_out
//   4. every capacity is 1
// A flow of amount n then selects n disjoint chains, and -cost is their
// total workload.
inline std::pair<FlowNetwork, ReductionMap> build_reduction_network(const DagTask& t,
                                                                    const Reachability& reach,
                                                                    const VertexSet& active) {
    const int n = t.vertex_count();
    FlowNetwork net;
    ReductionMap map;
    map.dag_vertex_count = n;
    map.in_node.assign(n, -1);
    map.out_node.assign(n, -1);
    map.split_arc.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        map.in_node[v] = 2 * v;
        map.out_node[v] = 2 * v + 1;
    }
    net.node_count = 2 * n + 2;
    net.source = 2 * n;
    net.sink = 2 * n + 1;
    for (int u = 0; u < n; ++u) {
        if (!active.contains(u)) continue;
        for (int v = 0; v < n; ++v)
            if (active.contains(v) && reach.is_ancestor(u, v))
                net.arcs.push_back({map.out_node[u], map.in_node[v], 1, 0});
    }
    for (int v = 0; v < n; ++v) {
        if (!active.contains(v)) continue;
        map.split_arc[v] = static_cast<int>(net.arcs.size());
        net.arcs.push_back({map.in_node[v], map.out_node[v], 1, -t.wcet[v]});
    }
    for (int v = 0; v < n; ++v)
        if (active.contains(v)) net.arcs.push_back({net.source, map.in_node[v], 1, 0});
    for (int v = 0; v < n; ++v)
        if (active.contains(v)) net.arcs.push_back({map.out_node[v], net.sink, 1, 0});
    return {std::move(net), std::move(map)};
}

inline std::pair<FlowNetwork, ReductionMap> build_reduction_network(const DagTask& t,
                                                                    const Reachability& reach) {
    return build_reduction_network(t, reach, VertexSet::all(t.vertex_count()));
}

// Successive shortest paths with node potentials. The input network must be
// acyclic; initial potentials come from one shortest-path pass in topological
// order, so every later augmentation is a Dijkstra over non-negative reduced
// costs. Each augment() pushes one unit (all capacities here are 1), and
// after k augmentations the flow is a minimum-cost flow of amount k.
class MinCostFlow {
public:
    explicit MinCostFlow(const FlowNetwork& net) : net_(net) {
        const int n = net.node_count;
        head_.assign(n, -1);
        const int m = static_cast<int>(net.arcs.size());
        to_.reserve(2 * m);
        cap_.reserve(2 * m);
        arc_cost_.reserve(2 * m);
        next_.reserve(2 * m);
        for (const FlowArc& a : net.arcs) {
            add_half(a.from, a.to, a.capacity, a.cost);
            add_half(a.to, a.from, 0, -a.cost);
        }
        init_potentials();
    }

    int amount() const { return amount_; }
    std::int64_t cost() const { return total_cost_; }

    // One unit of augmentation; false when the sink is unreachable.
    bool augment() {
        constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
        const int n = net_.node_count;
        std::vector<std::int64_t> dist(n, kInf);
        std::vector<int> via(n, -1);
        using Item = std::pair<std::int64_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[net_.source] = 0;
        pq.push({0, net_.source});
        while (!pq.empty()) {
            const auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (int e = head_[u]; e != -1; e = next_[e]) {
                if (cap_[e] <= 0) continue;
                const std::int64_t rc = arc_cost_[e] + pot_[u] - pot_[to_[e]];
                internal_check(rc >= 0, "min-cost flow: negative reduced cost");
                if (dist[u] + rc < dist[to_[e]]) {
                    dist[to_[e]] = dist[u] + rc;
                    via[to_[e]] = e;
                    pq.push({dist[to_[e]], to_[e]});
                }
            }
        }
        if (dist[net_.sink] == kInf) return false;
        for (int v = 0; v < n; ++v)
            if (dist[v] != kInf) pot_[v] += dist[v];
        for (int v = net_.sink; v != net_.source;) {
            const int e = via[v];
            cap_[e] -= 1;
            cap_[e ^ 1] += 1;
            total_cost_ += arc_cost_[e];
            v = to_[e ^ 1];
        }
        ++amount_;
        return true;
    }

    FlowSolution solution() const {
        FlowSolution sol;
        sol.amount = amount_;
        sol.cost = total_cost_;
        sol.flow.resize(net_.arcs.size());
        for (std::size_t i = 0; i < net_.arcs.size(); ++i)
            sol.flow[i] = net_.arcs[i].capacity - cap_[2 * i];
        return sol;
    }

private:
    void add_half(int from, int to, int cap, std::int64_t cost) {
        to_.push_back(to);
        cap_.push_back(cap);
        arc_cost_.push_back(cost);
        next_.push_back(head_[from]);
        head_[from] = static_cast<int>(to_.size()) - 1;
    }

    // Single-pass shortest distances over a topological order of the (acyclic)
    // network; nodes unreachable from the source keep potential 0 and are
    // never touched afterwards.
    void init_potentials() {
        const int n = net_.node_count;
        std::vector<int> indeg(n, 0);
        for (const FlowArc& a : net_.arcs) ++indeg[a.to];
        std::vector<int> order;
        order.reserve(n);
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) order.push_back(v);
        std::vector<std::vector<std::pair<int, std::int64_t>>> fwd(n);
        for (const FlowArc& a : net_.arcs) fwd[a.from].push_back({a.to, a.cost});
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (const auto& [w, c] : fwd[order[i]])
                if (--indeg[w] == 0) order.push_back(w);
        }
        internal_check(static_cast<int>(order.size()) == n,
                       "min-cost flow: network must be acyclic");
        constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
        std::vector<std::int64_t> dist(n, kInf);
        dist[net_.source] = 0;
        for (int u : order) {
            if (dist[u] == kInf) continue;
            for (const auto& [w, c] : fwd[u]) dist[w] = std::min(dist[w], dist[u] + c);
        }
        pot_.assign(n, 0);
        for (int v = 0; v < n; ++v)
            if (dist[v] != kInf) pot_[v] = dist[v];
    }

    FlowNetwork net_;
    std::vector<int> head_, to_, cap_, next_;
    std::vector<std::int64_t> arc_cost_;
    std::vector<std::int64_t> pot_;
    int amount_ = 0;
    std::int64_t total_cost_ = 0;
};

struct ProfilePoint {
    int amount;
    std::int64_t cost;
};

// Minimum cost over flows of amount exactly k, for k = 1..n_max, computed
// incrementally (one augmentation per unit).
inline std::vector<ProfilePoint> min_cost_profile(const FlowNetwork& net, int n_max) {
    if (n_max < 1) throw std::invalid_argument("min_cost_profile: n_max must be >= 1");
    MinCostFlow solver(net);
    std::vector<ProfilePoint> profile;
    profile.reserve(n_max);
    for (int k = 1; k <= n_max; ++k) {
        if (!solver.augment()) throw AmountInfeasibleError(k);
        profile.push_back({k, solver.cost()});
    }
    return profile;
}

namespace detail {

inline void validate_flow(const FlowNetwork& net, const FlowSolution& sol) {
    if (sol.flow.size() != net.arcs.size()) throw NotIntegralError();
    std::vector<std::int64_t> balance(net.node_count, 0);
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const int f = sol.flow[i];
        if (f < 0 || f > net.arcs[i].capacity) throw NotIntegralError();
        balance[net.arcs[i].from] += f;
        balance[net.arcs[i].to] -= f;
        cost += f * net.arcs[i].cost;
    }
    for (int v = 0; v < net.node_count; ++v)
        if (v != net.source && v != net.sink && balance[v] != 0) throw NotIntegralError();
    if (balance[net.source] != sol.amount || cost != sol.cost) throw NotIntegralError();
}

}  // namespace detail

// Walks each unit of flow from the source and records every vertex whose
// split arc carries flow, yielding one generalized path per unit. Paths are
// ordered by their first vertex identifier; the total length of the result
// equals -cost.
inline GeneralizedPathList extract_path_list(const FlowNetwork& net, const ReductionMap& map,
                                             const FlowSolution& sol) {
    detail::validate_flow(net, sol);
    const int n = map.dag_vertex_count;
    if (net.node_count != 2 * n + 2) throw NotReductionNetworkError();

    // flow-carrying arc out of each node (unique: all capacities are 1 and
    // every in-node has a single outgoing arc)
    std::vector<int> out_arc(net.node_count, -1);
    std::vector<int> first_vertices;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        if (sol.flow[i] == 0) continue;
        const FlowArc& a = net.arcs[i];
        if (a.from == net.source) {
            if (a.to < 0 || a.to >= 2 * n || a.to % 2 != 0) throw NotReductionNetworkError();
            first_vertices.push_back(a.to / 2);
        } else {
            if (out_arc[a.from] != -1) throw NotReductionNetworkError();
            out_arc[a.from] = static_cast<int>(i);
        }
    }
    std::sort(first_vertices.begin(), first_vertices.end());

    GeneralizedPathList list;
    for (int start : first_vertices) {
        GeneralizedPath path;
        int node = map.in_node[start];
        while (node != net.sink) {
            const int e = out_arc[node];
            if (e == -1) throw NotReductionNetworkError();
            const FlowArc& a = net.arcs[e];
            if (node % 2 == 0) {
                // in-node: the only outgoing arc is the split arc
                if (a.to != node + 1) throw NotReductionNetworkError();
                path.push_back(node / 2);
            }
            node = a.to;
        }
        list.push_back(std::move(path));
    }
    if (static_cast<int>(list.size()) != sol.amount) throw NotReductionNetworkError();
    return list;
}

// The reverse construction: routes one unit of flow along each generalized
// path of the list. Inverse of extract_path_list up to path order.
inline FlowSolution flow_from_path_list(const FlowNetwork& net, const ReductionMap& map,
                                        const GeneralizedPathList& list) {
    const int n = map.dag_vertex_count;
    if (net.node_count != 2 * n + 2) throw NotReductionNetworkError();
    // arc lookup by endpoints
    std::vector<std::vector<std::pair<int, int>>> by_from(net.node_count);
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        by_from[net.arcs[i].from].push_back({net.arcs[i].to, static_cast<int>(i)});
    auto arc_index = [&](int from, int to) {
        for (const auto& [t, i] : by_from[from])
            if (t == to) return i;
        throw NotReductionNetworkError();
    };

    FlowSolution sol;
    sol.flow.assign(net.arcs.size(), 0);
    sol.amount = static_cast<int>(list.size());
    for (const GeneralizedPath& path : list) {
        if (path.empty()) throw NotReductionNetworkError();
        sol.flow[arc_index(net.source, map.in_node[path[0]])] = 1;
        for (std::size_t j = 0; j < path.size(); ++j) {
            sol.flow[arc_index(map.in_node[path[j]], map.out_node[path[j]])] = 1;
            if (j + 1 < path.size())
                sol.flow[arc_index(map.out_node[path[j]], map.in_node[path[j + 1]])] = 1;
        }
        sol.flow[arc_index(map.out_node[path.back()], net.sink)] = 1;
    }
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        sol.cost += sol.flow[i] * net.arcs[i].cost;
    detail::validate_flow(net, sol);
    return sol;
}

struct BruteForceResult {
    std::int64_t volume = 0;
    GeneralizedPathList list;
};

// Exhaustive oracle for the packing problem: assigns each vertex (in
// topological order) to one of n chain slots or to none, keeping each slot a
// chain. Exponential; guarded to 12 vertices.
inline BruteForceResult brute_force_max_volume(const DagTask& t, const Reachability& reach,
                                               int n) {
    const int vcount = t.vertex_count();
    if (vcount > 12) throw TooLargeError(vcount);
    if (n < 1) throw std::invalid_argument("brute_force_max_volume: n must be >= 1");

    const std::vector<int> order = topological_order(t);
    std::vector<std::int64_t> suffix(vcount + 1, 0);
    for (int i = vcount - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + t.wcet[order[i]];

    std::vector<int> slot_last(n, -1);  // last vertex placed in each slot
    std::vector<int> assign(vcount, -1);
    std::int64_t best = -1;
    std::vector<int> best_assign;

    auto rec = [&](auto&& self, int idx, std::int64_t got) -> void {
        if (got + suffix[idx] <= best) return;  // cannot beat the incumbent
        if (idx == vcount) {
            best = got;
            best_assign = assign;
            return;
        }
        const int v = order[idx];
        for (int s = 0; s < n; ++s) {
            // vertices arrive in topological order, so appending keeps the
            // slot a chain iff the new vertex descends from the slot's last
            if (slot_last[s] != -1 && !reach.is_ancestor(slot_last[s], v)) continue;
            const int saved = slot_last[s];
            slot_last[s] = v;
            assign[idx] = s;
            self(self, idx + 1, got + t.wcet[v]);
            slot_last[s] = saved;
            assign[idx] = -1;
            if (saved == -1) break;  // empty slots are interchangeable
        }
        self(self, idx + 1, got);
    };
    rec(rec, 0, 0);

    BruteForceResult result;
    result.volume = best;
    GeneralizedPathList slots(n);
    for (int idx = 0; idx < vcount; ++idx)
        if (best_assign[idx] != -1) slots[best_assign[idx]].push_back(order[idx]);
    for (auto& p : slots)
        if (!p.empty()) result.list.push_back(std::move(p));
    std::sort(result.list.begin(), result.list.end(),
              [](const GeneralizedPath& a, const GeneralizedPath& b) { return a[0] < b[0]; });
    return result;
}

}  // namespace dagbound
