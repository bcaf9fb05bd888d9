#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <dagbound/gen.hpp>
#include <dagbound/rng.hpp>
#include <dagbound/task.hpp>

// Independent brute-force oracles used by tests. None of these share code
// with the implementations they check.
namespace oracles {

using dagbound::DagTask;
using dagbound::GeneralizedPath;
using dagbound::GeneralizedPathList;
using dagbound::Reachability;

// all source-to-sink edge paths by DFS
inline std::vector<GeneralizedPath> enumerate_complete_paths(const DagTask& t) {
    std::vector<GeneralizedPath> paths;
    GeneralizedPath current{t.source};
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == t.sink) {
            paths.push_back(current);
            return;
        }
        for (int w : t.succ[v]) {
            current.push_back(w);
            self(self, w);
            current.pop_back();
        }
    };
    dfs(dfs, t.source);
    return paths;
}

inline std::int64_t brute_longest_path(const DagTask& t) {
    std::int64_t best = 0;
    for (const auto& p : enumerate_complete_paths(t))
        best = std::max(best, dagbound::path_length(t, p));
    return best;
}

// reachability of a single pair by DFS over edges
inline bool dfs_reaches(const DagTask& t, int from, int to) {
    if (from == to) return false;
    std::vector<char> seen(t.vertex_count(), 0);
    auto dfs = [&](auto&& self, int v) -> bool {
        if (v == to) return true;
        if (seen[v]) return false;
        seen[v] = 1;
        for (int w : t.succ[v])
            if (self(self, w)) return true;
        return false;
    };
    return dfs(dfs, from);
}

// maximum antichain by subset enumeration; |V| <= 20 or so
inline int brute_max_antichain(const DagTask& t, const Reachability& reach) {
    const int n = t.vertex_count();
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if ((mask >> u & 1) && (mask >> v & 1) && reach.comparable(u, v)) ok = false;
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// random normalized task, small enough for the exhaustive oracles
inline DagTask random_small_task(dagbound::SplitMix64& rng, int max_vertices = 10,
                                 std::int64_t max_wcet = 20) {
    dagbound::GenConfig config;
    config.min_vertices = 2;
    config.max_vertices = max_vertices;
    config.min_wcet = 0;
    config.max_wcet = max_wcet;
    config.parallelism_factor = 0.05 + rng.next_real() * 0.75;
    return dagbound::erdos_renyi(config, rng.next_u64());
}

// random valid generalized path list with at most max_paths chains
inline GeneralizedPathList random_path_list(const DagTask& t, const Reachability& reach,
                                            dagbound::SplitMix64& rng, int max_paths) {
    const int n = t.vertex_count();
    std::vector<char> used(n, 0);
    GeneralizedPathList list;
    const int want = 1 + static_cast<int>(rng.next_below(max_paths));
    for (int i = 0; i < want; ++i) {
        // start from a random unused vertex and extend with random unused
        // descendants
        std::vector<int> free;
        for (int v = 0; v < n; ++v)
            if (!used[v]) free.push_back(v);
        if (free.empty()) break;
        int v = free[rng.next_below(free.size())];
        GeneralizedPath path{v};
        used[v] = 1;
        while (true) {
            std::vector<int> next;
            for (int w = 0; w < n; ++w)
                if (!used[w] && reach.is_ancestor(v, w)) next.push_back(w);
            if (next.empty() || rng.next_below(3) == 0) break;
            v = next[rng.next_below(next.size())];
            path.push_back(v);
            used[v] = 1;
        }
        list.push_back(std::move(path));
    }
    return list;
}

}  // namespace oracles
