#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"
#include "task.hpp"

namespace dagbound {

struct GenConfig {
    // Erdos-Renyi mode
    int min_vertices = 150;
    int max_vertices = 250;
    double parallelism_factor = 0.2;  // edge probability; larger = more sequential
    std::int64_t min_wcet = 5;
    std::int64_t max_wcet = 100;
    // layer-by-layer mode
    int min_layers = 5;
    int max_layers = 15;
    int min_layer_width = 1;
    int max_layer_width = 10;
    double layer_edge_prob = 0.5;

    void validate() const {
        if (min_vertices < 1 || max_vertices < min_vertices)
            throw MalformedInputError("gen config: bad vertex range");
        if (parallelism_factor < 0.0 || parallelism_factor > 1.0)
            throw MalformedInputError("gen config: parallelism factor outside [0,1]");
        if (min_wcet < 0 || max_wcet < min_wcet)
            throw MalformedInputError("gen config: bad WCET range");
        if (min_layers < 1 || max_layers < min_layers)
            throw MalformedInputError("gen config: bad layer range");
        if (min_layer_width < 1 || max_layer_width < min_layer_width)
            throw MalformedInputError("gen config: bad layer width range");
        if (layer_edge_prob < 0.0 || layer_edge_prob > 1.0)
            throw MalformedInputError("gen config: layer edge probability outside [0,1]");
    }
};

// Erdos-Renyi generation: draw |V|, then add each edge (i, j) with i < j
// when a uniform draw in [0,1) falls below the parallelism factor. WCETs
// uniform over the configured range. Normalized to one source and one sink.
inline DagTask erdos_renyi(const GenConfig& config, std::uint64_t seed) {
    config.validate();
    SplitMix64 rng(seed);
    const int n = static_cast<int>(rng.next_in(config.min_vertices, config.max_vertices));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_real() < config.parallelism_factor) edges.emplace_back(i, j);
    std::vector<std::int64_t> wcets(n);
    for (int v = 0; v < n; ++v) wcets[v] = rng.next_in(config.min_wcet, config.max_wcet);
    return validate_and_normalize("er-" + std::to_string(seed), std::move(wcets),
                                  std::move(edges));
}

// Layer-by-layer generation: draw a layer count, populate each layer, then
// add each edge between adjacent layers with the configured probability.
inline DagTask layer_by_layer(const GenConfig& config, std::uint64_t seed) {
    config.validate();
    SplitMix64 rng(seed);
    const int layers = static_cast<int>(rng.next_in(config.min_layers, config.max_layers));
    std::vector<std::vector<int>> layer(layers);
    int n = 0;
    for (int l = 0; l < layers; ++l) {
        const int count =
            static_cast<int>(rng.next_in(config.min_layer_width, config.max_layer_width));
        for (int i = 0; i < count; ++i) layer[l].push_back(n++);
    }
    std::vector<std::pair<int, int>> edges;
    for (int l = 0; l + 1 < layers; ++l)
        for (int u : layer[l])
            for (int v : layer[l + 1])
                if (rng.next_real() < config.layer_edge_prob) edges.emplace_back(u, v);
    std::vector<std::int64_t> wcets(n);
    for (int v = 0; v < n; ++v) wcets[v] = rng.next_in(config.min_wcet, config.max_wcet);
    return validate_and_normalize("ly-" + std::to_string(seed), std::move(wcets),
                                  std::move(edges));
}

// Period T = len(G) + df * (vol(G) - len(G)), rounded up to an integer time
// unit; df in [0,1] places T between the longest path and the volume.
inline std::int64_t assign_period(const DagTask& t, const Rational& df) {
    if (df < Rational(0) || df > Rational(1))
        throw MalformedInputError("df must lie in [0,1]");
    const std::int64_t len = longest_path_length(t);
    const std::int64_t vol = volume(t);
    return (Rational(len) + df * Rational(vol - len)).ceil();
}

struct TaskSetMember {
    DagTask task;
    Rational period;  // deadline == period
};

struct TaskSet {
    std::vector<TaskSetMember> members;
    int cores = 0;

    Rational utilization() const {
        Rational u(0);
        for (const auto& m : members) u = u + Rational(volume(m.task)) / m.period;
        return u;
    }
};

// Builds a task set of total utilization exactly nu * m: tasks are generated
// and added while the running utilization is below the target; the task that
// crosses the target gets its period enlarged so the sum is exact. Periods
// stay >= len(G); task randomness is a fixed per-index block so prefixes are
// identical across different targets for the same seed.
inline TaskSet build_taskset(int m, const Rational& nu, const GenConfig& config,
                             const Rational& df_lo, const Rational& df_hi,
                             std::uint64_t seed) {
    if (m < 1) throw MalformedInputError("task set: core count must be >= 1");
    if (!(nu > Rational(0)) || nu > Rational(1))
        throw MalformedInputError("task set: nu must lie in (0,1]");
    if (df_lo < Rational(0) || df_hi > Rational(1) || df_hi < df_lo)
        throw MalformedInputError("task set: bad df range");

    const Rational target = nu * Rational(m);
    TaskSet set;
    set.cores = m;
    Rational total(0);
    for (std::uint64_t index = 0; total < target; ++index) {
        SplitMix64 rng(derive_seed(seed, index));
        const DagTask task = erdos_renyi(config, rng.next_u64());
        if (volume(task) == 0)
            throw MalformedInputError("task set: generated task has zero workload");
        // df uniform over the range in millionths (kept exact)
        const Rational f(static_cast<std::int64_t>(rng.next_below(1000001)), 1000000);
        const Rational df = df_lo + f * (df_hi - df_lo);
        const std::int64_t len = longest_path_length(task);
        Rational period(assign_period(task, df));
        Rational u = Rational(volume(task)) / period;
        if (total + u >= target) {
            // stretch the final period so the sum lands exactly on target
            const Rational needed = target - total;
            const Rational stretched = Rational(volume(task)) / needed;
            if (stretched < Rational(len)) continue;  // regenerate the final task
            period = stretched;
            u = needed;
        }
        total = total + u;
        set.members.push_back({task, period});
    }
    internal_check(total == target, "task set utilization must equal nu*m exactly");
    return set;
}

}  // namespace dagbound
