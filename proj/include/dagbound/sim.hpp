#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"
#include "task.hpp"

namespace dagbound {

// Actual execution time per vertex for one run; a vertex may execute for
// less than its WCET.
struct ExecutionScenario {
    std::vector<std::int64_t> exec;

    static ExecutionScenario full_wcet(const DagTask& t) { return {t.wcet}; }

    static ExecutionScenario uniform_random(const DagTask& t, SplitMix64& rng) {
        ExecutionScenario s;
        s.exec.reserve(t.wcet.size());
        for (std::int64_t c : t.wcet) s.exec.push_back(rng.next_in(0, c));
        return s;
    }

    void validate(const DagTask& t) const {
        if (exec.size() != t.wcet.size())
            throw MalformedInputError("scenario size mismatch");
        for (std::size_t v = 0; v < exec.size(); ++v)
            if (exec[v] < 0 || exec[v] > t.wcet[v])
                throw MalformedInputError("scenario exec time out of [0, wcet] at vertex " +
                                          std::to_string(v));
    }
};

// Order in which eligible vertices are admitted to idle cores. Any choice
// yields a work-conserving schedule; the bounds must hold for all of them.
struct TieBreakPolicy {
    enum class Kind { SmallestId, Fifo, LargestWcetFirst, SeededRandom };
    Kind kind = Kind::SmallestId;
    std::uint64_t seed = 0;

    static TieBreakPolicy smallest_id() { return {Kind::SmallestId}; }
    static TieBreakPolicy fifo() { return {Kind::Fifo}; }
    static TieBreakPolicy largest_wcet_first() { return {Kind::LargestWcetFirst}; }
    static TieBreakPolicy seeded_random(std::uint64_t seed) {
        return {Kind::SeededRandom, seed};
    }

    const char* name() const {
        switch (kind) {
            case Kind::SmallestId: return "smallest-id";
            case Kind::Fifo: return "fifo";
            case Kind::LargestWcetFirst: return "largest-wcet";
            case Kind::SeededRandom: return "seeded-random";
        }
        return "?";
    }
};

struct CoreSlot {
    int vertex;
    std::int64_t start;
    std::int64_t finish;
};

struct ExecutionSequence {
    std::vector<std::int64_t> start;
    std::vector<std::int64_t> finish;
    std::vector<std::vector<CoreSlot>> core_timeline;
    int sink = -1;
};

inline std::int64_t response_time(const ExecutionSequence& seq) { return seq.finish[seq.sink]; }

// Non-preemptive work-conserving list scheduling on m identical cores,
// event driven. A vertex becomes eligible when all its predecessors have
// finished; at each event time eligible vertices fill idle cores in policy
// order. Finishes at an instant are processed before admissions at that
// instant, so zero-length executions cascade correctly.
inline ExecutionSequence simulate(const DagTask& t, int m, const ExecutionScenario& scenario,
                                  const TieBreakPolicy& policy) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    internal_check(t.source >= 0 && t.sink >= 0, "simulate: task not normalized");
    scenario.validate(t);
    const int n = t.vertex_count();

    std::vector<std::uint64_t> rank(n);
    for (int v = 0; v < n; ++v) {
        switch (policy.kind) {
            case TieBreakPolicy::Kind::SmallestId: rank[v] = 0; break;
            case TieBreakPolicy::Kind::Fifo: rank[v] = 0; break;  // queue order below
            case TieBreakPolicy::Kind::LargestWcetFirst:
                rank[v] = static_cast<std::uint64_t>(INT64_MAX - t.wcet[v]);
                break;
            case TieBreakPolicy::Kind::SeededRandom:
                rank[v] = mix_seed(policy.seed ^ mix_seed(static_cast<std::uint64_t>(v) + 1));
                break;
        }
    }

    // ready pool: (admission key, vertex); FIFO uses an arrival counter key
    using Ready = std::pair<std::pair<std::uint64_t, int>, int>;
    std::priority_queue<Ready, std::vector<Ready>, std::greater<Ready>> ready;
    std::uint64_t arrivals = 0;
    auto push_ready = [&](int v) {
        const std::uint64_t key =
            policy.kind == TieBreakPolicy::Kind::Fifo ? arrivals++ : rank[v];
        ready.push({{key, v}, v});
    };

    std::vector<int> missing(n, 0);
    for (int v = 0; v < n; ++v) missing[v] = static_cast<int>(t.pred[v].size());
    push_ready(t.source);

    ExecutionSequence seq;
    seq.start.assign(n, -1);
    seq.finish.assign(n, -1);
    seq.core_timeline.assign(m, {});
    seq.sink = t.sink;

    // finish events: (time, core)
    using Event = std::pair<std::int64_t, int>;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    std::vector<int> running(m, -1);
    std::vector<int> idle;
    for (int c = m - 1; c >= 0; --c) idle.push_back(c);  // pop back = lowest index

    std::int64_t now = 0;
    int done = 0;
    while (done < n) {
        // all finishes at the current instant first
        std::vector<int> finished_batch;
        while (!events.empty() && events.top().first == now) {
            const int core = events.top().second;
            events.pop();
            finished_batch.push_back(running[core]);
            running[core] = -1;
            idle.push_back(core);
            ++done;
        }
        std::sort(idle.rbegin(), idle.rend());
        std::sort(finished_batch.begin(), finished_batch.end());
        for (int v : finished_batch)
            for (int w : t.succ[v])
                if (--missing[w] == 0) push_ready(w);

        while (!idle.empty() && !ready.empty()) {
            const int v = ready.top().second;
            ready.pop();
            const int core = idle.back();
            idle.pop_back();
            running[core] = v;
            seq.start[v] = now;
            seq.finish[v] = now + scenario.exec[v];
            seq.core_timeline[core].push_back({v, seq.start[v], seq.finish[v]});
            events.push({seq.finish[v], core});
        }
        if (done == n) break;
        internal_check(!events.empty(), "simulate: stalled with unfinished vertices");
        now = events.top().first;
    }
    return seq;
}

struct WorkConservingViolation {
    std::int64_t time;
    int vertex;     // eligible but not executing
    int idle_core;  // an idle core at that time

    std::string message() const {
        return "at t=" + std::to_string(time) + " vertex v" + std::to_string(vertex) +
               " is eligible while core " + std::to_string(idle_core) + " idles";
    }
};

// Accepts iff at no instant a core is idle while some eligible vertex is not
// executing. Checks every maximal interval between consecutive event times.
inline std::optional<WorkConservingViolation> verify_work_conserving(
    const DagTask& t, int m, const ExecutionSequence& seq) {
    const int n = t.vertex_count();
    std::vector<std::int64_t> points;
    points.reserve(2 * n);
    for (int v = 0; v < n; ++v) {
        points.push_back(seq.start[v]);
        points.push_back(seq.finish[v]);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const std::int64_t a = points[i];
        const std::int64_t b = points[i + 1];
        int busy = 0;
        for (int v = 0; v < n; ++v)
            if (seq.start[v] <= a && seq.finish[v] >= b) ++busy;
        if (busy >= m) continue;
        for (int v = 0; v < n; ++v) {
            if (seq.start[v] < b) continue;  // already started (or running)
            bool eligible = true;
            for (int u : t.pred[v])
                if (seq.finish[u] > a) { eligible = false; break; }
            if (eligible) return WorkConservingViolation{a, v, busy};
        }
    }
    return std::nullopt;
}

// Workload reduction of a vertex set in one run: vol(U) - sum of actual
// execution times over U.
inline std::int64_t workload_reduction(const DagTask& t, const ExecutionScenario& scenario,
                                       const VertexSet& set) {
    scenario.validate(t);
    std::int64_t delta = 0;
    for (int v = 0; v < t.vertex_count(); ++v)
        if (set.contains(v)) delta += t.wcet[v] - scenario.exec[v];
    return delta;
}

}  // namespace dagbound
