#pragma once

#include <dagbound/task.hpp>

// Worked-example tasks reconstructed from the figures, WCETs scaled x10 so
// all arithmetic stays integral.
namespace fixtures {

using dagbound::DagTask;
using dagbound::RawTask;
using dagbound::validate_and_normalize;

// diamond-ish 6-vertex task: longest path (v0,v1,v4,v5) of length 60,
// volume 100; already normalized
inline DagTask fig1() {
    return validate_and_normalize(
        "fig1", {10, 30, 10, 30, 10, 10},
        {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}});
}

inline RawTask fig2a_raw() {
    return {"fig2a", {30, 10, 10, 10}, {{0, 1}, {0, 3}, {2, 3}}};
}

// two sources / two sinks; normalization appends dummy source 4 and dummy
// sink 5
inline DagTask fig2a() { return validate_and_normalize(fig2a_raw()); }

// four parallel vertices between explicit zero-WCET endpoints; width 4
inline DagTask fig3a() {
    return validate_and_normalize(
        "fig3a", {0, 30, 20, 20, 20, 0},
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
}

// two sources / two sinks; dummies 5 (source) and 6 (sink) appended;
// longest path via v0,v2,v4 of length 40, volume 60
inline DagTask fig3b() {
    return validate_and_normalize("fig3b", {20, 10, 1, 10, 19},
                                  {{0, 1}, {0, 2}, {2, 4}, {3, 4}});
}

// fig3b with c(v1) raised to 21 (the non-self-sustainability witness pair)
inline DagTask fig3b_c21() {
    return validate_and_normalize("fig3b-c21", {20, 21, 1, 10, 19},
                                  {{0, 1}, {0, 2}, {2, 4}, {3, 4}});
}

inline DagTask chain(std::vector<std::int64_t> wcets) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < static_cast<int>(wcets.size()); ++i) edges.push_back({i, i + 1});
    return validate_and_normalize("chain", std::move(wcets), std::move(edges));
}

inline DagTask single_vertex(std::int64_t wcet) {
    return validate_and_normalize("single", {wcet}, {});
}

// k independent vertices (normalization adds both dummies)
inline DagTask parallel(std::vector<std::int64_t> wcets) {
    return validate_and_normalize("parallel", std::move(wcets), {});
}

}  // namespace fixtures
