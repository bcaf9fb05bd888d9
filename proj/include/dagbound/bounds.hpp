#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "flow.hpp"
#include "rational.hpp"
#include "task.hpp"

namespace dagbound {

// A task together with the derived quantities every bound needs.
struct TaskAnalysis {
    DagTask task;
    Reachability reach;
    std::int64_t len = 0;  // longest complete path length
    std::int64_t vol = 0;  // total workload
    int width = 0;         // maximum antichain of the ancestor order
    GeneralizedPath longest_path;
};

inline TaskAnalysis analyze(DagTask t) {
    Reachability reach = reachability(t);
    TaskAnalysis a{std::move(t), std::move(reach)};
    a.len = longest_path_length(a.task);
    a.vol = volume(a.task);
    a.width = width(a.task, a.reach);
    a.longest_path = longest_complete_path(a.task);
    return a;
}

enum class BoundMethod { Optimal, Graham, Para, LongestConstrained, GreedyChains, ExplicitList };

inline const char* method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::Optimal: return "optimal";
        case BoundMethod::Graham: return "graham";
        case BoundMethod::Para: return "para";
        case BoundMethod::LongestConstrained: return "path";
        case BoundMethod::GreedyChains: return "uete";
        case BoundMethod::ExplicitList: return "explicit";
    }
    return "?";
}

struct TooManyPathsError : std::runtime_error {
    TooManyPathsError(int cardinality, int m)
        : std::runtime_error("path list of cardinality " + std::to_string(cardinality) +
                             " exceeds " + std::to_string(m) + " cores") {}
};
struct InvalidListError : std::runtime_error {
    explicit InvalidListError(const std::string& what)
        : std::runtime_error("invalid generalized path list: " + what) {}
};

struct BoundTerm {
    int j;                    // prefix index (cardinality j+1)
    std::int64_t prefix_len;  // sum of the first j+1 path lengths
    Rational value;
};

struct BoundReport {
    BoundMethod method = BoundMethod::ExplicitList;
    int cores = 0;
    std::vector<BoundTerm> terms;
    int chosen_j = -1;
    Rational bound;
    GeneralizedPathList witness;
};

// Theoretical lower bound max{len(G), vol(G)/m}; no safe bound is below it.
inline Rational bound_floor(const TaskAnalysis& a, int m) {
    const Rational by_volume(a.vol, m);
    return Rational(a.len) < by_volume ? by_volume : Rational(a.len);
}

namespace detail {

inline void assert_safe(const TaskAnalysis& a, int m, const Rational& bound) {
    internal_check(bound >= bound_floor(a, m), "bound fell below max{len, vol/m}");
}

inline void require_valid_list(const TaskAnalysis& a, const GeneralizedPathList& list) {
    if (list.empty()) throw InvalidListError("list is empty");
    if (auto violation = check_generalized_path_list(a.task, a.reach, list))
        throw InvalidListError(violation->message());
}

}  // namespace detail

// The multi-path response time bound for a given generalized path list:
//   R <= min over j in [0,k] of len(G) + (vol(G) - sum_{i<=j} len(path_i)) / (m-j)
// The first path is not required to be the longest path.
inline BoundReport multipath_bound_with_list(const TaskAnalysis& a, int m,
                                             GeneralizedPathList list,
                                             BoundMethod tag = BoundMethod::ExplicitList) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    detail::require_valid_list(a, list);
    const int cardinality = static_cast<int>(list.size());
    if (cardinality > m) throw TooManyPathsError(cardinality, m);

    BoundReport report;
    report.method = tag;
    report.cores = m;
    std::int64_t prefix = 0;
    for (int j = 0; j < cardinality; ++j) {
        prefix += path_length(a.task, list[j]);
        const Rational term = Rational(a.len) + Rational(a.vol - prefix, m - j);
        report.terms.push_back({j, prefix, term});
        if (report.chosen_j == -1 || term < report.bound) {
            report.chosen_j = j;
            report.bound = term;
        }
    }
    report.witness = std::move(list);
    detail::assert_safe(a, m, report.bound);
    return report;
}

// Graham's classic bound len(G) + (vol(G) - len(G)) / m; equals the j=0 term
// with the longest path as the only path.
inline BoundReport graham_bound(const TaskAnalysis& a, int m) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    BoundReport report;
    report.method = BoundMethod::Graham;
    report.cores = m;
    report.bound = Rational(a.len) + Rational(a.vol - a.len, m);
    report.terms.push_back({0, a.len, report.bound});
    report.chosen_j = 0;
    report.witness = {a.longest_path};
    detail::assert_safe(a, m, report.bound);
    return report;
}

// The parallelism-based bound len(G) + vol(G) - sum_{i<=j} len(path_i),
// minimized over prefixes (the terms are non-increasing in j, so this equals
// the full-list value). No division by the core count.
inline BoundReport para_bound_with_list(const TaskAnalysis& a, GeneralizedPathList list) {
    detail::require_valid_list(a, list);
    BoundReport report;
    report.method = BoundMethod::Para;
    report.cores = 0;  // formula does not involve m
    std::int64_t prefix = 0;
    for (int j = 0; j < static_cast<int>(list.size()); ++j) {
        prefix += path_length(a.task, list[j]);
        const Rational term = Rational(a.len + a.vol - prefix);
        report.terms.push_back({j, prefix, term});
        if (report.chosen_j == -1 || term < report.bound) {
            report.chosen_j = j;
            report.bound = term;
        }
    }
    report.witness = std::move(list);
    internal_check(report.bound >= Rational(a.len), "bound fell below len");
    return report;
}

namespace detail {

// Max-volume disjoint chain packings of cardinality 1..n_max via the flow
// reduction, as cumulative volumes W(k) = -cost(k).
inline std::vector<std::int64_t> volume_profile(const TaskAnalysis& a, int n_max,
                                                const VertexSet& active) {
    if (n_max < 1) return {};
    auto [net, map] = build_reduction_network(a.task, a.reach, active);
    std::vector<std::int64_t> w;
    w.reserve(n_max);
    MinCostFlow solver(net);
    for (int k = 1; k <= n_max; ++k) {
        internal_check(solver.augment(), "volume profile: amount must be feasible");
        w.push_back(-solver.cost());
    }
    return w;
}

// Witness list for the max-volume packing of the given cardinality.
inline GeneralizedPathList volume_witness(const TaskAnalysis& a, int cardinality,
                                          const VertexSet& active) {
    auto [net, map] = build_reduction_network(a.task, a.reach, active);
    MinCostFlow solver(net);
    for (int k = 0; k < cardinality; ++k)
        internal_check(solver.augment(), "volume witness: amount must be feasible");
    return extract_path_list(net, map, solver.solution());
}

}  // namespace detail

// Optimal multi-path bound: for each cardinality j+1 up to min(width, m),
// take the max-volume packing W(j+1) and evaluate
// len(G) + (vol(G) - W(j+1)) / (m-j); return the minimum with its witness.
inline BoundReport optimal_bound(const TaskAnalysis& a, int m) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    const int n = std::min(a.width, m);
    const VertexSet all = VertexSet::all(a.task.vertex_count());
    const std::vector<std::int64_t> w = detail::volume_profile(a, n, all);

    BoundReport report;
    report.method = BoundMethod::Optimal;
    report.cores = m;
    for (int j = 0; j < n; ++j) {
        const Rational term = Rational(a.len) + Rational(a.vol - w[j], m - j);
        report.terms.push_back({j, w[j], term});
        if (report.chosen_j == -1 || term < report.bound) {
            report.chosen_j = j;
            report.bound = term;
        }
    }
    report.witness = detail::volume_witness(a, report.chosen_j + 1, all);
    detail::assert_safe(a, m, report.bound);
    return report;
}

namespace detail {

// Best chain among unused vertices ordered by (weight, vertex count), then
// lexicographically smallest sequence. Maximizing the count as a secondary
// key extends chains across zero-WCET vertices, matching how published
// chain-selection heuristics report their lists.
struct ChainScore {
    std::int64_t weight = 0;
    int count = 0;
    bool operator<(const ChainScore& o) const {
        return weight != o.weight ? weight < o.weight : count < o.count;
    }
    bool operator==(const ChainScore& o) const {
        return weight == o.weight && count == o.count;
    }
};

inline GeneralizedPath best_chain(const TaskAnalysis& a, const std::vector<char>& used) {
    const int n = a.task.vertex_count();
    const std::vector<int> order = topological_order(a.task);
    std::vector<ChainScore> g(n);
    ChainScore best;
    bool any = false;
    for (int i = n - 1; i >= 0; --i) {
        const int v = order[i];
        if (used[v]) continue;
        ChainScore tail;
        for (int w = 0; w < n; ++w)
            if (!used[w] && a.reach.is_ancestor(v, w) && tail < g[w]) tail = g[w];
        g[v] = {tail.weight + a.task.wcet[v], tail.count + 1};
        if (!any || best < g[v]) best = g[v], any = true;
    }
    if (!any) return {};

    GeneralizedPath chain;
    ChainScore need = best;
    int last = -1;
    while (need.count > 0) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (used[v] || g[v].count == 0) continue;
            if (last != -1 && !a.reach.is_ancestor(last, v)) continue;
            if (g[v] == need) { pick = v; break; }
        }
        internal_check(pick != -1, "greedy chain reconstruction failed");
        chain.push_back(pick);
        need = {need.weight - a.task.wcet[pick], need.count - 1};
        last = pick;
    }
    return chain;
}

}  // namespace detail

// Iterated greedy chain extraction (selection proxy for the priority-based
// multi-path method): n rounds of taking the maximum-weight chain among
// unused vertices.
inline GeneralizedPathList greedy_path_list(const TaskAnalysis& a, int n) {
    if (n < 1) throw std::invalid_argument("greedy_path_list: n must be >= 1");
    std::vector<char> used(a.task.vertex_count(), 0);
    GeneralizedPathList list;
    for (int round = 0; round < n; ++round) {
        GeneralizedPath chain = detail::best_chain(a, used);
        if (chain.empty()) break;  // vertices exhausted
        for (int v : chain) used[v] = 1;
        list.push_back(std::move(chain));
    }
    return list;
}

namespace detail {

// Width of the ancestor sub-order induced by a vertex subset.
inline int sub_order_width(const TaskAnalysis& a, const VertexSet& rest) {
    std::vector<int> ids;
    for (int v = 0; v < a.task.vertex_count(); ++v)
        if (rest.contains(v)) ids.push_back(v);
    if (ids.empty()) return 0;
    std::vector<std::int64_t> w;
    std::vector<std::pair<int, int>> closure_edges;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j)
            if (a.reach.is_ancestor(ids[i], ids[j]))
                closure_edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    for (int v : ids) w.push_back(a.task.wcet[v]);
    DagTask sub = build_task(RawTask{"sub", std::move(w), std::move(closure_edges)});
    return width(sub, reachability(sub));
}

inline VertexSet outside_longest_path(const TaskAnalysis& a) {
    VertexSet rest = VertexSet::all(a.task.vertex_count());
    for (int v : a.longest_path) rest.erase(v);
    return rest;
}

}  // namespace detail

// Longest-path-constrained selection proxy: the longest path first, then the
// remainder packed optimally by the flow reduction on the induced sub-order.
inline GeneralizedPathList longest_constrained_path_list(const TaskAnalysis& a, int m) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    GeneralizedPathList list{a.longest_path};
    const VertexSet rest = detail::outside_longest_path(a);
    if (m == 1 || rest.count() == 0) return list;
    const int extra = std::min(detail::sub_order_width(a, rest), m - 1);
    if (extra == 0) return list;
    GeneralizedPathList remainder = detail::volume_witness(a, extra, rest);
    for (auto& p : remainder) list.push_back(std::move(p));
    return list;
}

// The longest-path-constrained bound itself: the best multi-path bound over
// all lists whose first path is the longest path. Each extra cardinality
// uses the optimal remainder packing for that cardinality.
inline BoundReport longest_constrained_bound(const TaskAnalysis& a, int m) {
    if (m < 1) throw std::invalid_argument("core count must be >= 1");
    const VertexSet rest = detail::outside_longest_path(a);
    const int extra = std::min(detail::sub_order_width(a, rest), m - 1);
    const std::vector<std::int64_t> w_rest = detail::volume_profile(a, extra, rest);

    BoundReport report;
    report.method = BoundMethod::LongestConstrained;
    report.cores = m;
    for (int j = 0; j <= extra; ++j) {
        const std::int64_t prefix = a.len + (j > 0 ? w_rest[j - 1] : 0);
        const Rational term = Rational(a.len) + Rational(a.vol - prefix, m - j);
        report.terms.push_back({j, prefix, term});
        if (report.chosen_j == -1 || term < report.bound) {
            report.chosen_j = j;
            report.bound = term;
        }
    }
    report.witness = {a.longest_path};
    if (report.chosen_j > 0) {
        GeneralizedPathList remainder = detail::volume_witness(a, report.chosen_j, rest);
        for (auto& p : remainder) report.witness.push_back(std::move(p));
    }
    detail::assert_safe(a, m, report.bound);
    return report;
}

// bound / max{len(G), vol(G)/m}; >= 1 for every safe bound.
inline Rational normalized_bound(const TaskAnalysis& a, int m, const Rational& bound) {
    return bound / bound_floor(a, m);
}

// ---------------------------------------------------------------------------
// Per-task bound curves over the core count. All list-selection work is done
// once; evaluating a bound at any m is then a handful of rational terms.
// ---------------------------------------------------------------------------
class BoundCurves {
public:
    explicit BoundCurves(const TaskAnalysis& a) : a_(&a) {
        const VertexSet all = VertexSet::all(a.task.vertex_count());
        optimal_prefix_ = detail::volume_profile(a, a.width, all);

        GeneralizedPathList greedy = greedy_path_list(a, a.task.vertex_count());
        std::int64_t sum = 0;
        for (const auto& p : greedy) greedy_prefix_.push_back(sum += path_length(a.task, p));

        // longest path first, then the optimal remainder packing per extra
        // cardinality
        const VertexSet rest = detail::outside_longest_path(a);
        constrained_prefix_.push_back(a.len);
        for (std::int64_t w : detail::volume_profile(a, detail::sub_order_width(a, rest), rest))
            constrained_prefix_.push_back(a.len + w);
    }

    Rational bound(BoundMethod method, int m) const {
        switch (method) {
            case BoundMethod::Graham:
                return Rational(a_->len) + Rational(a_->vol - a_->len, m);
            case BoundMethod::Optimal:
                return divided_min(optimal_prefix_, m);
            case BoundMethod::GreedyChains:
                return divided_min(greedy_prefix_, m);
            case BoundMethod::LongestConstrained:
                return divided_min(constrained_prefix_, m);
            case BoundMethod::Para: {
                const int n = std::min(static_cast<int>(optimal_prefix_.size()), m);
                internal_check(n >= 1, "para curve needs a packing");
                return Rational(a_->len + a_->vol - optimal_prefix_[n - 1]);
            }
            default:
                throw std::invalid_argument("no curve for this method");
        }
    }

    // Smallest core count whose bound fits the deadline. Every multi-path
    // curve reaches exactly len(G) for a large enough m, so the search is
    // bounded; Graham approaches len(G) only asymptotically and is solved in
    // closed form.
    struct CoreCount {
        bool schedulable = false;
        int cores = 0;
    };
    CoreCount cores_for_deadline(BoundMethod method, const Rational& deadline) const {
        if (deadline < Rational(a_->len)) return {};
        if (method == BoundMethod::Graham) {
            if (a_->vol == a_->len) return {true, 1};
            if (deadline == Rational(a_->len)) return {};
            // len + (vol-len)/m <= D  <=>  m >= (vol-len)/(D-len)
            std::int64_t m = ((Rational(a_->vol - a_->len)) / (deadline - Rational(a_->len))).ceil();
            m = std::clamp<std::int64_t>(m, 1, 1'000'000'000);  // any platform is smaller
            return {true, static_cast<int>(m)};
        }
        const int cap = a_->task.vertex_count() + 1;
        for (int m = 1; m <= cap; ++m)
            if (bound(method, m) <= deadline) return {true, m};
        internal_check(false, "multi-path curve failed to reach len(G)");
        return {};
    }

private:
    Rational divided_min(const std::vector<std::int64_t>& prefix, int m) const {
        const int n = std::min(static_cast<int>(prefix.size()), m);
        internal_check(n >= 1, "bound curve needs at least one path");
        Rational best;
        for (int j = 0; j < n; ++j) {
            const Rational term = Rational(a_->len) + Rational(a_->vol - prefix[j], m - j);
            if (j == 0 || term < best) best = term;
        }
        internal_check(best >= bound_floor(*a_, m), "bound fell below max{len, vol/m}");
        return best;
    }

    const TaskAnalysis* a_;
    std::vector<std::int64_t> optimal_prefix_;
    std::vector<std::int64_t> greedy_prefix_;
    std::vector<std::int64_t> constrained_prefix_;
};

struct FederatedResult {
    bool schedulable = false;
    int cores = 0;
};

// Smallest m' with bound(task, m') <= deadline under the given method;
// unschedulable when the deadline is below len(G).
inline FederatedResult federated_core_count(const TaskAnalysis& a, BoundMethod method,
                                            const Rational& deadline) {
    if (!(deadline > Rational(0))) throw std::invalid_argument("deadline must be positive");
    BoundCurves curves(a);
    const auto r = curves.cores_for_deadline(method, deadline);
    return {r.schedulable, r.cores};
}

}  // namespace dagbound
