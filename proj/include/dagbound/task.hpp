#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagbound {

struct MalformedInputError : std::runtime_error {
    explicit MalformedInputError(const std::string& what) : std::runtime_error(what) {}
};
struct CycleError : std::runtime_error {
    explicit CycleError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant is violated; the CLI maps this to exit 3.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw InternalError(what);
}

// A parallel task modeled as a DAG: per-vertex WCETs in integer time units,
// edges are precedence constraints. Vertices are dense ids 0..n-1.
// Normalized tasks have exactly one source and one sink (zero-WCET dummies
// are appended when the input has several).
struct DagTask {
    std::string name;
    std::vector<std::int64_t> wcet;
    std::vector<std::pair<int, int>> edges;  // sorted, unique
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;
    int source = -1;
    int sink = -1;

    int vertex_count() const { return static_cast<int>(wcet.size()); }

    bool operator==(const DagTask& o) const {
        return name == o.name && wcet == o.wcet && edges == o.edges && source == o.source &&
               sink == o.sink;
    }
};

struct RawTask {
    std::string name;
    std::vector<std::int64_t> wcet;
    std::vector<std::pair<int, int>> edges;
};

namespace detail {

inline void build_adjacency(DagTask& t) {
    const int n = t.vertex_count();
    std::sort(t.edges.begin(), t.edges.end());
    t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
    t.succ.assign(n, {});
    t.pred.assign(n, {});
    for (const auto& [u, v] : t.edges) {
        t.succ[u].push_back(v);
        t.pred[v].push_back(u);
    }
}

inline bool has_cycle(const DagTask& t) {
    const int n = t.vertex_count();
    std::vector<int> indeg(n, 0);
    for (const auto& [u, v] : t.edges) ++indeg[v];
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int w : t.succ[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    return seen != n;
}

}  // namespace detail

// Validates ranges and acyclicity, builds adjacency. Does NOT add dummy
// vertices; source/sink are set only when already unique. Most callers want
// validate_and_normalize below.
inline DagTask build_task(RawTask raw) {
    const int n = static_cast<int>(raw.wcet.size());
    if (n == 0) throw MalformedInputError(raw.name + ": task has no vertices");
    for (int v = 0; v < n; ++v)
        if (raw.wcet[v] < 0)
            throw MalformedInputError(raw.name + ": negative WCET at vertex " + std::to_string(v));
    for (const auto& [u, v] : raw.edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw MalformedInputError(raw.name + ": edge endpoint out of range (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v)
            throw MalformedInputError(raw.name + ": self-loop at vertex " + std::to_string(u));
    }
    DagTask t;
    t.name = std::move(raw.name);
    t.wcet = std::move(raw.wcet);
    t.edges = std::move(raw.edges);
    detail::build_adjacency(t);
    if (detail::has_cycle(t)) throw CycleError(t.name + ": edge relation has a cycle");

    std::vector<int> sources, sinks;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.pred[v].empty()) sources.push_back(v);
        if (t.succ[v].empty()) sinks.push_back(v);
    }
    if (sources.size() == 1) t.source = sources[0];
    if (sinks.size() == 1) t.sink = sinks[0];
    return t;
}

// Normalization per the model: if the graph has multiple sources (sinks), a
// zero-WCET dummy vertex is appended and connected to all former sources
// (sinks). Idempotent.
inline DagTask validate_and_normalize(RawTask raw) {
    DagTask t = build_task(std::move(raw));
    std::vector<int> sources, sinks;
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.pred[v].empty()) sources.push_back(v);
        if (t.succ[v].empty()) sinks.push_back(v);
    }
    if (sources.size() > 1) {
        const int s = t.vertex_count();
        t.wcet.push_back(0);
        for (int v : sources) t.edges.emplace_back(s, v);
        t.source = s;
    } else {
        t.source = sources[0];
    }
    if (sinks.size() > 1) {
        const int k = t.vertex_count();
        t.wcet.push_back(0);
        for (int v : sinks) t.edges.emplace_back(v, k);
        t.sink = k;
    } else {
        t.sink = sinks[0];
    }
    detail::build_adjacency(t);
    return t;
}

inline DagTask validate_and_normalize(std::string name, std::vector<std::int64_t> wcets,
                                      std::vector<std::pair<int, int>> edges) {
    return validate_and_normalize(RawTask{std::move(name), std::move(wcets), std::move(edges)});
}

// Same topology with different WCETs (used for sustainability analysis where
// execution demands shrink).
inline DagTask with_wcets(const DagTask& t, std::vector<std::int64_t> wcets) {
    if (wcets.size() != t.wcet.size())
        throw MalformedInputError(t.name + ": WCET vector size mismatch");
    for (std::size_t v = 0; v < wcets.size(); ++v)
        if (wcets[v] < 0)
            throw MalformedInputError(t.name + ": negative WCET at vertex " + std::to_string(v));
    DagTask copy = t;
    copy.wcet = std::move(wcets);
    return copy;
}

// Deterministic topological order: smallest-identifier-first among ready
// vertices.
inline std::vector<int> topological_order(const DagTask& t) {
    const int n = t.vertex_count();
    std::vector<int> indeg(n, 0);
    for (const auto& [u, v] : t.edges) ++indeg[v];
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : t.succ[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    internal_check(static_cast<int>(order.size()) == n, "topological_order: cycle slipped through");
    return order;
}

// Strict ancestor relation as a dense bit matrix: row u holds the
// descendants of u. Irreflexive and transitive.
class Reachability {
public:
    Reachability(int n, std::vector<std::uint64_t> bits)
        : n_(n), words_((n + 63) / 64), bits_(std::move(bits)) {}

    int size() const { return n_; }

    bool is_ancestor(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
    }
    bool comparable(int u, int v) const { return is_ancestor(u, v) || is_ancestor(v, u); }

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

inline Reachability reachability(const DagTask& t) {
    const int n = t.vertex_count();
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * words, 0);
    const std::vector<int> order = topological_order(t);
    // reverse topological sweep: desc(u) = union over successors s of {s} + desc(s)
    for (int i = n - 1; i >= 0; --i) {
        const int u = order[i];
        auto* row = &bits[static_cast<std::size_t>(u) * words];
        for (int s : t.succ[u]) {
            row[s / 64] |= 1ull << (s % 64);
            const auto* srow = &bits[static_cast<std::size_t>(s) * words];
            for (int w = 0; w < words; ++w) row[w] |= srow[w];
        }
    }
    return Reachability(n, std::move(bits));
}

// Subset of vertices as a bitset.
class VertexSet {
public:
    explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    static VertexSet all(int n) {
        VertexSet s(n);
        for (int v = 0; v < n; ++v) s.insert(v);
        return s;
    }

    int universe_size() const { return n_; }
    void insert(int v) { words_[v / 64] |= 1ull << (v % 64); }
    void erase(int v) { words_[v / 64] &= ~(1ull << (v % 64)); }
    bool contains(int v) const { return (words_[v / 64] >> (v % 64)) & 1u; }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

inline std::int64_t volume(const DagTask& t) {
    std::int64_t v = 0;
    for (std::int64_t c : t.wcet) v += c;
    return v;
}

inline std::int64_t volume_of(const DagTask& t, const VertexSet& set) {
    std::int64_t v = 0;
    for (int i = 0; i < t.vertex_count(); ++i)
        if (set.contains(i)) v += t.wcet[i];
    return v;
}

// len(G): the largest summed WCET over complete (source-to-sink) paths.
// In a normalized task every vertex lies on a complete path, so a forward DP
// over the topological order ending at the sink is exact.
inline std::int64_t longest_path_length(const DagTask& t) {
    internal_check(t.source >= 0 && t.sink >= 0, "longest_path_length: task not normalized");
    std::vector<std::int64_t> dist(t.vertex_count(), 0);
    for (int v : topological_order(t)) {
        std::int64_t best = 0;
        for (int u : t.pred[v]) best = std::max(best, dist[u]);
        dist[v] = best + t.wcet[v];
    }
    return dist[t.sink];
}

using GeneralizedPath = std::vector<int>;
using GeneralizedPathList = std::vector<GeneralizedPath>;

inline std::int64_t path_length(const DagTask& t, const GeneralizedPath& p) {
    std::int64_t len = 0;
    for (int v : p) len += t.wcet[v];
    return len;
}

inline std::int64_t list_volume(const DagTask& t, const GeneralizedPathList& list) {
    std::int64_t total = 0;
    for (const auto& p : list) total += path_length(t, p);
    return total;
}

// The longest complete path; ties broken by the lexicographically smallest
// vertex-identifier sequence.
inline GeneralizedPath longest_complete_path(const DagTask& t) {
    internal_check(t.source >= 0 && t.sink >= 0, "longest_complete_path: task not normalized");
    const int n = t.vertex_count();
    // down[v] = best length of a v..sink path
    std::vector<std::int64_t> down(n, 0);
    const std::vector<int> order = topological_order(t);
    for (int i = n - 1; i >= 0; --i) {
        const int v = order[i];
        std::int64_t best = 0;
        for (int w : t.succ[v]) best = std::max(best, down[w]);
        down[v] = best + t.wcet[v];
    }
    GeneralizedPath path{t.source};
    int v = t.source;
    while (v != t.sink) {
        const std::int64_t need = down[v] - t.wcet[v];
        int next = -1;
        for (int w : t.succ[v])
            if (down[w] == need && (next == -1 || w < next)) next = w;
        internal_check(next != -1, "longest_complete_path: broken DP");
        path.push_back(next);
        v = next;
    }
    return path;
}

// Width: maximum antichain size of the ancestor order. Computed as the
// minimum chain-partition size |V| - max_matching on the bipartite graph of
// the transitive closure, which equals the maximum antichain by Dilworth.
inline int width(const DagTask& t, const Reachability& reach) {
    const int n = t.vertex_count();
    std::vector<int> match_right(n, -1);  // right vertex -> matched left vertex
    std::vector<char> visited(n, 0);

    auto try_augment = [&](auto&& self, int u) -> bool {
        for (int v = 0; v < n; ++v) {
            if (!reach.is_ancestor(u, v) || visited[v]) continue;
            visited[v] = 1;
            if (match_right[v] == -1 || self(self, match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };

    int matched = 0;
    for (int u = 0; u < n; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_augment(try_augment, u)) ++matched;
    }
    return n - matched;
}

// Outcome of checking a generalized path list against Definition-style
// requirements: chains under the ancestor order, pairwise disjoint, nonempty.
struct ListViolation {
    enum class Kind { OutOfRange, EmptyPath, NotAChain, Overlap };
    Kind kind;
    int path_a = -1;
    int path_b = -1;
    int vertex_a = -1;
    int vertex_b = -1;

    std::string message() const {
        switch (kind) {
            case Kind::OutOfRange:
                return "vertex v" + std::to_string(vertex_a) + " in path " +
                       std::to_string(path_a) + " is out of range";
            case Kind::EmptyPath:
                return "path " + std::to_string(path_a) + " is empty";
            case Kind::NotAChain:
                return "path " + std::to_string(path_a) + ": v" + std::to_string(vertex_a) +
                       " is not an ancestor of v" + std::to_string(vertex_b);
            case Kind::Overlap:
                return "vertex v" + std::to_string(vertex_a) + " appears in paths " +
                       std::to_string(path_a) + " and " + std::to_string(path_b);
        }
        return "unknown violation";
    }
};

inline std::optional<ListViolation> check_generalized_path_list(const DagTask& t,
                                                                const Reachability& reach,
                                                                const GeneralizedPathList& list) {
    const int n = t.vertex_count();
    std::vector<int> owner(n, -1);
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
        const auto& path = list[i];
        if (path.empty())
            return ListViolation{ListViolation::Kind::EmptyPath, i};
        for (std::size_t j = 0; j < path.size(); ++j) {
            const int v = path[j];
            if (v < 0 || v >= n)
                return ListViolation{ListViolation::Kind::OutOfRange, i, -1, v};
            if (owner[v] != -1)
                return ListViolation{ListViolation::Kind::Overlap, owner[v], i, v};
            owner[v] = i;
            if (j > 0 && !reach.is_ancestor(path[j - 1], v))
                return ListViolation{ListViolation::Kind::NotAChain, i, -1, path[j - 1], v};
        }
    }
    return std::nullopt;
}

}  // namespace dagbound
