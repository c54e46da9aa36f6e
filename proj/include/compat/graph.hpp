#pragma once

#include <compat/incidence.hpp>
#include <compat/problem.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace compat {

/*
 * Bipartite graph whose vertex-edge incidence matrix is A_{Delta,d}.
 *
 * Vertex ids follow the matrix rows: cells (pVertices) first, then the
 * (i, B_i-tuple) vertices (uVertices) block by block. Edge ids follow the
 * matrix columns, so edge e is the indeterminate C^{e / cellCount}_{e % cellCount}.
 * Vertex id order is the canonical vertex order used everywhere.
 */
class CompatGraph {
public:
    struct Edge {
        std::size_t p;
        std::size_t u;
    };
    struct Incidence {
        std::size_t neighbor;
        std::size_t edge;
    };

    CompatGraph() = default;
    CompatGraph(std::size_t p_count, std::vector<RowLabel> vertex_labels, std::vector<ColLabel> edge_labels,
        std::vector<Edge> edges)
        : p_count_(p_count), vertex_labels_(std::move(vertex_labels)), edge_labels_(std::move(edge_labels)),
          edges_(std::move(edges)), adjacency_(vertex_labels_.size())
    {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            adjacency_[edges_[e].p].push_back({edges_[e].u, e});
            adjacency_[edges_[e].u].push_back({edges_[e].p, e});
        }
        for (auto & list : adjacency_)
            std::sort(list.begin(), list.end(), [](auto a, auto b) { return a.neighbor < b.neighbor; });
    }

    std::size_t vertex_count() const { return vertex_labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t p_vertex_count() const { return p_count_; }
    bool is_p_vertex(std::size_t v) const { return v < p_count_; }
    const RowLabel & vertex_label(std::size_t v) const { return vertex_labels_.at(v); }
    const ColLabel & edge_label(std::size_t e) const { return edge_labels_.at(e); }
    const Edge & edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Incidence> & neighbors(std::size_t v) const { return adjacency_.at(v); }
    std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

    std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const
    {
        const auto & list = adjacency_.at(a);
        auto it = std::lower_bound(
            list.begin(), list.end(), b, [](const Incidence & inc, std::size_t x) { return inc.neighbor < x; });
        if (it != list.end() && it->neighbor == b)
            return it->edge;
        return std::nullopt;
    }

    std::size_t component_count() const
    {
        std::vector<std::size_t> parent(vertex_count());
        for (std::size_t v = 0; v < parent.size(); ++v)
            parent[v] = v;
        auto find = [&](std::size_t v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        std::size_t components = vertex_count();
        for (const auto & e : edges_) {
            auto a = find(e.p), b = find(e.u);
            if (a != b) {
                parent[a] = b;
                --components;
            }
        }
        return components;
    }

private:
    std::size_t p_count_ = 0;
    std::vector<RowLabel> vertex_labels_;
    std::vector<ColLabel> edge_labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

inline CompatGraph build_graph(const ValidatedProblem & problem)
{
    auto matrix = build_matrix(problem);
    std::vector<CompatGraph::Edge> edges;
    edges.reserve(problem.column_count());
    for (std::size_t i = 0; i < problem.conditional_count(); ++i)
        for (std::size_t c = 0; c < problem.cell_count(); ++c)
            edges.push_back({c, block_row(problem, i, problem.slice_of(i, c))});
    return CompatGraph(problem.cell_count(), matrix.rows(), matrix.cols(), std::move(edges));
}

/// A simple cycle; edges[k] joins vertices[k] and vertices[k + 1] (cyclically).
struct Circuit {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    std::size_t length() const { return edges.size(); }

    friend bool operator==(const Circuit &, const Circuit &) = default;
    friend auto operator<=>(const Circuit & a, const Circuit & b)
    {
        if (a.length() != b.length())
            return a.length() <=> b.length();
        return a.vertices <=> b.vertices;
    }
};

/*
 * Accepts a closed walk given by its vertices (the start may be repeated at
 * the end) and returns the unique representative: rotated to start at the
 * smallest vertex and oriented toward the smaller of its two cycle neighbors.
 */
inline Circuit canonicalize_circuit(const CompatGraph & graph, std::vector<std::size_t> walk)
{
    if (walk.size() >= 2 && walk.front() == walk.back())
        walk.pop_back();
    const std::size_t len = walk.size();
    if (len < 3)
        throw Error(Errc::NotACycle, "a cycle needs at least three vertices");
    for (auto v : walk)
        if (v >= graph.vertex_count())
            throw Error(Errc::NotACycle, "unknown vertex " + std::to_string(v));
    {
        auto sorted = walk;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(Errc::NotACycle, "walk repeats a vertex");
    }

    auto start = static_cast<std::size_t>(std::min_element(walk.begin(), walk.end()) - walk.begin());
    std::size_t next = walk[(start + 1) % len];
    std::size_t prev = walk[(start + len - 1) % len];
    bool forward = next < prev;

    Circuit out;
    out.vertices.reserve(len);
    for (std::size_t k = 0; k < len; ++k)
        out.vertices.push_back(forward ? walk[(start + k) % len] : walk[(start + len - k) % len]);
    for (std::size_t k = 0; k < len; ++k) {
        auto e = graph.edge_between(out.vertices[k], out.vertices[(k + 1) % len]);
        if (! e)
            throw Error(Errc::NotACycle, "consecutive vertices are not adjacent");
        out.edges.push_back(*e);
    }
    return out;
}

inline Circuit canonicalize_circuit(const CompatGraph & graph, const Circuit & circuit)
{
    return canonicalize_circuit(graph, circuit.vertices);
}

/// No graph edge joins two vertices that are not consecutive on the cycle.
inline bool is_chordless(const CompatGraph & graph, const Circuit & circuit)
{
    const std::size_t len = circuit.vertices.size();
    for (std::size_t a = 0; a < len; ++a)
        for (std::size_t b = a + 2; b < len; ++b) {
            if (a == 0 && b == len - 1)
                continue;
            if (graph.edge_between(circuit.vertices[a], circuit.vertices[b]))
                return false;
        }
    return true;
}

struct EnumerationCaps {
    std::size_t max_circuits = 1'000'000;
    /// Longest cycle (in edges) the search may explore; reaching it is an error.
    std::optional<std::size_t> max_length;
    /// Vertex limit for the exhaustive oracle.
    std::size_t oracle_vertex_cap = 40;
};

struct CircuitSet {
    std::vector<Circuit> circuits;
    std::map<std::size_t, std::size_t> histogram;

    std::size_t size() const { return circuits.size(); }
};

namespace detail {
    inline CircuitSet finish(std::vector<Circuit> circuits)
    {
        std::sort(circuits.begin(), circuits.end());
        circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());
        CircuitSet out;
        for (const auto & c : circuits)
            ++out.histogram[c.length()];
        out.circuits = std::move(circuits);
        return out;
    }

    // shortest_cycle: fewest edges any cycle through the current path can have
    inline void check_caps(const EnumerationCaps & caps, std::size_t found, std::size_t shortest_cycle)
    {
        if (found > caps.max_circuits)
            throw Error(Errc::CircuitCapExceeded,
                "more than " + std::to_string(caps.max_circuits) + " circuits (aborted after "
                    + std::to_string(found) + ")");
        if (caps.max_length && shortest_cycle > *caps.max_length)
            throw Error(Errc::CircuitCapExceeded,
                "search reached paths longer than the length cap " + std::to_string(*caps.max_length));
    }
}

/*
 * Chordless cycles by canonical extension: from each start vertex s grow
 * induced paths over vertices larger than s. A candidate adjacent to an
 * interior path vertex would create a chord and is pruned; a candidate
 * adjacent to s closes a chordless cycle. Requiring the second vertex to be
 * smaller than the last keeps one orientation of each cycle.
 */
inline CircuitSet enumerate_induced_circuits(const CompatGraph & graph, const EnumerationCaps & caps = {})
{
    const std::size_t n = graph.vertex_count();
    std::vector<Circuit> found;
    std::vector<std::size_t> path;
    std::vector<char> on_path(n, 0);
    std::vector<char> near_start(n, 0);
    // number of interior path vertices (excluding start and the tip) adjacent to v
    std::vector<std::size_t> blocked(n, 0);

    auto emit = [&](std::size_t closing) {
        path.push_back(closing);
        found.push_back(canonicalize_circuit(graph, path));
        path.pop_back();
        detail::check_caps(caps, found.size(), 0);
    };

    auto extend = [&](auto && self) -> void {
        const std::size_t start = path.front();
        const std::size_t tip = path.back();
        for (const auto & inc : graph.neighbors(tip)) {
            std::size_t w = inc.neighbor;
            if (w <= start || on_path[w] || blocked[w])
                continue;
            if (path.size() >= 2 && near_start[w]) {
                if (path[1] < w)
                    emit(w);
                continue;
            }
            if (near_start[w])
                continue;
            detail::check_caps(caps, found.size(), path.size() + 2);

            if (path.size() >= 2)
                for (const auto & x : graph.neighbors(tip))
                    ++blocked[x.neighbor];
            path.push_back(w);
            on_path[w] = 1;
            self(self);
            on_path[w] = 0;
            path.pop_back();
            if (path.size() >= 2)
                for (const auto & x : graph.neighbors(tip))
                    --blocked[x.neighbor];
        }
    };

    for (std::size_t s = 0; s < n; ++s) {
        for (const auto & inc : graph.neighbors(s))
            near_start[inc.neighbor] = 1;
        path.assign(1, s);
        on_path[s] = 1;
        for (const auto & inc : graph.neighbors(s)) {
            std::size_t v = inc.neighbor;
            if (v <= s)
                continue;
            path.push_back(v);
            on_path[v] = 1;
            extend(extend);
            on_path[v] = 0;
            path.pop_back();
        }
        on_path[s] = 0;
        for (const auto & inc : graph.neighbors(s))
            near_start[inc.neighbor] = 0;
    }
    return detail::finish(std::move(found));
}

/// Exhaustive simple-cycle search followed by a chord filter. Test oracle only.
inline CircuitSet enumerate_circuits_bruteforce(const CompatGraph & graph, const EnumerationCaps & caps = {})
{
    const std::size_t n = graph.vertex_count();
    if (n > caps.oracle_vertex_cap)
        throw Error(Errc::OracleCapExceeded,
            "graph has " + std::to_string(n) + " vertices, oracle cap is " + std::to_string(caps.oracle_vertex_cap));

    std::vector<Circuit> cycles;
    std::vector<std::size_t> path;
    std::vector<char> on_path(n, 0);

    auto dfs = [&](auto && self) -> void {
        const std::size_t start = path.front();
        for (const auto & inc : graph.neighbors(path.back())) {
            std::size_t w = inc.neighbor;
            if (w == start && path.size() >= 3 && path[1] < path.back()) {
                Circuit c{path, {}};
                for (std::size_t k = 0; k < path.size(); ++k)
                    c.edges.push_back(*graph.edge_between(path[k], path[(k + 1) % path.size()]));
                if (is_chordless(graph, c))
                    cycles.push_back(canonicalize_circuit(graph, c));
                if (cycles.size() > caps.max_circuits)
                    throw Error(Errc::CircuitCapExceeded, "oracle exceeded the circuit cap");
                continue;
            }
            if (w <= start || on_path[w])
                continue;
            path.push_back(w);
            on_path[w] = 1;
            self(self);
            on_path[w] = 0;
            path.pop_back();
        }
    };

    for (std::size_t s = 0; s < n; ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        dfs(dfs);
        on_path[s] = 0;
    }
    return detail::finish(std::move(cycles));
}

} // namespace compat
