// graph.hpp - finite simplicial graphs with bit-packed adjacency, plus the
// combinatorial queries the classifiers are built on
#ifndef COXTK_GRAPH_HPP
#define COXTK_GRAPH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "coxtk/bitset.hpp"
#include "coxtk/errors.hpp"

namespace coxtk {

using VertexSet = Bitset;

// Undirected simple graph on vertices 0..n-1.  Adjacency is stored as one
// neighbor set per vertex; no loops, symmetric by construction.  Queries are
// pure and safe to run concurrently once construction is done.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {}

    int size() const { return n_; }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InputError("loop edge " + std::to_string(u));
        adj_[u].set(v);
        adj_[v].set(u);
    }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && adj_[u].test(v);
    }

    const Bitset& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return neighbors(v).count(); }

    long edge_count() const {
        long d = 0;
        for (int v = 0; v < n_; ++v) d += adj_[v].count();
        return d / 2;
    }

    Bitset vertex_set() const { return Bitset::full(n_); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = adj_[u].next(u); v != -1; v = adj_[u].next(v)) out.emplace_back(u, v);
        return out;
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& es) {
        Graph g(n);
        for (auto [u, v] : es) g.add_edge(u, v);
        return g;
    }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static Graph cycle(int n) {
        Graph g(n);
        for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
        return g;
    }

    static Graph path(int n) {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        return g;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw InputError("vertex " + std::to_string(v) + " out of range [0," +
                             std::to_string(n_) + ")");
    }

    void check_subset(const Bitset& s) const {
        if (s.universe() != n_) throw InputError("vertex set universe mismatch");
    }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
};

// ---- subgraph queries -------------------------------------------------

// Induced subgraph on S, relabeled to 0..|S|-1 in increasing vertex order.
inline Graph induced_subgraph(const Graph& g, const Bitset& s) {
    g.check_subset(s);
    std::vector<int> verts = s.to_vector();
    Graph h(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.adjacent(verts[i], verts[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    return h;
}

// Link of v inside S: neighbors of v restricted to S.
inline Bitset link_in(const Graph& g, int v, const Bitset& s) {
    g.check_vertex(v);
    g.check_subset(s);
    return g.neighbors(v) & s;
}

// Every pair in S adjacent; vacuously true for |S| <= 1.
inline bool is_clique(const Graph& g, const Bitset& s) {
    g.check_subset(s);
    for (int v = s.first(); v != -1; v = s.next(v)) {
        Bitset missing = s;
        missing.subtract(g.neighbors(v));
        missing.reset(v);
        if (missing.any()) return false;
    }
    return true;
}

// Some nonadjacent pair inside S, if one exists.  Presence of a witness is
// the complement of is_clique for |S| >= 2.
inline std::optional<std::pair<int, int>> nonadjacent_pair(const Graph& g, const Bitset& s) {
    g.check_subset(s);
    for (int v = s.first(); v != -1; v = s.next(v)) {
        Bitset missing = s;
        missing.subtract(g.neighbors(v));
        missing.reset(v);
        int w = missing.first();
        if (w != -1) return std::make_pair(std::min(v, w), std::max(v, w));
    }
    return std::nullopt;
}

// ---- structure queries ------------------------------------------------

inline std::vector<Bitset> components(const Graph& g) {
    int n = g.size();
    std::vector<Bitset> out;
    Bitset remaining = Bitset::full(n);
    while (remaining.any()) {
        int start = remaining.first();
        Bitset comp(n), frontier(n);
        frontier.set(start);
        while (frontier.any()) {
            comp |= frontier;
            remaining.subtract(frontier);
            Bitset next(n);
            frontier.for_each([&](int v) { next |= g.neighbors(v); });
            next &= remaining;
            frontier = next;
        }
        out.push_back(comp);
    }
    return out;
}

// Connected components of the edge-complement, computed without
// materializing the complement (frontier expands into remaining \ N(v)).
inline std::vector<Bitset> complement_components(const Graph& g) {
    int n = g.size();
    std::vector<Bitset> out;
    Bitset remaining = Bitset::full(n);
    while (remaining.any()) {
        int start = remaining.first();
        Bitset comp(n);
        std::vector<int> stack{start};
        comp.set(start);
        remaining.reset(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bitset reach = remaining;
            reach.subtract(g.neighbors(v));
            reach.for_each([&](int w) { stack.push_back(w); });
            comp |= reach;
            remaining.subtract(reach);
        }
        out.push_back(comp);
    }
    return out;
}

inline Bitset universal_vertices(const Graph& g) {
    int n = g.size();
    Bitset out(n);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == n - 1) out.set(v);
    return out;
}

inline long missing_edge_count(const Graph& g) {
    long n = g.size();
    return n * (n - 1) / 2 - g.edge_count();
}

inline std::vector<std::pair<int, int>> missing_edges(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < g.size(); ++u) {
        Bitset non = g.neighbors(u).complement();
        for (int v = non.next(u); v != -1; v = non.next(v)) out.emplace_back(u, v);
    }
    return out;
}

struct ComponentInfo {
    Bitset members;
    int size = 0;
    long edges = 0;
    bool is_tree = false;       // edges == size - 1
    bool is_unicyclic = false;  // edges == size
};

inline std::vector<ComponentInfo> component_census(const Graph& g) {
    std::vector<ComponentInfo> out;
    for (auto& comp : components(g)) {
        ComponentInfo info;
        info.members = comp;
        info.size = comp.count();
        long twice = 0;
        comp.for_each([&](int v) { twice += link_in(g, v, comp).count(); });
        info.edges = twice / 2;
        info.is_tree = info.edges == info.size - 1;
        info.is_unicyclic = info.edges == info.size;
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace coxtk

#endif
