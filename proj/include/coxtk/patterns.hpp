// patterns.hpp - induced-square enumeration, K_{2,3} detection, clique
// counting and separating-clique search
#ifndef COXTK_PATTERNS_HPP
#define COXTK_PATTERNS_HPP

#include <array>
#include <algorithm>
#include <vector>

#include "coxtk/graph.hpp"

namespace coxtk {

// All induced K_{2,2} subgraphs, each 4-set listed once (sorted vertices).
//
// Strategy: a square has two nonadjacent "diagonal" pairs.  For each
// nonadjacent pair (u,w), squares through that diagonal are exactly the
// nonadjacent pairs inside N(u) ∩ N(w).  At density Θ(log n / n) the common
// neighborhoods are O(1), so this stays near-quadratic instead of the naive
// O(n^4) quadruple scan.  Each square is seen from both diagonals; keep it
// only when (u,w) is the lexicographically smaller diagonal.
inline std::vector<std::array<int, 4>> induced_squares(const Graph& g) {
    int n = g.size();
    std::vector<std::array<int, 4>> out;
    for (int u = 0; u < n; ++u) {
        Bitset nonadj = g.neighbors(u).complement();
        for (int w = nonadj.next(u); w != -1; w = nonadj.next(w)) {
            Bitset common = g.neighbors(u) & g.neighbors(w);
            if (common.count() < 2) continue;
            for (int t = common.first(); t != -1; t = common.next(t)) {
                Bitset rest = common;
                rest.subtract(g.neighbors(t));
                for (int x = rest.next(t); x != -1; x = rest.next(x)) {
                    if (std::make_pair(u, w) < std::make_pair(t, x)) {
                        std::array<int, 4> sq{u, w, t, x};
                        std::sort(sq.begin(), sq.end());
                        out.push_back(sq);
                    }
                }
            }
        }
    }
    return out;
}

inline bool contains_induced_square(const Graph& g) {
    int n = g.size();
    for (int u = 0; u < n; ++u) {
        Bitset nonadj = g.neighbors(u).complement();
        for (int w = nonadj.next(u); w != -1; w = nonadj.next(w)) {
            Bitset common = g.neighbors(u) & g.neighbors(w);
            if (common.count() < 2) continue;
            for (int t = common.first(); t != -1; t = common.next(t)) {
                Bitset rest = common;
                rest.subtract(g.neighbors(t));
                if (rest.next(t) != -1) return true;
            }
        }
    }
    return false;
}

// K_{2,3} as a subgraph (not necessarily induced): some vertex pair with at
// least three common neighbors.  Extra edges inside either side are allowed;
// this is the containment the square-or-K23 dichotomy for thick graphs uses.
inline bool contains_k23(const Graph& g) {
    int n = g.size();
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) {
            Bitset common = g.neighbors(u) & g.neighbors(w);
            if (common.count() >= 3) return true;
        }
    return false;
}

namespace detail {

inline void count_clique_extensions(const Graph& g, const Bitset& cand, long& count) {
    for (int v = cand.first(); v != -1; v = cand.next(v)) {
        ++count;
        // only vertices above v, so each clique is built once in increasing order
        Bitset next = cand & g.neighbors(v);
        next.remove_at_most(v);
        if (next.any()) count_clique_extensions(g, next, count);
    }
}

}  // namespace detail

// Number of vertex subsets of size >= 2 inducing complete subgraphs, counted
// by recursive extension: grow cliques one vertex at a time in increasing
// order, adding one to the count per successful extension.
inline long count_cliques_ge2(const Graph& g) {
    long count = 0;
    for (int v = 0; v < g.size(); ++v) {
        Bitset cand(g.size());
        const Bitset& nb = g.neighbors(v);
        for (int w = nb.next(v); w != -1; w = nb.next(w)) cand.set(w);
        if (cand.any()) detail::count_clique_extensions(g, cand, count);
    }
    return count;
}

namespace detail {

// Exact clique number by branch and bound; fine at the scales where
// separating-clique search is used.
inline void max_clique_rec(const Graph& g, Bitset cand, int depth, int& best) {
    best = std::max(best, depth);
    while (cand.any()) {
        if (depth + cand.count() <= best) return;
        int v = cand.first();
        cand.reset(v);
        max_clique_rec(g, cand & g.neighbors(v), depth + 1, best);
    }
}

inline int clique_number(const Graph& g, const Bitset& within) {
    int best = 0;
    max_clique_rec(g, within, 0, best);
    return best;
}

template <typename F>
inline bool enumerate_cliques_up_to(const Graph& g, Bitset clique, Bitset cand, int max_size, F&& visit) {
    if (visit(clique)) return true;
    if (clique.count() >= max_size) return false;
    for (int v = cand.first(); v != -1; v = cand.next(v)) {
        Bitset c2 = clique;
        c2.set(v);
        Bitset next = cand & g.neighbors(v);
        next.remove_at_most(v);
        if (enumerate_cliques_up_to(g, c2, next, max_size, visit)) return true;
    }
    return false;
}

inline bool connected_avoiding(const Graph& g, const Bitset& removed) {
    int n = g.size();
    Bitset remaining = Bitset::full(n);
    remaining.subtract(removed);
    if (remaining.none()) return true;  // nothing left to disconnect
    int start = remaining.first();
    Bitset frontier(n);
    frontier.set(start);
    remaining.reset(start);
    while (frontier.any()) {
        Bitset next(n);
        frontier.for_each([&](int v) { next |= g.neighbors(v); });
        next &= remaining;
        remaining.subtract(next);
        frontier = next;
    }
    return remaining.none();
}

}  // namespace detail

// Bound used when the caller does not give one: one more than the largest
// clique found inside any vertex neighborhood, capped at 20.  A separating
// clique extends to a clique inside the neighborhood of any vertex adjacent
// to all of it, so small bounds suffice at the densities of interest.
inline int default_separating_clique_bound(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.size(); ++v)
        best = std::max(best, detail::clique_number(g, g.neighbors(v)));
    return std::min(best + 1, 20);
}

enum class SeparatingCliqueOutcome {
    AlreadyDisconnected,  // the empty set separates; reported distinctly
    Found,
    None,
};

struct SeparatingCliqueResult {
    SeparatingCliqueOutcome outcome;
    Bitset clique;  // witness when outcome == Found
    bool found() const { return outcome == SeparatingCliqueOutcome::Found; }
};

// True outcome iff removing some clique with at most max_clique_size vertices
// (sizes 0 and 1 included) disconnects g.
inline SeparatingCliqueResult has_separating_clique(const Graph& g, int max_clique_size) {
    SeparatingCliqueResult res{SeparatingCliqueOutcome::None, Bitset(g.size())};
    if (components(g).size() > 1) {
        res.outcome = SeparatingCliqueOutcome::AlreadyDisconnected;
        return res;
    }
    Bitset empty(g.size());
    detail::enumerate_cliques_up_to(g, empty, Bitset::full(g.size()), max_clique_size,
                                    [&](const Bitset& k) {
                                        if (k.count() >= g.size() - 1) return false;
                                        if (!detail::connected_avoiding(g, k)) {
                                            res.outcome = SeparatingCliqueOutcome::Found;
                                            res.clique = k;
                                            return true;
                                        }
                                        return false;
                                    });
    return res;
}

inline SeparatingCliqueResult has_separating_clique(const Graph& g) {
    return has_separating_clique(g, default_separating_clique_bound(g));
}

}  // namespace coxtk

#endif
