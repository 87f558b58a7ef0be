// racg.hpp - deciding thickness vs relative hyperbolicity for right-angled
// Coxeter presentation graphs
//
// The driver is a fixed-point computation over a pool of vertex subsets known
// to induce thick subgraphs: seed with the induced squares, then repeatedly
// (union) merge two members whose intersection contains a nonadjacent pair,
// and (cone) absorb any vertex with two nonadjacent neighbors in a member.
// The set of maximal members at the fixed point is independent of the order
// in which steps are applied.
#ifndef COXTK_RACG_HPP
#define COXTK_RACG_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coxtk/graph.hpp"
#include "coxtk/patterns.hpp"

namespace coxtk {

enum class RacgStatus {
    Finite,
    VirtuallyCyclic,
    Thick,
    Hyperbolic,
    RelativelyHyperbolic,
};

inline const char* to_string(RacgStatus s) {
    switch (s) {
        case RacgStatus::Finite: return "Finite";
        case RacgStatus::VirtuallyCyclic: return "VirtuallyCyclic";
        case RacgStatus::Thick: return "Thick";
        case RacgStatus::Hyperbolic: return "Hyperbolic";
        case RacgStatus::RelativelyHyperbolic: return "RelativelyHyperbolic";
    }
    return "?";
}

struct RacgReport {
    RacgStatus status = RacgStatus::Finite;
    bool order0 = false;                // meaningful when status == Thick
    std::vector<Bitset> peripherals;    // nonempty iff RelativelyHyperbolic
    std::vector<Bitset> pool;           // maximal fixed-point members (derivation evidence)
};

namespace detail {

// S contains a nonadjacent pair (|S| >= 2 and not a clique).
inline bool has_nonadjacent_pair(const Graph& g, const Bitset& s) {
    for (int v = s.first(); v != -1; v = s.next(v)) {
        Bitset miss = s;
        miss.subtract(g.neighbors(v));
        miss.reset(v);
        if (miss.any()) return true;
    }
    return false;
}

class ThickPoolEngine {
public:
    explicit ThickPoolEngine(const Graph& g) : g_(g) {}

    // Merge-insert: fold in every existing member whose intersection with x
    // contains a nonadjacent pair, then drop members the result swallows.
    // Scanned newest-first; large members accumulate at the back, so in the
    // typical near-thick case this hits the big member immediately.
    void insert(Bitset x) {
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = pool_.size(); i-- > 0;) {
                Bitset inter = pool_[i] & x;
                if (has_nonadjacent_pair(g_, inter)) {
                    x |= pool_[i];
                    pool_[i] = std::move(pool_.back());
                    pool_.pop_back();
                    merged = true;
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < pool_.size();) {
            if (pool_[i].is_subset_of(x)) {
                pool_[i] = std::move(pool_.back());
                pool_.pop_back();
            } else if (x.is_subset_of(pool_[i])) {
                return;
            } else {
                ++i;
            }
        }
        pool_.push_back(std::move(x));
    }

    // Seed with the union, per nonadjacent pair (u,w), of all squares having
    // (u,w) as a diagonal: those squares pairwise intersect in {u,w}, so
    // they merge immediately and can be inserted as one block.
    void seed_square_blocks() {
        int n = g_.size();
        for (int u = 0; u < n; ++u) {
            Bitset nonadj = g_.neighbors(u).complement();
            for (int w = nonadj.next(u); w != -1; w = nonadj.next(w)) {
                Bitset common = g_.neighbors(u) & g_.neighbors(w);
                if (common.count() < 2) continue;
                Bitset block(n);
                for (int t = common.first(); t != -1; t = common.next(t)) {
                    Bitset rest = common;
                    rest.subtract(g_.neighbors(t));
                    rest.reset(t);
                    if (rest.any()) {
                        block.set(t);
                        block |= rest;
                    }
                }
                if (block.any()) {
                    block.set(u);
                    block.set(w);
                    insert(std::move(block));
                }
            }
        }
    }

    // Absorb every vertex whose link in the member contains a nonadjacent
    // pair; returns whether anything was added.
    bool cone_member(Bitset& m) {
        bool grew = false;
        bool pass_changed = true;
        while (pass_changed) {
            pass_changed = false;
            Bitset candidates(g_.size());
            m.for_each([&](int v) { candidates |= g_.neighbors(v); });
            candidates.subtract(m);
            Bitset additions(g_.size());
            candidates.for_each([&](int v) {
                Bitset lk = g_.neighbors(v) & m;
                if (has_nonadjacent_pair(g_, lk)) additions.set(v);
            });
            if (additions.any()) {
                m |= additions;
                grew = pass_changed = true;
            }
        }
        return grew;
    }

    void run_to_fixed_point() {
        seed_square_blocks();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pool_.size(); ++i)
                if (cone_member(pool_[i])) changed = true;
            if (changed) remerge();
        }
    }

    std::vector<Bitset> take_sorted() {
        std::sort(pool_.begin(), pool_.end());
        return std::move(pool_);
    }

private:
    void remerge() {
        std::vector<Bitset> old;
        old.swap(pool_);
        for (auto& m : old) insert(std::move(m));
    }

    const Graph& g_;
    std::vector<Bitset> pool_;
};

}  // namespace detail

// Fixed-point pool for g; members are the maximal thick-derivable subsets,
// sorted canonically.
inline std::vector<Bitset> thick_fixed_point(const Graph& g) {
    detail::ThickPoolEngine engine(g);
    engine.run_to_fixed_point();
    return engine.take_sorted();
}

// Same fixed point, but seeds are shuffled and union/cone steps are applied
// one at a time in random order.  Used by the confluence property tests;
// only sensible for small graphs.
inline std::vector<Bitset> thick_fixed_point_randomized(const Graph& g, std::mt19937_64& rng) {
    int n = g.size();
    std::vector<Bitset> pool;
    for (auto& sq : induced_squares(g)) {
        Bitset b(n);
        for (int v : sq) b.set(v);
        pool.push_back(b);
    }
    std::shuffle(pool.begin(), pool.end(), rng);

    struct Move {
        bool is_union;
        std::size_t i, j;  // union: members i,j ; cone: member i, vertex j
    };
    while (true) {
        std::vector<Move> moves;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            for (std::size_t j = i + 1; j < pool.size(); ++j)
                if (detail::has_nonadjacent_pair(g, pool[i] & pool[j]))
                    moves.push_back({true, i, j});
            for (int v = 0; v < n; ++v) {
                if (pool[i].test(v)) continue;
                if (detail::has_nonadjacent_pair(g, g.neighbors(v) & pool[i]))
                    moves.push_back({false, i, static_cast<std::size_t>(v)});
            }
        }
        if (moves.empty()) break;
        Move mv = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
        if (mv.is_union) {
            pool[mv.i] |= pool[mv.j];
            pool.erase(pool.begin() + static_cast<long>(mv.j));
        } else {
            pool[mv.i].set(static_cast<int>(mv.j));
        }
        // drop exact duplicates so the move list stays small
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        std::shuffle(pool.begin(), pool.end(), rng);
    }

    // keep maximal members only
    std::vector<Bitset> maximal;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pool.size() && !dominated; ++j)
            if (i != j && pool[i].is_subset_of(pool[j]) && pool[i] != pool[j]) dominated = true;
        if (!dominated) maximal.push_back(pool[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    return maximal;
}

// Wide case: after deleting the universal vertices, the rest is nonempty and
// its complement is disconnected, i.e. g = (A join B) join K with A, B not
// cliques and K a clique.
inline bool is_thick_order0(const Graph& g) {
    Bitset rem = universal_vertices(g).complement();
    if (rem.none()) return false;
    // complement components within rem
    int comps = 0;
    Bitset remaining = rem;
    while (remaining.any()) {
        ++comps;
        if (comps >= 2) return true;
        int start = remaining.first();
        std::vector<int> stack{start};
        remaining.reset(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bitset reach = remaining;
            reach.subtract(g.neighbors(v));
            reach.for_each([&](int w) { stack.push_back(w); });
            remaining.subtract(reach);
        }
    }
    return false;
}

// Status precedence: complete -> Finite; one missing edge -> VirtuallyCyclic;
// pool spanning all vertices -> Thick; empty pool -> Hyperbolic (no induced
// square); otherwise RelativelyHyperbolic with the maximal pool members as
// peripherals.
inline RacgReport classify_racg(const Graph& g) {
    RacgReport r;
    long missing = missing_edge_count(g);
    if (missing == 0) {
        r.status = RacgStatus::Finite;
        return r;
    }
    if (missing == 1) {
        r.status = RacgStatus::VirtuallyCyclic;
        return r;
    }
    r.pool = thick_fixed_point(g);
    bool spans = false;
    for (auto& m : r.pool)
        if (m.count() == g.size()) spans = true;
    if (spans) {
        r.status = RacgStatus::Thick;
        r.order0 = is_thick_order0(g);
    } else if (r.pool.empty()) {
        r.status = RacgStatus::Hyperbolic;
    } else {
        r.status = RacgStatus::RelativelyHyperbolic;
        r.peripherals = r.pool;
    }
    return r;
}

// Definitional oracle: dynamic program over all vertex subsets.  X is
// thick-derivable iff X induces a square; or X = Y + v with Y derivable and
// the link of v in Y containing a nonadjacent pair; or X = Y1 ∪ Y2 with both
// derivable and Y1 ∩ Y2 containing a nonadjacent pair.  Exponential; guarded.
inline bool oracle_in_T(const Graph& g, int limit = 7) {
    int n = g.size();
    if (n > limit)
        throw GuardExceeded("oracle_in_T limited to " + std::to_string(limit) + " vertices, got " +
                            std::to_string(n));
    if (n < 4) return false;

    std::vector<std::uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && g.adjacent(u, v)) adj[u] |= std::uint32_t{1} << v;

    std::uint32_t all = (std::uint32_t{1} << n) - 1;
    std::vector<char> nonclique(std::size_t{all} + 1, 0), derivable(std::size_t{all} + 1, 0);
    for (std::uint64_t mm = 0; mm <= all; ++mm) {
        auto m = static_cast<std::uint32_t>(mm);
        for (std::uint32_t rest = m; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (m & ~adj[v] & ~(std::uint32_t{1} << v)) {
                nonclique[m] = 1;
                break;
            }
        }
    }

    auto is_square = [&](std::uint32_t m) {
        for (std::uint32_t rest = m; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if (std::popcount(adj[v] & m) != 2) return false;
        }
        return true;
    };

    for (std::uint64_t mm = 0; mm <= all; ++mm) {
        auto m = static_cast<std::uint32_t>(mm);
        if (std::popcount(m) < 4) continue;
        bool der = std::popcount(m) == 4 && is_square(m);
        if (!der) {  // cone
            for (std::uint32_t rest = m; rest && !der;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                std::uint32_t base = m & ~(std::uint32_t{1} << v);
                if (derivable[base] && nonclique[adj[v] & base]) der = true;
            }
        }
        if (!der) {  // union over proper submask pairs
            for (std::uint32_t s = (m - 1) & m; s && !der; s = (s - 1) & m) {
                if (!derivable[s]) continue;
                std::uint32_t need = m & ~s;
                for (std::uint32_t t = s;; t = (t - 1) & s) {
                    if (nonclique[t] && derivable[need | t]) {
                        der = true;
                        break;
                    }
                    if (t == 0) break;
                }
            }
        }
        derivable[m] = der;
    }
    return derivable[all] != 0;
}

// Straightforward transcription of the simple polynomial decision procedure:
// list every induced square by a quadruple scan, then alternate full union
// and coning subroutines until nothing changes; thick iff a member spans.
// Kept as a cross-check for the production path above.
inline bool reference_is_thick(const Graph& g, int limit = 30) {
    int n = g.size();
    if (n > limit)
        throw GuardExceeded("reference_is_thick limited to " + std::to_string(limit) + " vertices");

    std::vector<Bitset> members;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            if (u == w || g.adjacent(u, w)) continue;
            for (int t = 0; t < n; ++t) {
                if (t == u || t == w) continue;
                for (int x = 0; x < n; ++x) {
                    if (x == t || x == u || x == w || g.adjacent(t, x)) continue;
                    if (g.adjacent(u, t) && g.adjacent(u, x) && g.adjacent(w, t) && g.adjacent(w, x)) {
                        Bitset sq(n);
                        sq.set(u);
                        sq.set(w);
                        sq.set(t);
                        sq.set(x);
                        if (std::find(members.begin(), members.end(), sq) == members.end())
                            members.push_back(sq);
                    }
                }
            }
        }

    bool changed = true;
    while (changed) {
        changed = false;
        // union subroutine
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < members.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < members.size() && !merged; ++j)
                    if (detail::has_nonadjacent_pair(g, members[i] & members[j])) {
                        members[i] |= members[j];
                        members.erase(members.begin() + static_cast<long>(j));
                        merged = changed = true;
                    }
        }
        // coning subroutine
        for (auto& m : members)
            for (int v = 0; v < n; ++v) {
                if (m.test(v)) continue;
                if (detail::has_nonadjacent_pair(g, g.neighbors(v) & m)) {
                    m.set(v);
                    changed = true;
                }
            }
    }

    for (auto& m : members)
        if (m.count() == n) return true;
    return false;
}

}  // namespace coxtk

#endif
