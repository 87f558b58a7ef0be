// coxeter.hpp - general Coxeter systems: the label matrix, exact
// classification of irreducible diagrams as spherical / affine / indefinite,
// and the subset predicates built on it
#ifndef COXTK_COXETER_HPP
#define COXTK_COXETER_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxtk/graph.hpp"

namespace coxtk {

// m_st = infinite_bond means no relation between s and t.
inline constexpr std::uint32_t infinite_bond = 0xFFFFFFFFu;

// Symmetric label matrix of a Coxeter system (W,S): m_ss = 1 and, for s != t,
// m_st in {2,3,...} or infinite.  The diagram has an edge st iff m_st != 2;
// its connected components are the irreducible pieces.
class CoxeterMatrix {
public:
    CoxeterMatrix() = default;

    explicit CoxeterMatrix(int n, std::uint32_t off_diagonal = 2)
        : n_(n), m_(static_cast<std::size_t>(n) * n, off_diagonal), diagram_adj_(n, Bitset(n)) {
        for (int s = 0; s < n; ++s) m_[idx(s, s)] = 1;
        rebuild_diagram();
    }

    int rank() const { return n_; }

    std::uint32_t label(int s, int t) const {
        check(s);
        check(t);
        return m_[idx(s, t)];
    }

    void set_label(int s, int t, std::uint32_t m) {
        check(s);
        check(t);
        if (s == t) throw InputError("diagonal labels are fixed at 1");
        if (m != infinite_bond && m < 2) throw InputError("off-diagonal label must be >= 2 or infinite");
        m_[idx(s, t)] = m;
        m_[idx(t, s)] = m;
        rebuild_diagram();
    }

    // Neighbors of s in the diagram (pairs with m_st != 2).
    const Bitset& diagram_neighbors(int s) const {
        check(s);
        return diagram_adj_[s];
    }

    // Generators commuting with everything in K, excluding K itself.
    Bitset perp(const Bitset& k) const {
        if (k.universe() != n_) throw InputError("vertex set universe mismatch");
        Bitset out = Bitset::full(n_);
        k.for_each([&](int s) {
            Bitset allowed = diagram_adj_[s].complement();
            allowed.reset(s);
            out &= allowed;
        });
        out.subtract(k);
        return out;
    }

    // Presentation-graph translation: commuting pairs are graph edges.
    static CoxeterMatrix from_racg(const Graph& g) {
        CoxeterMatrix m(g.size(), infinite_bond);
        for (auto [u, v] : g.edges()) m.m_[m.idx(u, v)] = m.m_[m.idx(v, u)] = 2;
        m.rebuild_diagram();
        return m;
    }

    void check(int s) const {
        if (s < 0 || s >= n_)
            throw InputError("generator " + std::to_string(s) + " out of range [0," +
                             std::to_string(n_) + ")");
    }

    void check_subset(const Bitset& s) const {
        if (s.universe() != n_) throw InputError("vertex set universe mismatch");
    }

private:
    std::size_t idx(int s, int t) const { return static_cast<std::size_t>(s) * n_ + t; }

    void rebuild_diagram() {
        for (int s = 0; s < n_; ++s) {
            Bitset nb(n_);
            for (int t = 0; t < n_; ++t)
                if (t != s && m_[idx(s, t)] != 2) nb.set(t);
            diagram_adj_[s] = nb;
        }
    }

    int n_ = 0;
    std::vector<std::uint32_t> m_;
    std::vector<Bitset> diagram_adj_;
};

// ---- diagram components ------------------------------------------------

inline std::vector<Bitset> diagram_components(const CoxeterMatrix& m, const Bitset& j) {
    m.check_subset(j);
    std::vector<Bitset> out;
    Bitset remaining = j;
    while (remaining.any()) {
        int start = remaining.first();
        Bitset comp(m.rank()), frontier(m.rank());
        frontier.set(start);
        while (frontier.any()) {
            comp |= frontier;
            remaining.subtract(frontier);
            Bitset next(m.rank());
            frontier.for_each([&](int s) { next |= m.diagram_neighbors(s); });
            next &= remaining;
            frontier = next;
        }
        out.push_back(comp);
    }
    return out;
}

// ---- classification of irreducible diagrams ----------------------------

enum class DiagramFamily {
    // finite (spherical) families
    A,
    B,
    D,
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2,
    // irreducible affine families
    TildeA1,
    TildeA,
    TildeB,
    TildeC,
    TildeD,
    TildeE6,
    TildeE7,
    TildeE8,
    TildeF4,
    TildeG2,
    Indefinite,
};

struct IrreducibleType {
    DiagramFamily family = DiagramFamily::Indefinite;
    int rank = 0;            // number of generators in the component
    std::uint32_t m = 0;     // bond label for I2(m)

    bool is_finite() const {
        switch (family) {
            case DiagramFamily::A:
            case DiagramFamily::B:
            case DiagramFamily::D:
            case DiagramFamily::E6:
            case DiagramFamily::E7:
            case DiagramFamily::E8:
            case DiagramFamily::F4:
            case DiagramFamily::H3:
            case DiagramFamily::H4:
            case DiagramFamily::I2: return true;
            default: return false;
        }
    }

    bool is_affine() const { return !is_finite() && family != DiagramFamily::Indefinite; }

    std::string to_string() const {
        switch (family) {
            case DiagramFamily::A: return "A" + std::to_string(rank);
            case DiagramFamily::B: return "B" + std::to_string(rank);
            case DiagramFamily::D: return "D" + std::to_string(rank);
            case DiagramFamily::E6: return "E6";
            case DiagramFamily::E7: return "E7";
            case DiagramFamily::E8: return "E8";
            case DiagramFamily::F4: return "F4";
            case DiagramFamily::H3: return "H3";
            case DiagramFamily::H4: return "H4";
            case DiagramFamily::I2: return "I2(" + std::to_string(m) + ")";
            case DiagramFamily::TildeA1: return "~A1";
            case DiagramFamily::TildeA: return "~A" + std::to_string(rank - 1);
            case DiagramFamily::TildeB: return "~B" + std::to_string(rank - 1);
            case DiagramFamily::TildeC: return "~C" + std::to_string(rank - 1);
            case DiagramFamily::TildeD: return "~D" + std::to_string(rank - 1);
            case DiagramFamily::TildeE6: return "~E6";
            case DiagramFamily::TildeE7: return "~E7";
            case DiagramFamily::TildeE8: return "~E8";
            case DiagramFamily::TildeF4: return "~F4";
            case DiagramFamily::TildeG2: return "~G2";
            case DiagramFamily::Indefinite: return "indefinite";
        }
        return "?";
    }
};

namespace detail {

inline IrreducibleType make_type(DiagramFamily f, int rank, std::uint32_t m = 0) {
    return IrreducibleType{f, rank, m};
}

// Classify a path by its ordered bond labels (all finite, >= 3).
inline IrreducibleType classify_path(const std::vector<std::uint32_t>& labels) {
    int k = static_cast<int>(labels.size()) + 1;  // vertex count
    int n3 = 0, n4 = 0, n5 = 0, n6 = 0, nbig = 0;
    for (auto l : labels) {
        if (l == 3) ++n3;
        else if (l == 4) ++n4;
        else if (l == 5) ++n5;
        else if (l == 6) ++n6;
        else ++nbig;
    }
    int e = static_cast<int>(labels.size());
    auto at_end = [&](std::uint32_t value) { return labels.front() == value || labels.back() == value; };

    if (nbig > 0) return make_type(DiagramFamily::Indefinite, k);
    if (n4 + n5 + n6 == 0) return make_type(DiagramFamily::A, k);
    if (n4 == 1 && n5 + n6 == 0) {
        if (at_end(4)) return make_type(DiagramFamily::B, k);
        if (k == 4 && labels[1] == 4) return make_type(DiagramFamily::F4, k);
        if (k == 5 && (labels[1] == 4 || labels[2] == 4)) return make_type(DiagramFamily::TildeF4, k);
        return make_type(DiagramFamily::Indefinite, k);
    }
    if (n4 == 2 && n5 + n6 == 0 && labels.front() == 4 && labels.back() == 4 && n3 == e - 2)
        return make_type(DiagramFamily::TildeC, k);
    if (n5 == 1 && n4 + n6 == 0 && at_end(5)) {
        if (k == 3) return make_type(DiagramFamily::H3, k);
        if (k == 4) return make_type(DiagramFamily::H4, k);
    }
    if (n6 == 1 && n4 + n5 == 0 && at_end(6) && k == 3) return make_type(DiagramFamily::TildeG2, k);
    return make_type(DiagramFamily::Indefinite, k);
}

}  // namespace detail

// Exact table-driven classification of one diagram component.  The component
// must be connected in the diagram; the numeric positive-(semi)definiteness
// of the cosine matrix is only a test oracle, never consulted here.
inline IrreducibleType classify_component(const CoxeterMatrix& mat, const Bitset& k_set) {
    mat.check_subset(k_set);
    auto comps = diagram_components(mat, k_set);
    if (comps.size() != 1 || comps[0] != k_set)
        throw InputError("classify_component requires a single connected diagram component");

    std::vector<int> verts = k_set.to_vector();
    int k = static_cast<int>(verts.size());
    if (k == 1) return detail::make_type(DiagramFamily::A, 1);
    if (k == 2) {
        std::uint32_t m = mat.label(verts[0], verts[1]);
        if (m == infinite_bond) return detail::make_type(DiagramFamily::TildeA1, 2);
        if (m == 3) return detail::make_type(DiagramFamily::A, 2);
        if (m == 4) return detail::make_type(DiagramFamily::B, 2);
        return detail::make_type(DiagramFamily::I2, 2, m);
    }

    // rank >= 3: an infinite bond dominates everything in the tables
    long edge_twice = 0;
    for (int v : verts) {
        Bitset nb = mat.diagram_neighbors(v) & k_set;
        edge_twice += nb.count();
        for (int w = nb.first(); w != -1; w = nb.next(w))
            if (mat.label(v, w) == infinite_bond) return detail::make_type(DiagramFamily::Indefinite, k);
    }
    long edges = edge_twice / 2;

    if (edges >= k) {
        // only the all-3 cycle survives among diagrams with a circuit
        bool cycle_of_threes = edges == k;
        for (int v : verts) {
            Bitset nb = mat.diagram_neighbors(v) & k_set;
            if (nb.count() != 2) cycle_of_threes = false;
            for (int w = nb.first(); w != -1; w = nb.next(w))
                if (mat.label(v, w) != 3) cycle_of_threes = false;
        }
        return cycle_of_threes ? detail::make_type(DiagramFamily::TildeA, k)
                               : detail::make_type(DiagramFamily::Indefinite, k);
    }

    // tree: look at branch vertices
    std::vector<int> degree(k);
    int branch = -1, branch2 = -1, max_degree = 0;
    for (int i = 0; i < k; ++i) {
        degree[i] = (mat.diagram_neighbors(verts[i]) & k_set).count();
        max_degree = std::max(max_degree, degree[i]);
        if (degree[i] >= 3) {
            if (branch == -1) branch = i;
            else if (branch2 == -1) branch2 = i;
            else return detail::make_type(DiagramFamily::Indefinite, k);  // three branch points
        }
    }

    bool all_threes = true;
    std::uint32_t the_only_four = 0;
    int non_three = 0;
    std::pair<int, int> four_edge{-1, -1};
    for (int v : verts) {
        Bitset nb = mat.diagram_neighbors(v) & k_set;
        for (int w = nb.next(v); w != -1; w = nb.next(w)) {
            std::uint32_t l = mat.label(v, w);
            if (l != 3) {
                all_threes = false;
                ++non_three;
                the_only_four = l;
                four_edge = {v, w};
            }
        }
    }

    if (max_degree >= 4) {
        bool star4 = k == 5 && max_degree == 4 && all_threes;
        return star4 ? detail::make_type(DiagramFamily::TildeD, k)
                     : detail::make_type(DiagramFamily::Indefinite, k);
    }

    if (branch2 != -1) {
        // two branch vertices: only the doubly forked all-3 chain survives
        if (!all_threes) return detail::make_type(DiagramFamily::Indefinite, k);
        for (int b : {branch, branch2}) {
            Bitset nb = mat.diagram_neighbors(verts[b]) & k_set;
            int leaves = 0;
            for (int w = nb.first(); w != -1; w = nb.next(w)) {
                int wi = static_cast<int>(std::find(verts.begin(), verts.end(), w) - verts.begin());
                if (degree[wi] == 1) ++leaves;
            }
            if (leaves < 2) return detail::make_type(DiagramFamily::Indefinite, k);
        }
        return detail::make_type(DiagramFamily::TildeD, k);
    }

    if (branch != -1) {
        // single degree-3 branch vertex: measure the three leg lengths
        int b = verts[branch];
        Bitset nb = mat.diagram_neighbors(b) & k_set;
        struct Leg {
            int len;
            bool four_tip;
        };
        std::vector<Leg> leg_info;
        for (int start = nb.first(); start != -1; start = nb.next(start)) {
            int len = 1, prev = b, cur = start;
            while (true) {
                Bitset next = mat.diagram_neighbors(cur) & k_set;
                next.reset(prev);
                if (next.none()) break;
                prev = cur;
                cur = next.first();
                ++len;
            }
            bool four_tip = false;  // tip edge of this leg is (prev, cur)
            if (four_edge.first != -1) {
                auto [fu, fv] = four_edge;
                four_tip = (fu == prev && fv == cur) || (fu == cur && fv == prev);
            }
            leg_info.push_back({len, four_tip});
        }
        std::vector<int> legs{leg_info[0].len, leg_info[1].len, leg_info[2].len};
        std::sort(legs.begin(), legs.end());
        int a = legs[0], bb = legs[1], c = legs[2];

        if (all_threes) {
            if (a == 1 && bb == 1) return detail::make_type(DiagramFamily::D, k);
            if (a == 1 && bb == 2 && c == 2) return detail::make_type(DiagramFamily::E6, k);
            if (a == 1 && bb == 2 && c == 3) return detail::make_type(DiagramFamily::E7, k);
            if (a == 1 && bb == 2 && c == 4) return detail::make_type(DiagramFamily::E8, k);
            if (a == 2 && bb == 2 && c == 2) return detail::make_type(DiagramFamily::TildeE6, k);
            if (a == 1 && bb == 3 && c == 3) return detail::make_type(DiagramFamily::TildeE7, k);
            if (a == 1 && bb == 2 && c == 5) return detail::make_type(DiagramFamily::TildeE8, k);
            return detail::make_type(DiagramFamily::Indefinite, k);
        }
        // one label-4 bond, placed at the tip of the unique longest leg of a
        // (1,1,c) fork; two short legs must be simple
        if (non_three == 1 && the_only_four == 4 && a == 1 && bb == 1)
            for (auto& leg : leg_info)
                if (leg.four_tip && leg.len == c)
                    return detail::make_type(DiagramFamily::TildeB, k);
        return detail::make_type(DiagramFamily::Indefinite, k);
    }

    // plain path: walk it from an endpoint and classify the label word
    int endpoint = -1;
    for (int i = 0; i < k; ++i)
        if (degree[i] == 1) endpoint = verts[i];
    std::vector<std::uint32_t> labels;
    int prev = -1, cur = endpoint;
    for (int step = 0; step + 1 < k; ++step) {
        Bitset next = mat.diagram_neighbors(cur) & k_set;
        if (prev != -1) next.reset(prev);
        int w = next.first();
        labels.push_back(mat.label(cur, w));
        prev = cur;
        cur = w;
    }
    return detail::classify_path(labels);
}

// ---- subset predicates --------------------------------------------------

struct SubsetPredicates {
    bool is_spherical = true;
    bool is_irreducible_affine = false;
    std::vector<Bitset> irreducible_nonspherical_components;
};

inline SubsetPredicates subset_predicates(const CoxeterMatrix& m, const Bitset& j) {
    SubsetPredicates out;
    auto comps = diagram_components(m, j);
    for (auto& comp : comps) {
        IrreducibleType t = classify_component(m, comp);
        if (!t.is_finite()) {
            out.is_spherical = false;
            out.irreducible_nonspherical_components.push_back(comp);
            if (comps.size() == 1 && t.is_affine()) out.is_irreducible_affine = true;
        }
    }
    return out;
}

inline bool is_spherical(const CoxeterMatrix& m, const Bitset& j) {
    return subset_predicates(m, j).is_spherical;
}

// ---- matrix file format ---------------------------------------------------
// Line 1: n.  Then n rows of n integers; diagonal 1, entry 0 encodes an
// infinite bond, off-diagonal entries otherwise >= 2; symmetric.

inline CoxeterMatrix read_coxeter_matrix(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](const char* what) {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return;
        }
        throw FormatError(std::string("unexpected end of file, expected ") + what, line_no);
    };

    next_line("generator count");
    long n = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> n) || n < 0) throw FormatError("expected generator count", line_no);
    }
    CoxeterMatrix m(static_cast<int>(n));
    std::vector<std::vector<long>> rows;
    for (long r = 0; r < n; ++r) {
        next_line("matrix row");
        std::istringstream ss(line);
        std::vector<long> row;
        long x;
        while (ss >> x) row.push_back(x);
        if (static_cast<long>(row.size()) != n)
            throw FormatError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(n),
                              line_no);
        rows.push_back(std::move(row));
    }
    for (long r = 0; r < n; ++r) {
        if (rows[r][r] != 1)
            throw FormatError("diagonal entry at row " + std::to_string(r) + ", column " +
                              std::to_string(r) + " must be 1");
        for (long c = r + 1; c < n; ++c) {
            if (rows[r][c] != rows[c][r])
                throw FormatError("matrix not symmetric at row " + std::to_string(r) + ", column " +
                                  std::to_string(c));
            long v = rows[r][c];
            if (v != 0 && v < 2)
                throw FormatError("entry at row " + std::to_string(r) + ", column " +
                                  std::to_string(c) + " must be 0 (infinite) or >= 2");
            m.set_label(static_cast<int>(r), static_cast<int>(c),
                        v == 0 ? infinite_bond : static_cast<std::uint32_t>(v));
        }
    }
    return m;
}

inline CoxeterMatrix read_coxeter_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_coxeter_matrix(in);
}

inline void write_coxeter_matrix(std::ostream& out, const CoxeterMatrix& m) {
    out << m.rank() << '\n';
    for (int r = 0; r < m.rank(); ++r) {
        for (int c = 0; c < m.rank(); ++c) {
            if (c) out << ' ';
            std::uint32_t l = m.label(r, c);
            out << (l == infinite_bond ? 0u : l);
        }
        out << '\n';
    }
}

}  // namespace coxtk

#endif
