// general.hpp - membership in the thick class for arbitrary Coxeter systems,
// the canonical peripheral collection, and the RH1-RH3 certificate
//
// Thickness is decided by seed-and-saturate: seed with every irreducible
// affine subset of rank >= 3 and with commuting products of irreducible
// non-spherical subsets, then close under two monotone operations:
//   cone   T -> T + s   when the part of T commuting with s is non-spherical
//   union  T1,T2 -> T1 ∪ T2   when T1 ∩ T2 is non-spherical
// Subsets of pool members are pruned; both operations are monotone in their
// inputs, so the maximal members at the fixed point are canonical.  Every
// pool member carries a derivation witness that re-verifies against the
// matrix.  Everything here runs on <= 24 generators (guarded); only the
// right-angled path is polynomial.
#ifndef COXTK_GENERAL_HPP
#define COXTK_GENERAL_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coxtk/coxeter.hpp"

namespace coxtk {

inline constexpr int general_enumeration_guard = 24;

enum class GeneralStatus {
    Finite,
    VirtuallyCyclic,
    Thick,
    Hyperbolic,
    RelativelyHyperbolic,
};

inline const char* to_string(GeneralStatus s) {
    switch (s) {
        case GeneralStatus::Finite: return "Finite";
        case GeneralStatus::VirtuallyCyclic: return "VirtuallyCyclic";
        case GeneralStatus::Thick: return "Thick";
        case GeneralStatus::Hyperbolic: return "Hyperbolic";
        case GeneralStatus::RelativelyHyperbolic: return "RelativelyHyperbolic";
    }
    return "?";
}

// One node of a derivation tree.  Leaves are seeds; internal nodes record a
// cone or union step.  Nodes live in a shared arena and refer by index.
struct WitnessNode {
    enum class Kind { AffineSeed, ProductSeed, Cone, Union };
    Kind kind;
    std::uint32_t set = 0;    // subset this node derives
    std::uint32_t part1 = 0;  // ProductSeed factors
    std::uint32_t part2 = 0;
    int base = -1;   // Cone/Union child
    int other = -1;  // Union second child
    int vertex = -1; // Cone generator
};

struct SaturationResult {
    std::vector<Bitset> pool;       // maximal members, canonically sorted
    std::vector<int> witness;       // per pool member, root index into arena
    std::vector<WitnessNode> arena;
};

struct RhViolation {
    std::string condition;  // "RH1", "RH2" or "RH3"
    std::vector<Bitset> witnesses;
};

struct RhReport {
    bool rh1_ok = true;
    bool rh2_ok = true;
    bool rh3_ok = true;
    std::vector<RhViolation> violations;
    bool ok() const { return rh1_ok && rh2_ok && rh3_ok; }
};

struct PeripheralStructure {
    std::vector<Bitset> J_list;
    std::vector<int> witness;
    std::vector<WitnessNode> arena;
    bool spans_all = false;  // the peripheral collection is {S} itself
};

struct GeneralReport {
    GeneralStatus status = GeneralStatus::Finite;
    PeripheralStructure peripherals;
    RhReport rh;  // meaningful when status == RelativelyHyperbolic
};

namespace gen_detail {

// Mask-based view of a CoxeterMatrix with memoized subset predicates.
class MaskContext {
public:
    explicit MaskContext(const CoxeterMatrix& m) : m_(m), n_(m.rank()) {
        if (n_ > general_enumeration_guard)
            throw GuardExceeded("general classifier enumerates subsets and is limited to " +
                                std::to_string(general_enumeration_guard) +
                                " generators (got " + std::to_string(n_) +
                                "); use the right-angled path for larger inputs");
        diag_.resize(n_);
        comm_.resize(n_);
        for (int s = 0; s < n_; ++s) {
            std::uint32_t d = 0, c = 0;
            for (int t = 0; t < n_; ++t) {
                if (t == s) continue;
                if (m.label(s, t) != 2) d |= bit(t);
                else c |= bit(t);
            }
            diag_[s] = d;
            comm_[s] = c;
        }
        spherical_memo_.assign(std::size_t{1} << n_, -1);
    }

    int rank() const { return n_; }
    const CoxeterMatrix& matrix() const { return m_; }
    static std::uint32_t bit(int v) { return std::uint32_t{1} << v; }
    std::uint32_t full() const { return n_ == 0 ? 0 : (std::uint32_t{1} << n_) - 1; }

    // generators commuting with s (s itself excluded)
    std::uint32_t comm_mask_single(int s) const { return comm_[s]; }

    std::uint32_t comm_mask(std::uint32_t k) const {
        std::uint32_t out = full();
        for (std::uint32_t rest = k; rest;) {
            int s = std::countr_zero(rest);
            rest &= rest - 1;
            out &= comm_[s];
        }
        return out & ~k;
    }

    bool connected(std::uint32_t mask) const {
        if (mask == 0) return false;
        std::uint32_t seen = mask & (~mask + 1), frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t rest = frontier; rest;) {
                int s = std::countr_zero(rest);
                rest &= rest - 1;
                next |= diag_[s];
            }
            frontier = next & mask & ~seen;
            seen |= frontier;
        }
        return seen == mask;
    }

    std::vector<std::uint32_t> components(std::uint32_t mask) const {
        std::vector<std::uint32_t> out;
        while (mask) {
            std::uint32_t comp = mask & (~mask + 1), frontier = comp;
            while (frontier) {
                std::uint32_t next = 0;
                for (std::uint32_t rest = frontier; rest;) {
                    int s = std::countr_zero(rest);
                    rest &= rest - 1;
                    next |= diag_[s];
                }
                frontier = next & mask & ~comp;
                comp |= frontier;
            }
            out.push_back(comp);
            mask &= ~comp;
        }
        return out;
    }

    IrreducibleType classify(std::uint32_t comp) const {
        return classify_component(m_, Bitset::from_word(n_, comp));
    }

    bool spherical(std::uint32_t mask) {
        if (mask == 0) return true;
        auto& memo = spherical_memo_[mask];
        if (memo != -1) return memo == 1;
        bool ok = true;
        for (auto comp : components(mask))
            if (!classify(comp).is_finite()) {
                ok = false;
                break;
            }
        memo = ok ? 1 : 0;
        return ok;
    }

    bool nonspherical(std::uint32_t mask) { return !spherical(mask); }

    bool irreducible_nonspherical(std::uint32_t mask) {
        return connected(mask) && !classify(mask).is_finite();
    }

    bool irreducible_affine_ge3(std::uint32_t mask) {
        return std::popcount(mask) >= 3 && connected(mask) && classify(mask).is_affine();
    }

    // All irreducible non-spherical subsets, ascending by mask value.
    std::vector<std::uint32_t> nonspherical_irreducibles() {
        std::vector<std::uint32_t> out;
        std::uint64_t top = std::uint64_t{1} << n_;
        for (std::uint64_t m = 1; m < top; ++m) {
            auto mask = static_cast<std::uint32_t>(m);
            if (std::popcount(mask) < 2) continue;
            if (irreducible_nonspherical(mask)) out.push_back(mask);
        }
        return out;
    }

private:
    const CoxeterMatrix& m_;
    int n_;
    std::vector<std::uint32_t> diag_, comm_;
    std::vector<std::int8_t> spherical_memo_;
};

}  // namespace gen_detail

enum class SeedMode {
    MinimalProducts,  // product seeds built from inclusion-minimal factors
    AllProducts,      // every commuting pair of irreducible non-spherical subsets
};

namespace gen_detail {

struct PoolEntry {
    std::uint32_t set;
    int witness;
};

class SaturationEngine {
public:
    SaturationEngine(MaskContext& ctx) : ctx_(ctx) {}

    // (a) every irreducible affine subset of rank >= 3; (b) products of
    // disjoint commuting irreducible non-spherical factor pairs, factors
    // restricted to inclusion-minimal ones unless AllProducts is asked for
    // (the closure operations recover every larger product).
    std::vector<PoolEntry> collect_seeds(SeedMode mode) {
        std::vector<PoolEntry> seeds;
        int n = ctx_.rank();
        std::uint64_t top = std::uint64_t{1} << n;
        for (std::uint64_t mm = 1; mm < top; ++mm) {
            auto mask = static_cast<std::uint32_t>(mm);
            if (ctx_.irreducible_affine_ge3(mask))
                seeds.push_back({mask, add_node({WitnessNode::Kind::AffineSeed, mask, 0, 0, -1, -1, -1})});
        }
        std::vector<std::uint32_t> factors;
        if (mode == SeedMode::AllProducts) {
            factors = ctx_.nonspherical_irreducibles();
        } else {
            for (std::uint64_t mm = 1; mm < top; ++mm) {
                auto mask = static_cast<std::uint32_t>(mm);
                if (std::popcount(mask) < 2 || !ctx_.irreducible_nonspherical(mask)) continue;
                bool minimal = true;
                for (auto f : factors)
                    if ((f & mask) == f) {
                        minimal = false;
                        break;
                    }
                if (minimal) factors.push_back(mask);
            }
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            std::uint32_t c1 = ctx_.comm_mask(factors[i]);
            for (std::size_t j = i + 1; j < factors.size(); ++j)
                if ((factors[j] & ~c1) == 0) {
                    std::uint32_t s = factors[i] | factors[j];
                    seeds.push_back({s, add_node({WitnessNode::Kind::ProductSeed, s, factors[i],
                                                  factors[j], -1, -1, -1})});
                }
        }
        return seeds;
    }

    void run(SeedMode mode = SeedMode::MinimalProducts) {
        for (auto& e : collect_seeds(mode)) insert(e.set, e.witness);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pool_.size(); ++i)
                if (cone_member(pool_[i])) changed = true;
            if (changed) remerge();
        }
    }

    SaturationResult result(int n) {
        SaturationResult out;
        std::sort(pool_.begin(), pool_.end(),
                  [](const PoolEntry& a, const PoolEntry& b) { return a.set < b.set; });
        for (auto& e : pool_) {
            out.pool.push_back(Bitset::from_word(n, e.set));
            out.witness.push_back(e.witness);
        }
        out.arena = std::move(arena_);
        return out;
    }

    // Randomized-order variant for the confluence property test: apply one
    // applicable step at a time, picked uniformly.
    void run_randomized(std::mt19937_64& rng, SeedMode mode = SeedMode::MinimalProducts) {
        pool_ = collect_seeds(mode);
        std::sort(pool_.begin(), pool_.end(),
                  [](const PoolEntry& a, const PoolEntry& b) { return a.set < b.set; });
        pool_.erase(std::unique(pool_.begin(), pool_.end(),
                                [](const PoolEntry& a, const PoolEntry& b) { return a.set == b.set; }),
                    pool_.end());
        std::shuffle(pool_.begin(), pool_.end(), rng);
        while (true) {
            struct Move {
                bool is_union;
                std::size_t i, j;
            };
            std::vector<Move> moves;
            for (std::size_t i = 0; i < pool_.size(); ++i) {
                for (std::size_t j = i + 1; j < pool_.size(); ++j)
                    if (ctx_.nonspherical(pool_[i].set & pool_[j].set))
                        moves.push_back({true, i, j});
                for (int v = 0; v < ctx_.rank(); ++v) {
                    if (pool_[i].set & MaskContext::bit(v)) continue;
                    if (ctx_.nonspherical(ctx_.comm_mask_single(v) & pool_[i].set))
                        moves.push_back({false, i, static_cast<std::size_t>(v)});
                }
            }
            if (moves.empty()) break;
            auto mv = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
            if (mv.is_union) {
                pool_[mv.i].set |= pool_[mv.j].set;
                pool_.erase(pool_.begin() + static_cast<long>(mv.j));
            } else {
                pool_[mv.i].set |= MaskContext::bit(static_cast<int>(mv.j));
            }
            std::sort(pool_.begin(), pool_.end(),
                      [](const PoolEntry& a, const PoolEntry& b) { return a.set < b.set; });
            pool_.erase(std::unique(pool_.begin(), pool_.end(),
                                    [](const PoolEntry& a, const PoolEntry& b) {
                                        return a.set == b.set;
                                    }),
                        pool_.end());
            std::shuffle(pool_.begin(), pool_.end(), rng);
        }
        // keep maximal members only
        std::vector<PoolEntry> maximal;
        for (std::size_t i = 0; i < pool_.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < pool_.size() && !dominated; ++j)
                if (i != j && (pool_[i].set & ~pool_[j].set) == 0 && pool_[i].set != pool_[j].set)
                    dominated = true;
            if (!dominated) maximal.push_back(pool_[i]);
        }
        pool_ = std::move(maximal);
    }

private:
    int add_node(WitnessNode n) {
        arena_.push_back(n);
        return static_cast<int>(arena_.size()) - 1;
    }

    void insert(std::uint32_t set, int witness) {
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = pool_.size(); i-- > 0;) {
                if (ctx_.nonspherical(pool_[i].set & set)) {
                    std::uint32_t u = pool_[i].set | set;
                    witness = add_node(
                        {WitnessNode::Kind::Union, u, 0, 0, witness, pool_[i].witness, -1});
                    set = u;
                    pool_[i] = pool_.back();
                    pool_.pop_back();
                    merged = true;
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < pool_.size();) {
            if ((pool_[i].set & ~set) == 0) {
                pool_[i] = pool_.back();
                pool_.pop_back();
            } else if ((set & ~pool_[i].set) == 0) {
                return;
            } else {
                ++i;
            }
        }
        pool_.push_back({set, witness});
    }

    bool cone_member(PoolEntry& e) {
        bool grew = false, pass = true;
        while (pass) {
            pass = false;
            for (int v = 0; v < ctx_.rank(); ++v) {
                if (e.set & MaskContext::bit(v)) continue;
                if (ctx_.nonspherical(ctx_.comm_mask_single(v) & e.set)) {
                    std::uint32_t s2 = e.set | MaskContext::bit(v);
                    e.witness = add_node({WitnessNode::Kind::Cone, s2, 0, 0, e.witness, -1, v});
                    e.set = s2;
                    grew = pass = true;
                }
            }
        }
        return grew;
    }

    void remerge() {
        std::vector<PoolEntry> old;
        old.swap(pool_);
        for (auto& e : old) insert(e.set, e.witness);
    }

    MaskContext& ctx_;
    std::vector<PoolEntry> pool_;
    std::vector<WitnessNode> arena_;
};

}  // namespace gen_detail

// Seeds of the saturation, as vertex sets in canonical order.
inline std::vector<Bitset> enumerate_seeds(const CoxeterMatrix& m,
                                           SeedMode mode = SeedMode::MinimalProducts) {
    gen_detail::MaskContext ctx(m);
    gen_detail::SaturationEngine engine(ctx);
    std::vector<std::uint32_t> masks;
    for (auto& e : engine.collect_seeds(mode)) masks.push_back(e.set);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Bitset> out;
    out.reserve(masks.size());
    for (auto s : masks) out.push_back(Bitset::from_word(m.rank(), s));
    return out;
}

// Smallest pool containing the seeds and closed under cone and union, with
// subset pruning; each member carries a derivation witness.
inline SaturationResult saturate_thick(const CoxeterMatrix& m,
                                       SeedMode mode = SeedMode::MinimalProducts) {
    gen_detail::MaskContext ctx(m);
    gen_detail::SaturationEngine engine(ctx);
    engine.run(mode);
    return engine.result(m.rank());
}

inline std::vector<Bitset> saturate_thick_randomized(const CoxeterMatrix& m, std::mt19937_64& rng) {
    gen_detail::MaskContext ctx(m);
    gen_detail::SaturationEngine engine(ctx);
    engine.run_randomized(rng);
    return engine.result(m.rank()).pool;
}

// Re-derive one witness tree against the matrix; true iff every seed
// condition and side condition holds and every node set is consistent.
inline bool verify_witness(const CoxeterMatrix& m, const std::vector<WitnessNode>& arena, int idx) {
    gen_detail::MaskContext ctx(m);
    std::vector<int> order;
    std::vector<int> stack{idx};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        if (i < 0 || i >= static_cast<int>(arena.size())) return false;
        order.push_back(i);
        const auto& node = arena[static_cast<std::size_t>(i)];
        if (node.kind == WitnessNode::Kind::Cone) stack.push_back(node.base);
        if (node.kind == WitnessNode::Kind::Union) {
            stack.push_back(node.base);
            stack.push_back(node.other);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto& node = arena[static_cast<std::size_t>(*it)];
        switch (node.kind) {
            case WitnessNode::Kind::AffineSeed:
                if (!ctx.irreducible_affine_ge3(node.set)) return false;
                break;
            case WitnessNode::Kind::ProductSeed: {
                if (node.part1 == 0 || node.part2 == 0) return false;
                if (node.part1 & node.part2) return false;
                if ((node.part1 | node.part2) != node.set) return false;
                if (!ctx.irreducible_nonspherical(node.part1)) return false;
                if (!ctx.irreducible_nonspherical(node.part2)) return false;
                if (node.part2 & ~ctx.comm_mask(node.part1)) return false;
                break;
            }
            case WitnessNode::Kind::Cone: {
                const auto& base = arena[static_cast<std::size_t>(node.base)];
                if (node.vertex < 0 || node.vertex >= m.rank()) return false;
                std::uint32_t vb = gen_detail::MaskContext::bit(node.vertex);
                if (base.set & vb) return false;
                if (node.set != (base.set | vb)) return false;
                if (!ctx.nonspherical(ctx.comm_mask_single(node.vertex) & base.set)) return false;
                break;
            }
            case WitnessNode::Kind::Union: {
                const auto& a = arena[static_cast<std::size_t>(node.base)];
                const auto& b = arena[static_cast<std::size_t>(node.other)];
                if (node.set != (a.set | b.set)) return false;
                if (!ctx.nonspherical(a.set & b.set)) return false;
                break;
            }
        }
    }
    return true;
}

// RH1-RH3 certificate for a candidate peripheral collection.  Every J must
// be a proper subset of the generators.
inline RhReport verify_rh(const CoxeterMatrix& m, const std::vector<Bitset>& j_list) {
    gen_detail::MaskContext ctx(m);
    int n = ctx.rank();
    std::vector<std::uint32_t> js;
    for (auto& j : j_list) {
        m.check_subset(j);
        std::uint32_t mask = j.low_word();
        if (mask == ctx.full() && n > 0)
            throw InputError("verify_rh requires proper peripheral subsets");
        js.push_back(mask);
    }

    RhReport report;
    auto covered = [&](std::uint32_t k) {
        for (auto j : js)
            if ((k & ~j) == 0) return true;
        return false;
    };

    // RH1: irreducible affine subsets of rank >= 3
    std::uint64_t top = std::uint64_t{1} << n;
    for (std::uint64_t mm = 1; mm < top; ++mm) {
        auto mask = static_cast<std::uint32_t>(mm);
        if (ctx.irreducible_affine_ge3(mask) && !covered(mask)) {
            report.rh1_ok = false;
            report.violations.push_back({"RH1", {Bitset::from_word(n, mask)}});
        }
    }
    // RH1: commuting pairs of irreducible non-spherical subsets
    auto irr = ctx.nonspherical_irreducibles();
    for (std::size_t i = 0; i < irr.size(); ++i) {
        std::uint32_t c1 = ctx.comm_mask(irr[i]);
        for (std::size_t j = i + 1; j < irr.size(); ++j) {
            if (irr[j] & ~c1) continue;
            if (!covered(irr[i] | irr[j])) {
                report.rh1_ok = false;
                report.violations.push_back(
                    {"RH1", {Bitset::from_word(n, irr[i]), Bitset::from_word(n, irr[j])}});
            }
        }
    }
    // RH2: pairwise intersections spherical
    for (std::size_t i = 0; i < js.size(); ++i)
        for (std::size_t j = i + 1; j < js.size(); ++j)
            if (js[i] != js[j] && !ctx.spherical(js[i] & js[j])) {
                report.rh2_ok = false;
                report.violations.push_back(
                    {"RH2", {Bitset::from_word(n, js[i]), Bitset::from_word(n, js[j])}});
            }
    // RH3: perps of non-spherical irreducibles stay inside their J
    for (auto j : js)
        for (auto k : irr) {
            if (k & ~j) continue;
            if (ctx.comm_mask(k) & ~j) {
                report.rh3_ok = false;
                report.violations.push_back(
                    {"RH3", {Bitset::from_word(n, j), Bitset::from_word(n, k)}});
            }
        }
    return report;
}

// Full classification.  Status precedence: spherical -> Finite; a single
// infinite bond beside finite components -> VirtuallyCyclic; pool spanning
// the generators -> Thick; empty pool -> Hyperbolic; otherwise relatively
// hyperbolic with the maximal pool members as peripherals, certified by
// verify_rh (a certificate failure is an internal error, never a result).
inline GeneralReport classify_coxeter(const CoxeterMatrix& m) {
    gen_detail::MaskContext ctx(m);
    int n = ctx.rank();
    GeneralReport report;

    if (ctx.spherical(ctx.full())) {
        report.status = GeneralStatus::Finite;
        return report;
    }
    {
        int nonspherical_comps = 0;
        bool lone_infinite_pair = false;
        for (auto comp : ctx.components(ctx.full())) {
            if (ctx.spherical(comp)) continue;
            ++nonspherical_comps;
            lone_infinite_pair = ctx.classify(comp).family == DiagramFamily::TildeA1;
        }
        if (nonspherical_comps == 1 && lone_infinite_pair) {
            report.status = GeneralStatus::VirtuallyCyclic;
            return report;
        }
    }

    SaturationResult sat = saturate_thick(m);
    bool spans = false;
    for (auto& member : sat.pool)
        if (member.count() == n) spans = true;

    report.peripherals.J_list = sat.pool;
    report.peripherals.witness = sat.witness;
    report.peripherals.arena = std::move(sat.arena);
    report.peripherals.spans_all = spans;

    if (spans) {
        report.status = GeneralStatus::Thick;
        return report;
    }
    if (report.peripherals.J_list.empty()) {
        report.status = GeneralStatus::Hyperbolic;
        return report;
    }
    report.status = GeneralStatus::RelativelyHyperbolic;
    report.rh = verify_rh(m, report.peripherals.J_list);
    if (!report.rh.ok())
        throw InternalInconsistency(
            "peripheral collection failed its relative hyperbolicity certificate");
    return report;
}

// Indented textual rendering of a derivation tree.
inline void write_witness(std::ostream& out, const std::vector<WitnessNode>& arena, int idx,
                          int n, int indent = 0) {
    const auto& node = arena[static_cast<std::size_t>(idx)];
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    Bitset set = Bitset::from_word(n, node.set);
    switch (node.kind) {
        case WitnessNode::Kind::AffineSeed:
            out << pad << "affine seed " << set.to_string() << '\n';
            break;
        case WitnessNode::Kind::ProductSeed:
            out << pad << "product seed " << Bitset::from_word(n, node.part1).to_string() << " x "
                << Bitset::from_word(n, node.part2).to_string() << '\n';
            break;
        case WitnessNode::Kind::Cone:
            out << pad << "cone +" << node.vertex << " -> " << set.to_string() << '\n';
            write_witness(out, arena, node.base, n, indent + 1);
            break;
        case WitnessNode::Kind::Union:
            out << pad << "union -> " << set.to_string() << '\n';
            write_witness(out, arena, node.base, n, indent + 1);
            write_witness(out, arena, node.other, n, indent + 1);
            break;
    }
}

}  // namespace coxtk

#endif
