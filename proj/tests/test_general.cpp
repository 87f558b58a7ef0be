#include <catch_amalgamated.hpp>

#include "coxtk/general.hpp"
#include "coxtk/racg.hpp"
#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace coxtk;

namespace {

CoxeterMatrix k22_matrix() {
    Graph g(4);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    return CoxeterMatrix::from_racg(g);
}

CoxeterMatrix a2_tilde() {
    CoxeterMatrix m(3, 3);  // 3-3-3 triangle
    return m;
}

CoxeterMatrix fuchsian(std::uint32_t bond = 4) {
    CoxeterMatrix m(4, 2);
    m.set_label(0, 1, bond);
    m.set_label(0, 3, infinite_bond);
    m.set_label(1, 2, infinite_bond);
    return m;
}

Graph square_with_pendant() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    g.add_edge(0, 4);
    return g;
}

GeneralStatus translate(RacgStatus s) {
    switch (s) {
        case RacgStatus::Finite: return GeneralStatus::Finite;
        case RacgStatus::VirtuallyCyclic: return GeneralStatus::VirtuallyCyclic;
        case RacgStatus::Thick: return GeneralStatus::Thick;
        case RacgStatus::Hyperbolic: return GeneralStatus::Hyperbolic;
        case RacgStatus::RelativelyHyperbolic: return GeneralStatus::RelativelyHyperbolic;
    }
    return GeneralStatus::Finite;
}

}  // namespace

TEST_CASE("seed enumeration") {
    SECTION("square: the two commuting infinite pairs") {
        auto seeds = enumerate_seeds(k22_matrix());
        REQUIRE(seeds.size() == 1);
        CHECK(seeds[0] == Bitset::full(4));
    }
    SECTION("affine triangle seeds itself") {
        auto seeds = enumerate_seeds(a2_tilde());
        REQUIRE(seeds.size() == 1);
        CHECK(seeds[0] == Bitset::full(3));
    }
    SECTION("fuchsian square has no seeds") {
        CHECK(enumerate_seeds(fuchsian()).empty());
        CHECK(enumerate_seeds(fuchsian(), SeedMode::AllProducts).empty());
    }
    SECTION("guard") {
        CHECK_THROWS_AS(enumerate_seeds(CoxeterMatrix(25)), GuardExceeded);
    }
}

TEST_CASE("saturation") {
    SECTION("pendant generator is not absorbed") {
        auto sat = saturate_thick(CoxeterMatrix::from_racg(square_with_pendant()));
        REQUIRE(sat.pool.size() == 1);
        CHECK(sat.pool[0] == Bitset::of(5, {0, 1, 2, 3}));
    }
    SECTION("cone over an affine triangle") {
        CoxeterMatrix m(4, 2);
        m.set_label(0, 1, 3);
        m.set_label(1, 2, 3);
        m.set_label(0, 2, 3);
        auto sat = saturate_thick(m);
        REQUIRE(sat.pool.size() == 1);
        CHECK(sat.pool[0] == Bitset::full(4));
    }
    SECTION("fuchsian pool is empty") {
        CHECK(saturate_thick(fuchsian()).pool.empty());
    }
}

TEST_CASE("witness soundness") {
    std::mt19937_64 rng(71);
    int members_checked = 0;
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + static_cast<int>(rng() % 6);
        CoxeterMatrix m = oracles::random_matrix(n, rng);
        auto sat = saturate_thick(m);
        for (std::size_t i = 0; i < sat.pool.size(); ++i) {
            REQUIRE(verify_witness(m, sat.arena, sat.witness[i]));
            CHECK(sat.arena[static_cast<std::size_t>(sat.witness[i])].set == sat.pool[i].low_word());
            ++members_checked;
        }
    }
    CHECK(members_checked > 50);
}

TEST_CASE("minimal product seeding yields the same maximal pool as full seeding") {
    std::mt19937_64 rng(73);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);
        CoxeterMatrix m = oracles::random_matrix(n, rng);
        auto a = saturate_thick(m, SeedMode::MinimalProducts);
        auto b = saturate_thick(m, SeedMode::AllProducts);
        REQUIRE(oracles::as_vertex_lists(a.pool) == oracles::as_vertex_lists(b.pool));
    }
    for (int n = 0; n <= 5; ++n)
        oracles::for_all_graphs(n, [&](const Graph& g) {
            auto m = CoxeterMatrix::from_racg(g);
            auto a = saturate_thick(m, SeedMode::MinimalProducts);
            auto b = saturate_thick(m, SeedMode::AllProducts);
            REQUIRE(oracles::as_vertex_lists(a.pool) == oracles::as_vertex_lists(b.pool));
        });
}

TEST_CASE("classification of named systems") {
    CHECK(classify_coxeter(fuchsian()).status == GeneralStatus::Hyperbolic);
    CHECK(classify_coxeter(fuchsian(3)).status == GeneralStatus::Hyperbolic);
    CHECK(classify_coxeter(k22_matrix()).status == GeneralStatus::Thick);
    CHECK(classify_coxeter(a2_tilde()).status == GeneralStatus::Thick);
    CHECK(classify_coxeter(a2_tilde()).peripherals.spans_all);
    CHECK(classify_coxeter(CoxeterMatrix(3, 2)).status == GeneralStatus::Finite);

    {
        CoxeterMatrix vc(3, 2);
        vc.set_label(0, 1, infinite_bond);
        CHECK(classify_coxeter(vc).status == GeneralStatus::VirtuallyCyclic);
    }

    auto rh = classify_coxeter(CoxeterMatrix::from_racg(square_with_pendant()));
    CHECK(rh.status == GeneralStatus::RelativelyHyperbolic);
    REQUIRE(rh.peripherals.J_list.size() == 1);
    CHECK(rh.peripherals.J_list[0] == Bitset::of(5, {0, 1, 2, 3}));
    CHECK(rh.rh.ok());
}

TEST_CASE("rh certificate") {
    auto m = CoxeterMatrix::from_racg(square_with_pendant());

    SECTION("the computed collection passes") {
        CHECK(verify_rh(m, {Bitset::of(5, {0, 1, 2, 3})}).ok());
    }
    SECTION("dropping a vertex from the square breaks RH1") {
        auto rep = verify_rh(m, {Bitset::of(5, {0, 1, 2})});
        CHECK_FALSE(rep.rh1_ok);
        CHECK_FALSE(rep.violations.empty());
        CHECK(rep.violations.front().condition == "RH1");
    }
    SECTION("an uncovered affine triangle breaks RH1") {
        auto rep = verify_rh(a2_tilde(), {});
        CHECK_FALSE(rep.rh1_ok);
    }
    SECTION("improper peripheral is a precondition error") {
        CHECK_THROWS_AS(verify_rh(m, {Bitset::full(5)}), InputError);
    }
    SECTION("a subset that cuts through a perp breaks RH3") {
        // {0,1,3} contains the nonadjacent pair {1,3} whose perp {0,2} leaks out
        auto rep = verify_rh(m, {Bitset::of(5, {0, 1, 3})});
        CHECK_FALSE(rep.rh3_ok);
        bool saw_rh3 = false;
        for (auto& v : rep.violations) saw_rh3 = saw_rh3 || v.condition == "RH3";
        CHECK(saw_rh3);
    }
    SECTION("overlapping thick peripherals break RH2") {
        // two squares glued along a nonadjacent pair, fed as separate Js
        Graph g(6);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        g.add_edge(0, 4);
        g.add_edge(0, 5);
        g.add_edge(1, 4);
        g.add_edge(1, 5);
        auto mm = CoxeterMatrix::from_racg(g);
        auto rep = verify_rh(mm, {Bitset::of(6, {0, 1, 2, 3}), Bitset::of(6, {0, 1, 4, 5})});
        CHECK_FALSE(rep.rh2_ok);
    }
}

TEST_CASE("right-angled consistency, exhaustive n <= 5") {
    for (int n = 0; n <= 5; ++n)
        oracles::for_all_graphs(n, [&](const Graph& g) {
            auto racg = classify_racg(g);
            auto general = classify_coxeter(CoxeterMatrix::from_racg(g));
            REQUIRE(general.status == translate(racg.status));
            if (racg.status == RacgStatus::RelativelyHyperbolic)
                REQUIRE(oracles::as_vertex_lists(general.peripherals.J_list) ==
                        oracles::as_vertex_lists(racg.peripherals));
        });
}

TEST_CASE("thick systems reject any proper peripheral candidate") {
    // maximal proper thick subsets never satisfy RH1-RH3 when the whole
    // system is thick
    std::mt19937_64 rng(79);
    std::vector<CoxeterMatrix> battery{k22_matrix(), a2_tilde()};
    {
        CoxeterMatrix coned(4, 2);  // affine triangle plus a commuting generator
        coned.set_label(0, 1, 3);
        coned.set_label(1, 2, 3);
        coned.set_label(0, 2, 3);
        battery.push_back(coned);
        // octahedron: complement of a perfect matching on six vertices
        Graph oct = Graph::complete(6);
        Graph oct2(6);
        for (auto [u, v] : oct.edges())
            if (!(v == u + 3)) oct2.add_edge(u, v);
        battery.push_back(CoxeterMatrix::from_racg(oct2));
    }
    for (int iter = 0; iter < 150; ++iter) {
        battery.push_back(oracles::random_matrix(4 + static_cast<int>(rng() % 3), rng));
        // right-angled instances at joiny densities, where thickness is common
        int n = 5 + static_cast<int>(rng() % 3);
        battery.push_back(CoxeterMatrix::from_racg(oracles::random_graph(n, 0.65, rng)));
    }

    int thick_seen = 0;
    for (auto& m : battery) {
        int n = m.rank();
        if (thick_seen >= 40) break;
        if (classify_coxeter(m).status != GeneralStatus::Thick) continue;
        ++thick_seen;
        // collect maximal proper thick subsets by classifying submatrices
        std::vector<Bitset> proper;
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
            Bitset s = Bitset::from_word(n, mask);
            auto verts = s.to_vector();
            auto sub = oracles::submatrix(m, verts);
            auto sat = saturate_thick(sub);
            bool sub_thick = false;
            for (auto& member : sat.pool)
                if (member.count() == static_cast<int>(verts.size())) sub_thick = true;
            if (sub_thick) proper.push_back(s);
        }
        std::vector<Bitset> maximal;
        for (auto& a : proper) {
            bool dominated = false;
            for (auto& b : proper)
                if (a != b && a.is_subset_of(b)) dominated = true;
            if (!dominated) maximal.push_back(a);
        }
        CHECK_FALSE(verify_rh(m, maximal).ok());
    }
    CHECK(thick_seen >= 15);
}

TEST_CASE("saturation confluence under randomized order") {
    std::mt19937_64 rng(83);
    for (int iter = 0; iter < 80; ++iter) {
        int n = 2 + static_cast<int>(rng() % 5);
        CoxeterMatrix m = oracles::random_matrix(n, rng);
        auto canonical = saturate_thick(m).pool;
        auto randomized = saturate_thick_randomized(m, rng);
        REQUIRE(oracles::as_vertex_lists(canonical) == oracles::as_vertex_lists(randomized));
    }
}

TEST_CASE("witness trace rendering") {
    auto rep = classify_coxeter(CoxeterMatrix::from_racg(square_with_pendant()));
    REQUIRE(rep.peripherals.J_list.size() == 1);
    std::ostringstream out;
    write_witness(out, rep.peripherals.arena, rep.peripherals.witness[0], 5);
    CHECK(out.str().find("product seed") != std::string::npos);
}
