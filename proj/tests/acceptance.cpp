// acceptance.cpp - the acceptance suite: one checkable criterion per entry,
// one PASS/FAIL line each, selectable with --criterion N.
//
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coxtk/bounds.hpp"
#include "coxtk/census.hpp"
#include "coxtk/general.hpp"
#include "coxtk/graph_io.hpp"
#include "coxtk/racg.hpp"
#include "coxtk/random_lab.hpp"
#include "oracles.hpp"

using namespace coxtk;

namespace {

int g_workers = 2;
bool g_with_census9 = false;
std::string g_census9_checkpoint = "census9_checkpoint.txt";

struct Criterion {
    int id;
    std::string summary;
    std::function<bool(std::ostream&)> run;
};

// ---- criterion 1: oracle equivalence, exhaustive n = 6 --------------------

bool criterion1(std::ostream& log) {
    bool ok = true;
    long thick_count = 0;
    for (int n = 0; n <= 6; ++n) {
        for (std::uint64_t i = 0; i < oracles::graph_count(n); ++i) {
            Graph g = oracles::graph_from_index(n, i);
            bool fast = classify_racg(g).status == RacgStatus::Thick;
            bool slow = oracle_in_T(g);
            if (fast != slow) {
                log << "  mismatch at n=" << n << " index=" << i << "\n";
                ok = false;
            }
            if (n == 6 && fast) ++thick_count;
        }
    }
    log << "  all 2^15 graphs on 6 vertices agree (plus all smaller); " << thick_count
        << " of 32768 are thick\n";
    return ok;
}

// ---- criterion 2: right-angled vs general consistency, n <= 6 -------------

bool criterion2(std::ostream& log) {
    auto translate = [](RacgStatus s) {
        switch (s) {
            case RacgStatus::Finite: return GeneralStatus::Finite;
            case RacgStatus::VirtuallyCyclic: return GeneralStatus::VirtuallyCyclic;
            case RacgStatus::Thick: return GeneralStatus::Thick;
            case RacgStatus::Hyperbolic: return GeneralStatus::Hyperbolic;
            case RacgStatus::RelativelyHyperbolic: return GeneralStatus::RelativelyHyperbolic;
        }
        return GeneralStatus::Finite;
    };
    bool ok = true;
    for (int n = 0; n <= 6 && ok; ++n) {
        for (std::uint64_t i = 0; i < oracles::graph_count(n); ++i) {
            Graph g = oracles::graph_from_index(n, i);
            auto racg = classify_racg(g);
            auto general = classify_coxeter(CoxeterMatrix::from_racg(g));
            if (general.status != translate(racg.status)) {
                log << "  status mismatch at n=" << n << " index=" << i << ": "
                    << to_string(racg.status) << " vs " << to_string(general.status) << "\n";
                ok = false;
                break;
            }
            if (racg.status == RacgStatus::RelativelyHyperbolic &&
                oracles::as_vertex_lists(general.peripherals.J_list) !=
                    oracles::as_vertex_lists(racg.peripherals)) {
                log << "  peripheral mismatch at n=" << n << " index=" << i << "\n";
                ok = false;
                break;
            }
        }
    }
    if (ok) log << "  statuses and peripheral collections coincide on all graphs up to n=6\n";
    return ok;
}

// ---- criterion 3: census regression ---------------------------------------

bool criterion3(std::ostream& log) {
    bool ok = true;

    auto r4 = census(4, g_workers);
    log << "  census(4) = (" << r4.t << ", " << r4.c << ")\n";
    if (r4.t != 3 || r4.c != 27) ok = false;

    for (int n : {5, 6}) {
        std::uint64_t t = 0, c = 0;
        for (std::uint64_t i = 0; i < oracles::graph_count(n); ++i) {
            Graph g = oracles::graph_from_index(n, i);
            if (oracle_in_T(g)) {
                ++t;
                c += static_cast<std::uint64_t>(oracles::brute_cliques_ge2(g)) +
                     static_cast<std::uint64_t>(n) + 1;
            }
        }
        auto r = census(n, g_workers);
        log << "  census(" << n << ") = (" << r.t << ", " << r.c << "), brute force = (" << t
            << ", " << c << ")\n";
        if (r.t != t || r.c != c) ok = false;
    }

    auto start = std::chrono::steady_clock::now();
    auto r7 = census(7, g_workers);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log << "  census(7) = (" << r7.t << ", " << r7.c << ") in " << secs << "s\n";
    if (secs > 3600) ok = false;

    if (g_with_census9) {
        auto r9 = census(9, g_workers, g_census9_checkpoint);
        log << "  census(9) = (" << r9.t << ", " << r9.c << "), reference (" << census_t9 << ", "
            << census_c9 << ")\n";
        if (r9.t != census_t9 || r9.c != census_c9) ok = false;
    } else {
        log << "  census(9) skipped (multi-day; rerun with --with-census9)\n";
    }
    return ok;
}

// ---- criterion 4: bound evaluations ----------------------------------------

bool criterion4(std::ostream& log) {
    bool ok = true;

    double f18 = f_exact(18).get_d();
    bool f18_ok = std::fabs(f18 - 0.00101) <= 0.00001;
    log << "  f(18) = " << to_decimal(f_exact(18), 12) << ", pinned 0.00101 +- 0.00001: "
        << (f18_ok ? "ok" : "FAIL") << "\n";
    if (!f18_ok) {
        log << "    (the evaluator follows the defining sum f(n) = 2n sum C(n,i) 2^{-n-C(i,2)},\n"
            << "     which reproduces f(1) = 2 and every other constant in this criterion;\n"
            << "     no reading of the sum attains 0.00101 at n = 18 - see the notes ledger)\n";
        ok = false;
    }

    auto max_f = f_range_max(18, 10000);
    bool scan_ok = max_f.value < 0.03760;
    log << "  max f(n) over 18 <= n <= 10^4 = " << max_f.digits << " < 0.03760: "
        << (scan_ok ? "ok" : "FAIL") << "\n";
    ok = ok && scan_ok;

    mpq_class pi9 = pi9_exact();
    bool pi9_ok = std::fabs(pi9.get_d() - 0.78385) <= 0.00001;
    log << "  pi9 = " << to_decimal(pi9, 10) << ", pinned 0.78385 +- 0.00001: "
        << (pi9_ok ? "ok" : "FAIL") << "\n";
    ok = ok && pi9_ok;

    mpq_class alpha = pi_2n_bound_exact(9, census_t9, census_c9, pi9);
    bool alpha_ok = std::fabs(alpha.get_d() - 0.93537) <= 0.0001;
    log << "  pi_2n_bound(9) = " << to_decimal(alpha, 10) << ", pinned 0.93537 +- 0.0001: "
        << (alpha_ok ? "ok" : "FAIL") << "\n";
    ok = ok && alpha_ok;

    mpq_class beta(3760, 100000);
    bool contraction = alpha * alpha + beta < alpha;
    log << "  alpha^2 + 0.03760 < alpha: " << (contraction ? "ok" : "FAIL") << "\n";
    ok = ok && contraction;

    return ok;
}

// ---- criterion 5: thick-proportion table cells ------------------------------

bool criterion5(std::ostream& log) {
    SweepConfig config;
    config.n_values = {4000};
    config.trials = 30;
    config.master_seed = 20250809;
    config.workers = g_workers;
    config.measurements = MeasurementSet::StatusOnly;

    auto count_thick = [&](const std::string& expr) {
        config.schedule = DensitySchedule::parse(expr);
        std::ostringstream trials, agg;
        run_sweep(config, trials, agg);
        int thick = 0;
        std::istringstream in(trials.str());
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line))
            if (line.find(",Thick,") != std::string::npos) ++thick;
        return thick;
    };

    int dense = count_thick("10*log(n)/n");
    log << "  a=10, n=4000: " << dense << "/30 thick (need >= 29)\n";
    int sparse = count_thick("1.95*log(n)/n");
    log << "  a=1.95, n=4000: " << sparse << "/30 thick (need <= 2)\n";
    return dense >= 29 && sparse <= 2;
}

// ---- criterion 6: high-density limit probabilities --------------------------

bool criterion6(std::ostream& log) {
    auto res = high_density_experiment(2.0, 200, 2000, 20250809, g_workers);
    double e1 = std::exp(-1.0);
    log << "  alpha=2, n=200, 2000 trials: P_finite = " << res.p_finite
        << ", P_virtZ = " << res.p_virtz << ", e^-1 = " << e1 << "\n";
    log << "  mean missing edges = " << res.mean_missing_edges << "\n";
    return std::fabs(res.p_finite - e1) <= 0.04 && std::fabs(res.p_virtz - e1) <= 0.04;
}

// ---- criterion 7: low-density square profile --------------------------------

bool criterion7(std::ostream& log) {
    const int n = 3000, trials = 50;
    const double p = std::pow(static_cast<double>(n), -0.9);
    std::atomic<int> good{0}, relhyp{0}, all_squares{0}, next{0};
    std::atomic<bool> profile_ok{true};
    auto body = [&] {
        while (true) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            auto rec = run_trial(n, p, t, 31, MeasurementSet::All);
            if (rec.has_k22 && !rec.has_k23) ++good;
            if (rec.status == RacgStatus::RelativelyHyperbolic) {
                ++relhyp;
                if (rec.peripheral_all_squares) ++all_squares;
                else profile_ok = false;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < g_workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();

    log << "  p = n^-0.9, n=3000: " << good.load() << "/" << trials
        << " trials with an induced square and no K_{2,3} (need >= 45)\n";
    log << "  " << all_squares.load() << "/" << relhyp.load()
        << " relatively hyperbolic trials have all-square peripherals\n";
    return good.load() >= (trials * 9) / 10 && profile_ok.load();
}

// ---- criterion 8: property suites -------------------------------------------

bool criterion8a(std::ostream& log) {
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 4 + static_cast<int>(rng() % 5);
        Graph g = oracles::random_graph(n, 0.35 + 0.4 * (static_cast<double>(rng() % 100) / 100.0),
                                        rng);
        auto canonical = oracles::as_vertex_lists(thick_fixed_point(g));
        auto shuffled = oracles::as_vertex_lists(thick_fixed_point_randomized(g, rng));
        if (canonical != shuffled) {
            log << "  fixed-point confluence violated on a graph with " << n << " vertices\n";
            return false;
        }
    }
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);
        CoxeterMatrix m = oracles::random_matrix(n, rng);
        auto canonical = oracles::as_vertex_lists(saturate_thick(m).pool);
        auto shuffled = oracles::as_vertex_lists(saturate_thick_randomized(m, rng));
        if (canonical != shuffled) {
            log << "  saturation confluence violated on a system with " << n << " generators\n";
            return false;
        }
    }
    log << "  1000 randomized-order runs reproduce the canonical maximal pools\n";
    return true;
}

bool criterion8b(std::ostream& log) {
    std::mt19937_64 rng(7777);
    std::atomic<long> relhyp{0};
    std::atomic<bool> ok{true};
    const int cases = 10000;
    std::vector<std::pair<int, double>> jobs;
    jobs.reserve(cases);
    for (int i = 0; i < cases; ++i) {
        int n = 4 + static_cast<int>(rng() % 9);
        double p = 0.1 + 0.8 * (static_cast<double>(rng() % 1000) / 1000.0);
        jobs.emplace_back(n, p);
    }
    std::atomic<int> next{0};
    auto body = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= cases) return;
            auto local = trial_rng(424242, jobs[i].first, i);
            Graph g = sample_gnp(jobs[i].first, jobs[i].second, local);
            try {
                auto rep = classify_coxeter(CoxeterMatrix::from_racg(g));
                if (rep.status == GeneralStatus::RelativelyHyperbolic) {
                    ++relhyp;
                    if (!rep.rh.ok()) ok = false;
                    for (std::size_t j = 0; j < rep.peripherals.J_list.size(); ++j)
                        if (!verify_witness(CoxeterMatrix::from_racg(g), rep.peripherals.arena,
                                            rep.peripherals.witness[j]))
                            ok = false;
                }
            } catch (const InternalInconsistency&) {
                ok = false;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < g_workers; ++w) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
    log << "  " << relhyp.load() << " relatively hyperbolic outputs among " << cases
        << " random graphs (n <= 12), every certificate and witness valid\n";
    return ok.load() && relhyp.load() > 1000;
}

bool criterion8c(std::ostream& log) {
    long thick_seen = 0;
    for (int n = 0; n <= 6; ++n) {
        for (std::uint64_t i = 0; i < oracles::graph_count(n); ++i) {
            Graph g = oracles::graph_from_index(n, i);
            if (classify_racg(g).status != RacgStatus::Thick) continue;
            ++thick_seen;
            bool is_square = n == 4 && g.edge_count() == 4 && induced_squares(g).size() == 1;
            if (!is_square && !contains_k23(g)) {
                log << "  dichotomy fails at n=" << n << " index=" << i << "\n";
                return false;
            }
        }
    }
    log << "  " << thick_seen
        << " thick graphs on <= 6 vertices; each is a square or contains K_{2,3}\n";
    return true;
}

bool criterion8(std::ostream& log) {
    bool a = criterion8a(log), b = criterion8b(log), c = criterion8c(log);
    return a && b && c;
}

// ---- criterion 9: sweep determinism -----------------------------------------

bool criterion9(std::ostream& log) {
    SweepConfig config;
    config.n_values = {60, 90};
    config.schedule = DensitySchedule::parse("2*log(n)/n");
    config.trials = 40;
    config.master_seed = 424242;

    std::string t1, a1, t2, a2;
    {
        std::ostringstream t, a;
        config.workers = 1;
        run_sweep(config, t, a);
        t1 = t.str();
        a1 = a.str();
    }
    {
        std::ostringstream t, a;
        config.workers = g_workers > 1 ? g_workers : 2;
        run_sweep(config, t, a);
        t2 = t.str();
        a2 = a.str();
    }
    bool ok = t1 == t2 && a1 == a2;
    log << "  trial CSV " << t1.size() << " bytes, aggregate " << a1.size()
        << " bytes; worker counts 1 and " << (g_workers > 1 ? g_workers : 2)
        << (ok ? " byte-identical" : " DIFFER") << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) selected.push_back(std::atoi(argv[++i]));
        else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) g_workers = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--with-census9") == 0) g_with_census9 = true;
        else if (std::strcmp(argv[i], "--census9-checkpoint") == 0 && i + 1 < argc)
            g_census9_checkpoint = argv[++i];
        else {
            std::cerr << "usage: acceptance [--criterion N]... [--workers W] [--with-census9]\n";
            return 64;
        }
    }

    std::vector<Criterion> criteria = {
        {1, "oracle equivalence on all 6-vertex graphs", criterion1},
        {2, "right-angled and general classifiers agree up to n=6", criterion2},
        {3, "census regression (n=4 pinned; n=5,6 vs brute force; n=7 timed)", criterion3},
        {4, "bound evaluations", criterion4},
        {5, "thick-proportion cells at n=4000", criterion5},
        {6, "high-density limit probabilities", criterion6},
        {7, "low-density square profile", criterion7},
        {8, "property suites (confluence, rh certificates, square-or-K23)", criterion8},
        {9, "sweep determinism across worker counts", criterion9},
    };

    int failures = 0;
    for (auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        std::ostringstream log;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(log);
        } catch (const std::exception& e) {
            log << "  exception: " << e.what() << "\n";
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.summary << " ["
                  << secs << "s]\n"
                  << log.str();
        std::cout.flush();
        if (!ok) ++failures;
    }
    return failures;
}
