// random_lab.hpp - seeded G(n,p) sampling and the Monte Carlo sweep harness
//
// Reproducibility contract: every trial draws from its own generator seeded
// by mixing (master_seed, n, trial); identical configuration and seed give
// byte-identical CSV output no matter how many workers run the trials.
#ifndef COXTK_RANDOM_LAB_HPP
#define COXTK_RANDOM_LAB_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "coxtk/graph.hpp"
#include "coxtk/patterns.hpp"
#include "coxtk/racg.hpp"
#include "coxtk/schedule.hpp"

namespace coxtk {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Per-trial stream: hash of (master_seed, n, trial_index).  Trial-level
// parallelism cannot perturb the draws.
inline std::mt19937_64 trial_rng(std::uint64_t master_seed, int n, int trial) {
    std::uint64_t s = splitmix64(master_seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(n));
    s = splitmix64(s ^ static_cast<std::uint64_t>(trial));
    return std::mt19937_64(s);
}

// Uniform in [0,1) from the top 53 bits; the <random> distributions are not
// pinned down by the standard, this is.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Each of the C(n,2) pairs becomes an edge independently with probability p,
// scanned in row-major order over u < v.
inline Graph sample_gnp(int n, double p, std::mt19937_64& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability outside [0,1]");
    Graph g(n);
    if (p == 0.0) return g;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) g.add_edge(u, v);
    return g;
}

struct RelhypProfile {
    bool peripheral_all_squares = false;  // relatively hyperbolic with only square peripherals
    double giant_fraction = 0.0;
    int nontree_components = 0;
    std::vector<ComponentInfo> component_census;
};

namespace lab_detail {

inline bool is_square_set(const Graph& g, const Bitset& s) {
    if (s.count() != 4) return false;
    for (int v = s.first(); v != -1; v = s.next(v))
        if (link_in(g, v, s).count() != 2) return false;
    return true;
}

inline RelhypProfile profile_from_report(const Graph& g, const RacgReport& report) {
    RelhypProfile out;
    out.component_census = component_census(g);
    int largest = 0;
    for (auto& c : out.component_census) {
        largest = std::max(largest, c.size);
        if (!c.is_tree) ++out.nontree_components;
    }
    out.giant_fraction = g.size() > 0 ? static_cast<double>(largest) / g.size() : 0.0;
    if (report.status == RacgStatus::RelativelyHyperbolic) {
        out.peripheral_all_squares = true;
        for (auto& p : report.peripherals)
            if (!is_square_set(g, p)) out.peripheral_all_squares = false;
    }
    return out;
}

}  // namespace lab_detail

inline RelhypProfile relhyp_profile(const Graph& g) {
    return lab_detail::profile_from_report(g, classify_racg(g));
}

enum class MeasurementSet {
    All,         // classification plus pattern and component measurements
    StatusOnly,  // classification only; pattern columns are printed as NA
};

struct TrialRecord {
    int n = 0;
    double p = 0.0;
    int trial = 0;
    RacgStatus status = RacgStatus::Finite;
    bool thick = false;
    bool order0 = false;
    bool has_k22 = false;
    bool has_k23 = false;
    bool peripheral_all_squares = false;
    double giant_fraction = 0.0;
    int nontree_components = 0;
    long missing_edges = 0;
    bool patterns_measured = true;
};

inline TrialRecord run_trial(int n, double p, int trial, std::uint64_t master_seed,
                             MeasurementSet measurements = MeasurementSet::All) {
    auto rng = trial_rng(master_seed, n, trial);
    Graph g = sample_gnp(n, p, rng);
    TrialRecord rec;
    rec.n = n;
    rec.p = p;
    rec.trial = trial;
    rec.missing_edges = missing_edge_count(g);
    RacgReport report = classify_racg(g);
    rec.status = report.status;
    rec.thick = report.status == RacgStatus::Thick;
    rec.order0 = report.order0;
    if (measurements == MeasurementSet::All) {
        rec.has_k22 = contains_induced_square(g);
        rec.has_k23 = contains_k23(g);
        auto profile = lab_detail::profile_from_report(g, report);
        rec.peripheral_all_squares = profile.peripheral_all_squares;
        rec.giant_fraction = profile.giant_fraction;
        rec.nontree_components = profile.nontree_components;
    } else {
        rec.patterns_measured = false;
    }
    return rec;
}

struct SweepConfig {
    std::vector<int> n_values;
    DensitySchedule schedule;
    int trials = 0;
    std::uint64_t master_seed = 0;
    MeasurementSet measurements = MeasurementSet::All;
    int workers = 1;
};

namespace lab_detail {

inline std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline void write_trial_row(std::ostream& out, const TrialRecord& r) {
    out << r.n << ',' << format_double("%.10g", r.p) << ',' << r.trial << ','
        << to_string(r.status) << ',' << (r.thick ? 1 : 0) << ',' << (r.order0 ? 1 : 0) << ',';
    if (r.patterns_measured)
        out << (r.has_k22 ? 1 : 0) << ',' << (r.has_k23 ? 1 : 0) << ','
            << (r.peripheral_all_squares ? 1 : 0) << ',' << format_double("%.6f", r.giant_fraction)
            << ',' << r.nontree_components << ',';
    else
        out << "NA,NA,NA,NA,NA,";
    out << r.missing_edges << '\n';
}

}  // namespace lab_detail

// Runs trials for every (n, trial) cell on the configured worker count and
// writes the per-trial and aggregate CSVs.  Row order is (n, trial),
// independent of scheduling.
inline void run_sweep(const SweepConfig& config, std::ostream& trial_csv, std::ostream& agg_csv) {
    if (config.trials < 1) throw InputError("sweep needs at least one trial per n");
    if (config.n_values.empty()) throw InputError("sweep needs at least one n");
    std::vector<double> densities;
    for (int n : config.n_values) densities.push_back(config.schedule.density_at(n));

    const std::size_t total = config.n_values.size() * static_cast<std::size_t>(config.trials);
    std::vector<TrialRecord> records(total);
    std::atomic<std::size_t> next{0};
    int workers = std::max(1, config.workers);
    auto worker = [&] {
        while (true) {
            std::size_t job = next.fetch_add(1);
            if (job >= total) return;
            std::size_t ni = job / static_cast<std::size_t>(config.trials);
            int trial = static_cast<int>(job % static_cast<std::size_t>(config.trials));
            records[job] = run_trial(config.n_values[ni], densities[ni], trial, config.master_seed,
                                     config.measurements);
        }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    trial_csv << "n,p,trial,status,thick,order0,has_k22,has_k23,peripheral_all_squares,"
                 "giant_fraction,nontree_components,missing_edges\n";
    for (auto& r : records) lab_detail::write_trial_row(trial_csv, r);

    agg_csv << "n,p,trials,prop_thick,prop_relhyp,prop_hyperbolic,prop_finite,prop_virtz\n";
    for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
        int thick = 0, relhyp = 0, hyp = 0, finite = 0, virtz = 0;
        for (int t = 0; t < config.trials; ++t) {
            const auto& r = records[ni * static_cast<std::size_t>(config.trials) +
                                    static_cast<std::size_t>(t)];
            thick += r.status == RacgStatus::Thick;
            relhyp += r.status == RacgStatus::RelativelyHyperbolic;
            hyp += r.status == RacgStatus::Hyperbolic;
            finite += r.status == RacgStatus::Finite;
            virtz += r.status == RacgStatus::VirtuallyCyclic;
        }
        double k = config.trials;
        agg_csv << config.n_values[ni] << ',' << lab_detail::format_double("%.10g", densities[ni])
                << ',' << config.trials << ',' << lab_detail::format_double("%.6f", thick / k) << ','
                << lab_detail::format_double("%.6f", relhyp / k) << ','
                << lab_detail::format_double("%.6f", hyp / k) << ','
                << lab_detail::format_double("%.6f", finite / k) << ','
                << lab_detail::format_double("%.6f", virtz / k) << '\n';
    }
}

struct HighDensityResult {
    double p_finite = 0.0;
    double p_virtz = 0.0;
    double p_other = 0.0;
    double mean_missing_edges = 0.0;
};

// Samples G(n, 1 - alpha/n^2) and classifies by missing-edge count: zero
// missing edges is finite, one is virtually cyclic, everything else lands in
// p_other (pairwise-disjoint missing edges there make the group virtually a
// power of the infinite dihedral group, thick of order 0).
inline HighDensityResult high_density_experiment(double alpha, int n, int trials,
                                                 std::uint64_t seed, int workers = 1) {
    if (alpha < 0) throw InputError("alpha must be nonnegative");
    if (alpha > static_cast<double>(n) * n) throw InputError("alpha/n^2 must be at most 1");
    double p = 1.0 - alpha / (static_cast<double>(n) * n);
    std::atomic<long> finite{0}, virtz{0};
    std::atomic<long> missing_total{0};
    std::atomic<int> next{0};
    auto body = [&] {
        while (true) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            auto rng = trial_rng(seed, n, t);
            Graph g = sample_gnp(n, p, rng);
            long missing = missing_edge_count(g);
            missing_total += missing;
            if (missing == 0) ++finite;
            else if (missing == 1) ++virtz;
        }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < std::max(1, workers); ++w) threads.emplace_back(body);
    body();
    for (auto& t : threads) t.join();

    HighDensityResult out;
    out.p_finite = static_cast<double>(finite.load()) / trials;
    out.p_virtz = static_cast<double>(virtz.load()) / trials;
    out.p_other = 1.0 - out.p_finite - out.p_virtz;
    out.mean_missing_edges = static_cast<double>(missing_total.load()) / trials;
    return out;
}

}  // namespace coxtk

#endif
