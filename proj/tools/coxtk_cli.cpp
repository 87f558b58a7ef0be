// coxtk_cli.cpp - command-line front end: classification, sweeps, census and
// bound evaluation with reproducible configuration
//
// Exit codes: 0 success (classification outcomes are never encoded in the
// exit code), 2 malformed input or expression, 3 enumeration guard exceeded,
// 4 checkpoint mismatch.  All randomness flows from --seed.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxtk/bounds.hpp"
#include "coxtk/census.hpp"
#include "coxtk/coxeter.hpp"
#include "coxtk/general.hpp"
#include "coxtk/graph_io.hpp"
#include "coxtk/racg.hpp"
#include "coxtk/random_lab.hpp"

namespace {

using nlohmann::json;

json vertex_lists(const std::vector<coxtk::Bitset>& sets) {
    json out = json::array();
    for (auto& s : sets) out.push_back(s.to_vector());
    return out;
}

std::string plain_lists(const std::vector<coxtk::Bitset>& sets) {
    std::string out = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += ", ";
        out += sets[i].to_string();
    }
    return out + "]";
}

int run_classify_racg(const std::string& path, bool as_json) {
    coxtk::Graph g = coxtk::read_graph_file(path);
    coxtk::RacgReport report = coxtk::classify_racg(g);
    if (as_json) {
        json j;
        j["vertices"] = g.size();
        j["status"] = coxtk::to_string(report.status);
        j["order0"] = report.order0;
        j["peripherals"] = vertex_lists(report.peripherals);
        j["pool"] = vertex_lists(report.pool);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "status: " << coxtk::to_string(report.status) << '\n';
        if (report.status == coxtk::RacgStatus::Thick)
            std::cout << "order0: " << (report.order0 ? "true" : "false") << '\n';
        std::cout << "peripherals: " << plain_lists(report.peripherals) << '\n';
    }
    return 0;
}

int run_classify_coxeter(const std::string& path, bool as_json) {
    coxtk::CoxeterMatrix m = coxtk::read_coxeter_matrix_file(path);
    coxtk::GeneralReport report = coxtk::classify_coxeter(m);
    if (as_json) {
        json j;
        j["generators"] = m.rank();
        j["status"] = coxtk::to_string(report.status);
        j["peripherals"] = vertex_lists(report.peripherals.J_list);
        j["spans_all"] = report.peripherals.spans_all;
        if (report.status == coxtk::GeneralStatus::RelativelyHyperbolic) {
            j["rh"] = {{"rh1", report.rh.rh1_ok},
                       {"rh2", report.rh.rh2_ok},
                       {"rh3", report.rh.rh3_ok}};
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "status: " << coxtk::to_string(report.status) << '\n';
        std::cout << "peripherals: " << plain_lists(report.peripherals.J_list) << '\n';
        if (report.status == coxtk::GeneralStatus::RelativelyHyperbolic)
            std::cout << "rh certificate: RH1 " << (report.rh.rh1_ok ? "ok" : "FAIL") << ", RH2 "
                      << (report.rh.rh2_ok ? "ok" : "FAIL") << ", RH3 "
                      << (report.rh.rh3_ok ? "ok" : "FAIL") << '\n';
        if (!report.peripherals.J_list.empty()) {
            std::cout << "witnesses:\n";
            for (std::size_t i = 0; i < report.peripherals.J_list.size(); ++i) {
                std::cout << "  " << report.peripherals.J_list[i].to_string() << ":\n";
                std::ostringstream tree;
                coxtk::write_witness(tree, report.peripherals.arena, report.peripherals.witness[i],
                                     m.rank(), 2);
                std::cout << tree.str();
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thickness and relative hyperbolicity toolkit for Coxeter groups"};
    app.require_subcommand(1);

    // classify-racg
    std::string racg_path;
    bool racg_json = false;
    auto* classify_racg_cmd =
        app.add_subcommand("classify-racg", "classify a right-angled group from its presentation graph");
    classify_racg_cmd->add_option("path", racg_path, "graph file (edge list or 0/1 matrix)")
        ->required();
    classify_racg_cmd->add_flag("--json", racg_json, "machine-readable output");

    // classify-coxeter
    std::string cox_path;
    bool cox_json = false;
    auto* classify_cox_cmd =
        app.add_subcommand("classify-coxeter", "classify a general Coxeter system from its label matrix");
    classify_cox_cmd->add_option("path", cox_path, "Coxeter matrix file (0 encodes infinity)")
        ->required();
    classify_cox_cmd->add_flag("--json", cox_json, "machine-readable output");

    // sweep
    std::string sweep_n, sweep_expr, sweep_out, sweep_measure = "all";
    int sweep_trials = 0, sweep_workers = 1;
    std::string sweep_seed_text;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over random presentation graphs");
    sweep_cmd->add_option("--n", sweep_n, "comma-separated vertex counts")->required();
    sweep_cmd->add_option("--p", sweep_expr, "density expression over n, e.g. \"2*log(n)/n\"")
        ->required();
    sweep_cmd->add_option("--trials", sweep_trials, "trials per n")->required();
    sweep_cmd->add_option("--seed", sweep_seed_text, "master seed (required; all randomness derives from it)")
        ->required();
    sweep_cmd->add_option("--out", sweep_out, "output prefix; writes <out>_trials.csv and <out>_agg.csv")
        ->required();
    sweep_cmd->add_option("--workers", sweep_workers, "worker threads");
    sweep_cmd->add_option("--measurements", sweep_measure, "all|status");

    // census
    int census_n = -1, census_workers = 1;
    std::string census_checkpoint;
    auto* census_cmd = app.add_subcommand("census", "exhaustive labeled-graph census of thick graphs");
    census_cmd->add_option("--n", census_n, "vertex count (<= 9)")->required();
    census_cmd->add_option("--workers", census_workers, "worker threads");
    census_cmd->add_option("--checkpoint", census_checkpoint, "checkpoint file (resumable)");

    // bounds
    int bounds_f = -1;
    bool bounds_pi9 = false, bounds_pi_bound = false;
    std::vector<int> bounds_tail;
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the probability bounds");
    bounds_cmd->add_option("--f", bounds_f, "evaluate f(n) exactly");
    bounds_cmd->add_flag("--pi9", bounds_pi9, "print pi_9 = 1 - t(9)/2^36");
    bounds_cmd->add_flag("--pi-bound", bounds_pi_bound, "print the doubling bound at n=9");
    bounds_cmd->add_option("--tail", bounds_tail, "n k: print sum_{i=n}^{n+k-1} f(i)")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (classify_racg_cmd->parsed()) return run_classify_racg(racg_path, racg_json);
        if (classify_cox_cmd->parsed()) return run_classify_coxeter(cox_path, cox_json);

        if (sweep_cmd->parsed()) {
            coxtk::SweepConfig config;
            std::stringstream ss(sweep_n);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) config.n_values.push_back(std::stoi(item));
            config.schedule = coxtk::DensitySchedule::parse(sweep_expr);
            config.trials = sweep_trials;
            config.master_seed = std::stoull(sweep_seed_text);
            config.workers = sweep_workers;
            if (sweep_measure == "all") config.measurements = coxtk::MeasurementSet::All;
            else if (sweep_measure == "status") config.measurements = coxtk::MeasurementSet::StatusOnly;
            else throw coxtk::FormatError("unknown --measurements value '" + sweep_measure + "'");
            std::ofstream trials(sweep_out + "_trials.csv");
            std::ofstream agg(sweep_out + "_agg.csv");
            if (!trials || !agg)
                throw coxtk::InputError("cannot open output files with prefix '" + sweep_out + "'");
            coxtk::run_sweep(config, trials, agg);
            std::cout << "wrote " << sweep_out << "_trials.csv and " << sweep_out << "_agg.csv\n";
            return 0;
        }

        if (census_cmd->parsed()) {
            auto result = coxtk::census(census_n, census_workers, census_checkpoint, &std::cerr);
            std::cout << "There are " << result.t << " thick graphs on a given set of "
                      << result.n << " labeled vertices.\n";
            std::cout << "There are " << result.c
                      << " cliques in the disjoint union of all such graphs.\n";
            std::cout << "RESULT " << result.n << ' ' << result.t << ' ' << result.c << '\n';
            return 0;
        }

        if (bounds_cmd->parsed()) {
            bool did = false;
            if (bounds_f >= 1) {
                if (bounds_f <= 2000) {
                    std::cout << "f(" << bounds_f << ") = "
                              << coxtk::to_decimal(coxtk::f_exact(bounds_f), 15)
                              << " (exact rational, 15 digits shown)\n";
                } else {
                    auto v = coxtk::f_value(bounds_f);
                    std::cout << "f(" << bounds_f << ") = " << v.digits << " ("
                              << v.precision_bits << "-bit float)\n";
                }
                did = true;
            }
            if (bounds_pi9) {
                std::cout << "pi9 = " << coxtk::to_decimal(coxtk::pi9_exact(), 15)
                          << " (exact: 1 - " << coxtk::census_t9 << "/2^36, 15 digits shown)\n";
                did = true;
            }
            if (bounds_pi_bound) {
                auto alpha = coxtk::pi_2n_bound_exact(9, coxtk::census_t9, coxtk::census_c9,
                                                      coxtk::pi9_exact());
                std::cout << "pi_2n_bound(9) = " << coxtk::to_decimal(alpha, 15)
                          << " (exact rational, 15 digits shown)\n";
                did = true;
            }
            if (bounds_tail.size() == 2) {
                auto t = coxtk::additive_tail_exact(bounds_tail[0], bounds_tail[1]);
                std::cout << "tail(" << bounds_tail[0] << "," << bounds_tail[1]
                          << ") = " << coxtk::to_decimal(t, 15)
                          << " (exact rational, 15 digits shown)\n";
                did = true;
            }
            if (!did) throw coxtk::InputError("bounds: pick one of --f, --pi9, --pi-bound, --tail");
            return 0;
        }
    } catch (const coxtk::GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 3;
    } catch (const coxtk::CheckpointMismatch& e) {
        std::cerr << "checkpoint mismatch: " << e.what() << '\n';
        return 4;
    } catch (const coxtk::FormatError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const coxtk::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
