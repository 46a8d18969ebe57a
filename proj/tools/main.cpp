// trexkit command-line surface: certified TREX solves, paths, the multistart
// heuristic, knockoff filtering, and the simulation harnesses. Every command
// is deterministic given its inputs and --seed; --parallelism only changes
// wall-clock time, never bytes.
//
// Exit codes: 0 success, 1 usage error, 2 file I/O error, 3 invalid
// configuration or data, 4 solver failure, 5 unexpected internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trexkit/errors.hpp"
#include "trexkit/io/csv.hpp"
#include "trexkit/knockoff/filter.hpp"
#include "trexkit/knockoff/json.hpp"
#include "trexkit/qtrex/qtrex.hpp"
#include "trexkit/sim/harness.hpp"
#include "trexkit/trex/ctrex.hpp"
#include "trexkit/trex/json.hpp"
#include "trexkit/trex/path.hpp"
#include "trexkit/trex/problem.hpp"
#include "trexkit/trex/topology.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonArgs {
    std::string x_path;
    std::string y_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int parallelism = 1;
};

fs::path prepare_out_dir(const std::string& dir) {
    fs::path path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw trexkit::IoError("cannot create output directory: " + dir);
    return path;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw trexkit::IoError("cannot write file: " + path.string());
    out << j.dump(1) << '\n';
}

void report_written(const fs::path& path) {
    std::cout << "wrote " << path.string() << '\n';
}

// --- trex-solve -----------------------------------------------------------

int run_trex_solve(const CommonArgs& args, double phi) {
    const auto problem = trexkit::trex::load_regression_csv(args.x_path, args.y_path);
    trexkit::trex::TrexParams params;
    params.phi = phi;
    const auto solution = trexkit::trex::ctrex(problem, params, args.parallelism);
    const auto topo = trexkit::trex::topology_report(solution);

    const auto dir = prepare_out_dir(args.out_dir);
    json report = trexkit::trex::solution_to_json(solution, phi);
    report["config"] = {{"command", "trex-solve"},
                        {"x", args.x_path},
                        {"y", args.y_path},
                        {"phi", phi},
                        {"seed", args.seed}};
    write_json(dir / "solution.json", report);
    report_written(dir / "solution.json");

    Eigen::MatrixXd features(topo.per_feature_value.size(), 3);
    for (Eigen::Index j = 0; j < features.rows(); ++j) {
        features(j, 0) = static_cast<double>(j + 1);
        features(j, 1) = topo.per_feature_value(j);
        features(j, 2) = topo.importance(j);
    }
    trexkit::io::write_matrix_csv((dir / "topology.csv").string(), features,
                                  {"feature", "best_value", "importance"});
    report_written(dir / "topology.csv");

    const auto bins = static_cast<Eigen::Index>(topo.histogram_counts.size());
    Eigen::MatrixXd histogram(bins, 3);
    for (Eigen::Index b = 0; b < bins; ++b) {
        histogram(b, 0) = topo.histogram_edges[static_cast<std::size_t>(b)];
        histogram(b, 1) = topo.histogram_edges[static_cast<std::size_t>(b) + 1];
        histogram(b, 2) =
            static_cast<double>(topo.histogram_counts[static_cast<std::size_t>(b)]);
    }
    trexkit::io::write_matrix_csv((dir / "histogram.csv").string(), histogram,
                                  {"bin_low", "bin_high", "count"});
    report_written(dir / "histogram.csv");
    return 0;
}

// --- trex-path --------------------------------------------------------------

int run_trex_path(const CommonArgs& args, const std::vector<double>& phi_grid) {
    const auto problem = trexkit::trex::load_regression_csv(args.x_path, args.y_path);
    trexkit::trex::TrexParams params;
    const auto path =
        trexkit::trex::ctrex_path(problem, phi_grid, params, args.parallelism);

    const auto dir = prepare_out_dir(args.out_dir);
    json report = trexkit::trex::path_to_json(path);
    report["config"] = {{"command", "trex-path"},
                        {"x", args.x_path},
                        {"y", args.y_path},
                        {"phi_grid", phi_grid},
                        {"seed", args.seed}};
    write_json(dir / "path.json", report);
    report_written(dir / "path.json");

    Eigen::MatrixXd points(static_cast<Eigen::Index>(path.points.size()), 4);
    for (Eigen::Index k = 0; k < points.rows(); ++k) {
        const auto& point = path.points[static_cast<std::size_t>(k)];
        points(k, 0) = point.phi;
        points(k, 1) = point.solution.value;
        points(k, 2) = static_cast<double>(point.solution.winner_feature);
        points(k, 3) = static_cast<double>(point.solution.winner_sign);
    }
    trexkit::io::write_matrix_csv((dir / "path_points.csv").string(), points,
                                  {"phi", "value", "winner_feature", "winner_sign"});
    report_written(dir / "path_points.csv");

    Eigen::MatrixXd entries(path.entry_values.size(), 2);
    for (Eigen::Index j = 0; j < entries.rows(); ++j) {
        entries(j, 0) = static_cast<double>(j + 1);
        entries(j, 1) = path.entry_values(j);
    }
    trexkit::io::write_matrix_csv((dir / "entry_values.csv").string(), entries,
                                  {"feature", "entry_phi"});
    report_written(dir / "entry_values.csv");
    return 0;
}

// --- trex-heuristic ---------------------------------------------------------

int run_trex_heuristic(const CommonArgs& args, double phi, int starts) {
    const auto problem = trexkit::trex::load_regression_csv(args.x_path, args.y_path);
    trexkit::qtrex::QtrexParams params;
    params.phi = phi;
    params.n_starts = starts;
    params.seed = args.seed;
    const auto result =
        trexkit::qtrex::qtrex_multistart(problem, params, args.parallelism);

    const auto dir = prepare_out_dir(args.out_dir);
    json report;
    report["config"] = {{"command", "trex-heuristic"},
                        {"x", args.x_path},
                        {"y", args.y_path},
                        {"phi", phi},
                        {"n_starts", starts},
                        {"seed", args.seed}};
    report["best_value"] = result.best_value;
    report["best_start"] = result.best_start;
    json beta = json::array();
    for (Eigen::Index j = 0; j < result.best_beta.size(); ++j) {
        beta.push_back(result.best_beta(j));
    }
    report["best_beta"] = std::move(beta);
    json traces = json::array();
    for (const auto& trace : result.traces) {
        traces.push_back({{"start", trace.start_index},
                          {"smooth_value", trace.smooth_value},
                          {"exact_value", trace.exact_value},
                          {"iterations", trace.iterations},
                          {"perturbed", trace.perturbed}});
    }
    report["traces"] = std::move(traces);
    write_json(dir / "heuristic.json", report);
    report_written(dir / "heuristic.json");

    trexkit::qtrex::write_traces_csv((dir / "traces.csv").string(), result);
    report_written(dir / "traces.csv");
    return 0;
}

// --- knockoff ---------------------------------------------------------------

int run_knockoff(const CommonArgs& args, const std::string& stat, double q) {
    std::string statistic;
    if (stat == "lasso") {
        statistic = "lasso";
    } else if (stat == "phipath") {
        statistic = "phi-path";
    } else if (stat == "fvalue") {
        statistic = "f-value";
    } else {
        throw trexkit::ConfigError("unknown statistic '" + stat +
                                   "' (expected fvalue, phipath, or lasso)");
    }
    if (!(q > 0.0) || q >= 1.0) {
        throw trexkit::ConfigError("q must lie strictly between 0 and 1");
    }

    const auto problem = trexkit::trex::load_regression_csv(args.x_path, args.y_path);
    const auto result = trexkit::knockoff::knockoff_filter(
        problem, statistic, q, args.seed, args.parallelism);

    const auto dir = prepare_out_dir(args.out_dir);
    json report = trexkit::knockoff::filter_to_json(result);
    report["config"] = {{"command", "knockoff"},
                        {"x", args.x_path},
                        {"y", args.y_path},
                        {"stat", stat},
                        {"q", q},
                        {"seed", args.seed}};
    write_json(dir / "knockoff.json", report);
    report_written(dir / "knockoff.json");

    const Eigen::Index p = result.statistic.W.size();
    Eigen::MatrixXd table(p, 4);
    for (Eigen::Index j = 0; j < p; ++j) {
        table(j, 0) = static_cast<double>(j + 1);
        table(j, 1) = result.statistic.W(j);
        table(j, 2) = result.statistic.Z(j);
        table(j, 3) = result.statistic.Z(j + p);
    }
    trexkit::io::write_matrix_csv((dir / "w_statistics.csv").string(), table,
                                  {"feature", "W", "Z_original", "Z_copy"});
    report_written(dir / "w_statistics.csv");
    return 0;
}

// --- sim commands -------------------------------------------------------------

int run_sim_fdr(const std::string& config_path, const std::string& out_dir,
                int parallelism) {
    const auto config = trexkit::sim::load_config(config_path);
    const auto report = trexkit::sim::run_fdr_experiment(config, parallelism);

    const auto dir = prepare_out_dir(out_dir);
    write_json(dir / "fdr_report.json", trexkit::sim::fdr_report_to_json(report));
    report_written(dir / "fdr_report.json");
    trexkit::sim::write_fdr_records_csv((dir / "fdr_records.csv").string(), report);
    report_written(dir / "fdr_records.csv");
    trexkit::sim::write_fdr_aggregates_csv((dir / "fdr_aggregates.csv").string(),
                                           report);
    report_written(dir / "fdr_aggregates.csv");
    return 0;
}

int run_sim_heuristic(const std::string& config_path, const std::string& out_dir,
                      int parallelism) {
    const auto config = trexkit::sim::load_config(config_path);
    const auto report = trexkit::sim::run_heuristic_study(config, parallelism);

    const auto dir = prepare_out_dir(out_dir);
    write_json(dir / "heuristic_report.json",
               trexkit::sim::heuristic_report_to_json(report));
    report_written(dir / "heuristic_report.json");
    trexkit::sim::write_success_curve_csv((dir / "success_curve.csv").string(),
                                          report);
    report_written(dir / "success_curve.csv");
    trexkit::sim::write_heuristic_records_csv(
        (dir / "heuristic_records.csv").string(), report);
    report_written(dir / "heuristic_records.csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse regression toolkit: certified TREX, heuristics, knockoffs"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    double solve_phi = 0.5;
    auto* solve = app.add_subcommand("trex-solve", "certified global solve");
    solve->add_option("x", solve_args.x_path, "design CSV")->required();
    solve->add_option("y", solve_args.y_path, "response CSV")->required();
    solve->add_option("--phi", solve_phi, "objective scale (> 0)");
    solve->add_option("--out", solve_args.out_dir, "output directory");
    solve->add_option("--seed", solve_args.seed, "random seed");
    solve->add_option("--parallelism", solve_args.parallelism, "worker threads");

    CommonArgs path_args;
    std::vector<double> phi_grid = {1.5, 1.0, 0.75, 0.5, 0.25};
    auto* path = app.add_subcommand("trex-path", "solution path over phi");
    path->add_option("x", path_args.x_path, "design CSV")->required();
    path->add_option("y", path_args.y_path, "response CSV")->required();
    path->add_option("--phi-grid", phi_grid, "strictly decreasing grid")
        ->delimiter(',');
    path->add_option("--out", path_args.out_dir, "output directory");
    path->add_option("--seed", path_args.seed, "random seed");
    path->add_option("--parallelism", path_args.parallelism, "worker threads");

    CommonArgs heur_args;
    double heur_phi = 0.5;
    int heur_starts = 21;
    auto* heur = app.add_subcommand("trex-heuristic", "smooth multistart heuristic");
    heur->add_option("x", heur_args.x_path, "design CSV")->required();
    heur->add_option("y", heur_args.y_path, "response CSV")->required();
    heur->add_option("--phi", heur_phi, "objective scale (> 0)");
    heur->add_option("--starts", heur_starts, "number of restarts");
    heur->add_option("--out", heur_args.out_dir, "output directory");
    heur->add_option("--seed", heur_args.seed, "random seed");
    heur->add_option("--parallelism", heur_args.parallelism, "worker threads");

    CommonArgs ko_args;
    std::string ko_stat = "fvalue";
    double ko_q = 0.2;
    auto* knockoff = app.add_subcommand("knockoff", "knockoff-filter selection");
    knockoff->add_option("x", ko_args.x_path, "design CSV")->required();
    knockoff->add_option("y", ko_args.y_path, "response CSV")->required();
    knockoff->add_option("--stat", ko_stat, "fvalue, phipath, or lasso");
    knockoff->add_option("--q", ko_q, "target false discovery rate");
    knockoff->add_option("--out", ko_args.out_dir, "output directory");
    knockoff->add_option("--seed", ko_args.seed, "random seed");
    knockoff->add_option("--parallelism", ko_args.parallelism, "worker threads");

    std::string fdr_config, fdr_out = ".";
    int fdr_parallelism = 1;
    auto* sim_fdr = app.add_subcommand("sim-fdr", "false-discovery experiment");
    sim_fdr->add_option("config", fdr_config, "experiment config JSON")->required();
    sim_fdr->add_option("--out", fdr_out, "output directory");
    sim_fdr->add_option("--parallelism", fdr_parallelism, "worker threads");

    std::string hs_config, hs_out = ".";
    int hs_parallelism = 1;
    auto* sim_heur =
        app.add_subcommand("sim-heuristic", "certified-vs-heuristic study");
    sim_heur->add_option("config", hs_config, "experiment config JSON")->required();
    sim_heur->add_option("--out", hs_out, "output directory");
    sim_heur->add_option("--parallelism", hs_parallelism, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) {
            if (!(solve_phi > 0.0)) {
                throw trexkit::ConfigError("phi must be positive");
            }
            return run_trex_solve(solve_args, solve_phi);
        }
        if (path->parsed()) return run_trex_path(path_args, phi_grid);
        if (heur->parsed()) {
            if (!(heur_phi > 0.0)) {
                throw trexkit::ConfigError("phi must be positive");
            }
            return run_trex_heuristic(heur_args, heur_phi, heur_starts);
        }
        if (knockoff->parsed()) return run_knockoff(ko_args, ko_stat, ko_q);
        if (sim_fdr->parsed()) {
            return run_sim_fdr(fdr_config, fdr_out, fdr_parallelism);
        }
        if (sim_heur->parsed()) {
            return run_sim_heuristic(hs_config, hs_out, hs_parallelism);
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const trexkit::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const trexkit::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 3;
    } catch (const trexkit::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
}
