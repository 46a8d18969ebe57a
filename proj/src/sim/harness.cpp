#include "trexkit/sim/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "trexkit/errors.hpp"
#include "trexkit/knockoff/filter.hpp"
#include "trexkit/qtrex/qtrex.hpp"
#include "trexkit/trex/ctrex.hpp"
#include "trexkit/util/parallel.hpp"
#include "trexkit/util/rng.hpp"

namespace trexkit::sim {

namespace {

// Distinct substream families so data, heuristic restarts, and knockoff row
// extensions never share draws.
constexpr std::uint64_t kHeuristicStream = 1u << 20;
constexpr std::uint64_t kKnockoffStream = 1u << 21;

void write_double(std::ostream& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

nlohmann::json mean_to_json(const MeanWithError& m) {
    return {{"mean", m.mean}, {"std_error", m.std_error}, {"count", m.count}};
}

}  // namespace

// ---- certified-vs-heuristic study --------------------------------------

std::vector<CurvePoint> success_curve_from_records(
    const std::vector<HeuristicRecord>& records, int n_starts) {
    std::vector<CurvePoint> curve(static_cast<std::size_t>(n_starts));
    for (int k = 0; k < n_starts; ++k) {
        std::vector<double> flags;
        for (const auto& rec : records) {
            if (rec.failed) continue;
            flags.push_back(rec.success_after[static_cast<std::size_t>(k)] ? 1.0
                                                                           : 0.0);
        }
        const auto stats = mean_with_error(flags);
        curve[static_cast<std::size_t>(k)] = {k + 1, stats.mean, stats.std_error};
    }
    return curve;
}

HeuristicReport run_heuristic_study(const SimConfig& config, int parallelism) {
    validate_config(config);
    HeuristicReport report;
    report.config = config;
    report.records.resize(static_cast<std::size_t>(config.n_reps));

    parallel_for(static_cast<std::size_t>(config.n_reps),
                 static_cast<unsigned>(std::max(1, parallelism)),
                 [&](std::size_t rep) {
        HeuristicRecord& rec = report.records[rep];
        rec.rep = static_cast<int>(rep);
        try {
            const SimData data = gen_linear_data(config, static_cast<int>(rep));

            trex::TrexParams cparams;
            cparams.phi = config.phi;
            const auto certified = trex::ctrex(data.problem, cparams, 1);
            rec.certified_value = certified.value;
            rec.certified_error =
                estimation_error(certified.beta_hat, data.beta_star);

            qtrex::QtrexParams qparams;
            qparams.phi = config.phi;
            qparams.n_starts = config.n_starts;
            qparams.seed = Rng::derive(config.seed, kHeuristicStream + rep).bits();
            const auto multi = qtrex::qtrex_multistart(data.problem, qparams, 1);
            rec.heuristic_error =
                estimation_error(multi.best_beta, data.beta_star);

            rec.start_values.reserve(multi.traces.size());
            rec.success_after.reserve(multi.traces.size());
            double prefix_best = std::numeric_limits<double>::infinity();
            for (const auto& trace : multi.traces) {
                rec.start_values.push_back(trace.exact_value);
                prefix_best = std::min(prefix_best, trace.exact_value);
                rec.success_after.push_back(
                    prefix_best <= certified.value + config.success_tolerance ? 1
                                                                              : 0);
            }
        } catch (const std::exception&) {
            rec.failed = true;
            rec.start_values.assign(static_cast<std::size_t>(config.n_starts), 0.0);
            rec.success_after.assign(static_cast<std::size_t>(config.n_starts), 0);
        }
    });

    report.success_curve =
        success_curve_from_records(report.records, config.n_starts);
    std::vector<double> cert_errors, heur_errors;
    for (const auto& rec : report.records) {
        if (rec.failed) {
            ++report.failures;
            continue;
        }
        cert_errors.push_back(rec.certified_error);
        heur_errors.push_back(rec.heuristic_error);
    }
    report.certified_error = mean_with_error(cert_errors);
    report.heuristic_error = mean_with_error(heur_errors);
    return report;
}

// ---- false-discovery experiment -----------------------------------------

std::vector<FdrAggregate> fdr_aggregates_from_records(
    const std::vector<FdrRecord>& records, const SimConfig& config) {
    std::vector<FdrAggregate> aggregates;
    for (const auto& stat : config.statistics) {
        for (const double q : config.q_levels) {
            FdrAggregate agg;
            agg.statistic = stat;
            agg.q = q;
            std::vector<double> fdps, mfdps, tps;
            for (const auto& rec : records) {
                if (rec.statistic != stat || rec.q != q) continue;
                if (rec.failed) {
                    ++agg.failures;
                    continue;
                }
                fdps.push_back(rec.fdp);
                mfdps.push_back(rec.modified_fdp);
                tps.push_back(rec.tp_rate);
            }
            agg.fdr = mean_with_error(fdps);
            agg.modified_fdr = mean_with_error(mfdps);
            agg.tp_rate = mean_with_error(tps);
            aggregates.push_back(std::move(agg));
        }
    }
    return aggregates;
}

FdrReport run_fdr_experiment(const SimConfig& config, int parallelism) {
    validate_config(config);
    FdrReport report;
    report.config = config;

    const std::size_t stats_count = config.statistics.size();
    const std::size_t q_count = config.q_levels.size();
    const std::size_t per_rep = stats_count * q_count;
    report.records.resize(static_cast<std::size_t>(config.n_reps) * per_rep);

    parallel_for(static_cast<std::size_t>(config.n_reps),
                 static_cast<unsigned>(std::max(1, parallelism)),
                 [&](std::size_t rep) {
        const std::size_t base = rep * per_rep;
        for (std::size_t s = 0; s < stats_count; ++s) {
            for (std::size_t k = 0; k < q_count; ++k) {
                FdrRecord& rec = report.records[base + s * q_count + k];
                rec.rep = static_cast<int>(rep);
                rec.statistic = config.statistics[s];
                rec.q = config.q_levels[k];
            }
        }

        SimData data;
        knockoff::KnockoffModel model;
        bool construction_ok = false;
        try {
            data = gen_linear_data(config, static_cast<int>(rep));
            model = knockoff::make_knockoffs(
                data.problem, Rng::derive(config.seed, kKnockoffStream + rep).bits());
            construction_ok = true;
        } catch (const std::exception&) {
            for (std::size_t i = 0; i < per_rep; ++i) {
                report.records[base + i].failed = true;
            }
        }
        if (!construction_ok) return;

        for (std::size_t s = 0; s < stats_count; ++s) {
            Eigen::VectorXd W;
            bool stat_ok = false;
            try {
                W = knockoff::compute_statistic(model, config.statistics[s], 1).W;
                stat_ok = true;
            } catch (const std::exception&) {
                for (std::size_t k = 0; k < q_count; ++k) {
                    report.records[base + s * q_count + k].failed = true;
                }
            }
            if (!stat_ok) continue;

            for (std::size_t k = 0; k < q_count; ++k) {
                FdrRecord& rec = report.records[base + s * q_count + k];
                const auto selection = knockoff::knockoff_threshold(W, rec.q);
                rec.selected = selection.selected;
                for (const int j : rec.selected) {
                    if (data.beta_star(j - 1) != 0.0) {
                        ++rec.true_positives;
                    } else {
                        ++rec.false_positives;
                    }
                }
                const auto picked = static_cast<double>(rec.selected.size());
                rec.fdp = rec.false_positives / std::max(1.0, picked);
                rec.modified_fdp = rec.false_positives / (picked + 1.0 / rec.q);
                rec.tp_rate = config.sparsity > 0
                                  ? rec.true_positives /
                                        static_cast<double>(config.sparsity)
                                  : 0.0;
            }
        }
    });

    report.aggregates = fdr_aggregates_from_records(report.records, config);
    return report;
}

// ---- exports -------------------------------------------------------------

nlohmann::json heuristic_report_to_json(const HeuristicReport& report) {
    nlohmann::json j;
    j["config"] = config_to_json(report.config);
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : report.records) {
        records.push_back({{"rep", rec.rep},
                           {"failed", rec.failed},
                           {"certified_value", rec.certified_value},
                           {"certified_error", rec.certified_error},
                           {"heuristic_error", rec.heuristic_error},
                           {"start_values", rec.start_values},
                           {"success_after", rec.success_after}});
    }
    j["records"] = std::move(records);
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& point : report.success_curve) {
        curve.push_back({{"restarts", point.restarts},
                         {"probability", point.probability},
                         {"std_error", point.std_error}});
    }
    j["success_curve"] = std::move(curve);
    j["certified_error"] = mean_to_json(report.certified_error);
    j["heuristic_error"] = mean_to_json(report.heuristic_error);
    j["failures"] = report.failures;
    return j;
}

nlohmann::json fdr_report_to_json(const FdrReport& report) {
    nlohmann::json j;
    j["config"] = config_to_json(report.config);
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : report.records) {
        records.push_back({{"rep", rec.rep},
                           {"statistic", rec.statistic},
                           {"q", rec.q},
                           {"failed", rec.failed},
                           {"selected", rec.selected},
                           {"true_positives", rec.true_positives},
                           {"false_positives", rec.false_positives},
                           {"fdp", rec.fdp},
                           {"modified_fdp", rec.modified_fdp},
                           {"tp_rate", rec.tp_rate}});
    }
    j["records"] = std::move(records);
    nlohmann::json aggregates = nlohmann::json::array();
    for (const auto& agg : report.aggregates) {
        aggregates.push_back({{"statistic", agg.statistic},
                              {"q", agg.q},
                              {"fdr", mean_to_json(agg.fdr)},
                              {"modified_fdr", mean_to_json(agg.modified_fdr)},
                              {"tp_rate", mean_to_json(agg.tp_rate)},
                              {"failures", agg.failures}});
    }
    j["aggregates"] = std::move(aggregates);
    return j;
}

void write_success_curve_csv(const std::string& path,
                             const HeuristicReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "restarts,success_probability,std_error\n";
    for (const auto& point : report.success_curve) {
        out << point.restarts << ',';
        write_double(out, point.probability);
        out << ',';
        write_double(out, point.std_error);
        out << '\n';
    }
}

void write_heuristic_records_csv(const std::string& path,
                                 const HeuristicReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "rep,failed,certified_value,best_value,certified_error,"
           "heuristic_error,success_first_start\n";
    for (const auto& rec : report.records) {
        const double best =
            rec.start_values.empty()
                ? std::numeric_limits<double>::quiet_NaN()
                : *std::min_element(rec.start_values.begin(),
                                    rec.start_values.end());
        out << rec.rep << ',' << (rec.failed ? 1 : 0) << ',';
        write_double(out, rec.certified_value);
        out << ',';
        write_double(out, best);
        out << ',';
        write_double(out, rec.certified_error);
        out << ',';
        write_double(out, rec.heuristic_error);
        out << ',' << (rec.success_after.empty() ? 0 : rec.success_after.front())
            << '\n';
    }
}

void write_fdr_records_csv(const std::string& path, const FdrReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "rep,statistic,q,failed,selected,true_positives,false_positives,"
           "fdp,modified_fdp,tp_rate\n";
    for (const auto& rec : report.records) {
        out << rec.rep << ',' << rec.statistic << ',';
        write_double(out, rec.q);
        out << ',' << (rec.failed ? 1 : 0) << ',' << rec.selected.size() << ','
            << rec.true_positives << ',' << rec.false_positives << ',';
        write_double(out, rec.fdp);
        out << ',';
        write_double(out, rec.modified_fdp);
        out << ',';
        write_double(out, rec.tp_rate);
        out << '\n';
    }
}

void write_fdr_aggregates_csv(const std::string& path, const FdrReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    out << "statistic,q,fdr,fdr_se,modified_fdr,modified_fdr_se,"
           "tp_rate,tp_rate_se,failures\n";
    for (const auto& agg : report.aggregates) {
        out << agg.statistic << ',';
        write_double(out, agg.q);
        out << ',';
        write_double(out, agg.fdr.mean);
        out << ',';
        write_double(out, agg.fdr.std_error);
        out << ',';
        write_double(out, agg.modified_fdr.mean);
        out << ',';
        write_double(out, agg.modified_fdr.std_error);
        out << ',';
        write_double(out, agg.tp_rate.mean);
        out << ',';
        write_double(out, agg.tp_rate.std_error);
        out << ',' << agg.failures << '\n';
    }
}

}  // namespace trexkit::sim
