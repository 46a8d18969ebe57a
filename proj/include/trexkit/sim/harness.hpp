#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trexkit/sim/config.hpp"
#include "trexkit/sim/generate.hpp"
#include "trexkit/util/stats.hpp"

namespace trexkit::sim {

// ---- certified-vs-heuristic study --------------------------------------

struct HeuristicRecord {
    int rep = 0;
    bool failed = false;
    double certified_value = 0.0;
    double certified_error = 0.0;  // ||certified beta - planted beta||
    double heuristic_error = 0.0;  // same for the best multistart point
    std::vector<double> start_values;  // exact objective per start, start order
    std::vector<int> success_after;    // 1 when the best of the first k+1
                                       // starts is within tolerance
};

struct CurvePoint {
    int restarts = 0;
    double probability = 0.0;
    double std_error = 0.0;
};

struct HeuristicReport {
    SimConfig config;
    std::vector<HeuristicRecord> records;
    std::vector<CurvePoint> success_curve;  // restarts = 1 .. n_starts
    MeanWithError certified_error;
    MeanWithError heuristic_error;
    int failures = 0;
};

// Per repetition: certified optimum, then the multistart heuristic on the
// same data; success flags are prefix minima so the curve never decreases.
// Failed repetitions are recorded and excluded from the aggregates.
HeuristicReport run_heuristic_study(const SimConfig& config, int parallelism = 1);

// Aggregates are derived from the records; these rebuild them (used
// internally and by consistency checks).
std::vector<CurvePoint> success_curve_from_records(
    const std::vector<HeuristicRecord>& records, int n_starts);

// ---- false-discovery experiment -----------------------------------------

struct FdrRecord {
    int rep = 0;
    std::string statistic;
    double q = 0.0;
    bool failed = false;
    std::vector<int> selected;  // 1-based
    int true_positives = 0;
    int false_positives = 0;
    double fdp = 0.0;           // FP / max(1, |S|)
    double modified_fdp = 0.0;  // FP / (|S| + 1/q), the bounded quantity
    double tp_rate = 0.0;       // TP / sparsity (0 under the global null)
};

struct FdrAggregate {
    std::string statistic;
    double q = 0.0;
    MeanWithError fdr;
    MeanWithError modified_fdr;
    MeanWithError tp_rate;
    int failures = 0;
};

struct FdrReport {
    SimConfig config;
    std::vector<FdrRecord> records;  // rep-major, then statistic, then q
    std::vector<FdrAggregate> aggregates;
};

// Per repetition: knockoff construction once, then every configured
// statistic and every q level. Construction or statistic failures mark the
// affected records and are excluded from the aggregates.
FdrReport run_fdr_experiment(const SimConfig& config, int parallelism = 1);

std::vector<FdrAggregate> fdr_aggregates_from_records(
    const std::vector<FdrRecord>& records, const SimConfig& config);

// ---- exports -------------------------------------------------------------

nlohmann::json heuristic_report_to_json(const HeuristicReport& report);
nlohmann::json fdr_report_to_json(const FdrReport& report);

// restarts,success_probability,std_error
void write_success_curve_csv(const std::string& path,
                             const HeuristicReport& report);
// rep,failed,certified_value,best_value,certified_error,heuristic_error,success_first_start
void write_heuristic_records_csv(const std::string& path,
                                 const HeuristicReport& report);
// rep,statistic,q,failed,selected,true_positives,false_positives,fdp,modified_fdp,tp_rate
void write_fdr_records_csv(const std::string& path, const FdrReport& report);
// statistic,q,fdr,fdr_se,modified_fdr,modified_fdr_se,tp_rate,tp_rate_se,failures
void write_fdr_aggregates_csv(const std::string& path, const FdrReport& report);

}  // namespace trexkit::sim
