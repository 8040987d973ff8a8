#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "susched/engine.hpp"
#include "susched/metrics.hpp"
#include "susched/workload.hpp"

namespace susched {

/// A scheduler choice by name, plus parameters where the policy takes any.
struct PolicySpec {
    std::string name;        // canonical upper-case name, e.g. "UDSU"
    double gpsu_p = 1.0;     // GPSU only
    std::string label;       // display/column label, e.g. "GPSU:0.9"
};

/// Parses "FCFS", "GPSU:0.9", "gpsu:1" etc.; throws with the list of valid
/// names on anything unknown.
PolicySpec parse_policy_spec(const std::string& text);
std::vector<std::string> known_policy_names();

/// One run's worth of scheduler; PS is flagged instead of instantiated
/// because it bypasses select_next entirely.
struct PolicyHandle {
    std::unique_ptr<Policy> policy;
    bool exact_ps = false;
};

PolicyHandle make_policy(const PolicySpec& spec, bool fine_grained);

enum class WorkloadKind { Synthetic, Pacct, WebTrace, WebMix, JobsCsv };

/// Full description of a sweep: workload source x policies x loads x urgent
/// fractions x seeds. Parsed from a flat key=value config file.
struct ExperimentConfig {
    WorkloadKind workload = WorkloadKind::Synthetic;
    std::size_t n_jobs = 10000;
    double mu = 0.04;
    std::vector<double> rho_values{1.1};
    std::vector<double> urgent_fractions{0.0};
    bool fine_grained = false;
    std::vector<std::uint64_t> seeds{1};
    std::vector<PolicySpec> policies;
    double quantum = 1.0;
    std::string path;                    // trace / jobs csv input
    Scenario scenario = Scenario::One;
    double target_rho = 1.05;            // webmix load calibration
    std::string out_dir = "out";
    bool csv = true;
    bool markdown = false;
    bool emit_records = true;
    std::optional<double> abort_threshold;
    bool abort_auto = false;             // derive threshold from a PS run

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// One sweep cell result, one row of the raw CSV.
struct SweepRow {
    std::string policy;
    double rho = 0.0;
    double urgent_fraction = 0.0;
    std::uint64_t seed = 0;
    ExperimentReport report;
};

/// Runs the whole sweep and writes raw/summary tables (and per-job record
/// files when enabled) under config.out_dir. Deterministic: a given config
/// always produces byte-identical files.
std::vector<SweepRow> run_experiment(const ExperimentConfig& config);

/// Per-job record dump used by the pairwise comparison pipeline.
void write_records_csv(const std::string& path, const RunResult& run,
                       const std::vector<Job>& jobs);
RunResult read_records_csv(const std::string& path);

/// Pairwise matrix over every record file in a directory, written as CSV
/// (and markdown when requested).
void write_pairwise(const std::string& runs_dir, const std::string& out_dir, bool markdown);

}  // namespace susched
