#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "susched/engine.hpp"

namespace susched {

/// Aggregated outcome of one run. Ratios are percentages in [0,100];
/// a ratio is absent when its base population is empty (printed as "-").
struct ExperimentReport {
    std::optional<double> achieved_ratio;     // % of urgent jobs sped up
    std::optional<double> successful_ratio;   // % of urgent jobs sped up by >= their RSU
    std::optional<double> slowdown_nonurgent; // % of non-urgent jobs slowed down
    double mean_wait = 0.0;
    double p95_wait = 0.0;
    double max_wait = 0.0;
    double std_wait = 0.0;  // population standard deviation
    std::optional<double> dnuji;
    std::optional<double> user_abort;
};

/// Nearest-rank percentile of an unsorted sample; pct in (0,100].
double nearest_rank_percentile(std::vector<double> values, double pct);

/// Distills a finished run into the report. `jobs` must be the job list the
/// run was produced from. DNUJI and user-abort are filled in by the caller
/// (they need policy state resp. a patience threshold).
ExperimentReport summarize(const RunResult& run, const std::vector<Job>& jobs);

/// Percentage of jobs whose response time (t_actual) exceeds the patience
/// threshold. When no explicit threshold is given it defaults to 0.95 x the
/// maximum response time of the supplied processor-sharing reference run;
/// throws when neither is available.
double user_abort(const RunResult& run, std::optional<double> threshold,
                  const RunResult* ps_reference = nullptr);

/// Per-ordered-pair speed-up/slow-down percentages from per-job wait
/// comparison; exact ties (within tolerance) count as neither.
struct PairwiseCell {
    double su_pct = 0.0;
    double sd_pct = 0.0;
    double tie_pct = 0.0;
};

using PairwiseMatrix = std::map<std::pair<std::string, std::string>, PairwiseCell>;

/// Compares every ordered pair of runs job-by-job. All runs must cover the
/// identical job list; mismatched sets are rejected.
PairwiseMatrix pairwise(const std::map<std::string, RunResult>& runs);

}  // namespace susched
