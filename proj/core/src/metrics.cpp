#include "susched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace susched {

double nearest_rank_percentile(std::vector<double> values, double pct) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(values.size())));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

ExperimentReport summarize(const RunResult& run, const std::vector<Job>& jobs) {
    ExperimentReport report;
    if (run.records.empty()) return report;
    if (run.records.size() != jobs.size())
        throw std::invalid_argument("run does not match the job list");

    std::size_t urgent = 0, urgent_sped = 0, urgent_successful = 0, with_rsu = 0;
    std::size_t nonurgent = 0, nonurgent_slowed = 0;
    std::vector<double> waits;
    waits.reserve(run.records.size());
    double wait_sum = 0.0;

    for (const CompletionRecord& rec : run.records) {
        const Job& job = jobs.at(rec.job_id);
        const SpeedClass cls = classify(rec);
        if (job.urgent) {
            ++urgent;
            if (cls.sped_up()) ++urgent_sped;
            if (rec.rsu) {
                ++with_rsu;
                if (rec.t_exp - rec.t_actual >= *rec.rsu - kTimeEps) ++urgent_successful;
            }
        } else {
            ++nonurgent;
            if (cls.slowed_down()) ++nonurgent_slowed;
        }
        waits.push_back(rec.wait);
        wait_sum += rec.wait;
    }

    auto pct_of = [](std::size_t part, std::size_t whole) {
        return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
    };
    if (urgent > 0) report.achieved_ratio = pct_of(urgent_sped, urgent);
    if (with_rsu > 0) report.successful_ratio = pct_of(urgent_successful, with_rsu);
    if (nonurgent > 0) report.slowdown_nonurgent = pct_of(nonurgent_slowed, nonurgent);

    const double n = static_cast<double>(waits.size());
    report.mean_wait = wait_sum / n;
    report.max_wait = *std::max_element(waits.begin(), waits.end());
    report.p95_wait = nearest_rank_percentile(waits, 95.0);
    double var = 0.0;
    for (double w : waits) var += (w - report.mean_wait) * (w - report.mean_wait);
    report.std_wait = std::sqrt(var / n);
    return report;
}

double user_abort(const RunResult& run, std::optional<double> threshold,
                  const RunResult* ps_reference) {
    if (!threshold) {
        if (!ps_reference || ps_reference->records.empty())
            throw std::invalid_argument("user_abort needs a threshold or a PS reference run");
        double ps_max = 0.0;
        for (const CompletionRecord& rec : ps_reference->records)
            ps_max = std::max(ps_max, rec.t_actual);
        threshold = 0.95 * ps_max;
    }
    if (run.records.empty()) return 0.0;
    std::size_t aborted = 0;
    for (const CompletionRecord& rec : run.records)
        if (rec.t_actual > *threshold) ++aborted;
    return 100.0 * static_cast<double>(aborted) / static_cast<double>(run.records.size());
}

PairwiseMatrix pairwise(const std::map<std::string, RunResult>& runs) {
    PairwiseMatrix matrix;
    // T_exp is policy-independent for work-conserving schedules, so equal
    // t_exp per job id is a faithful same-job-list check.
    const RunResult* first = nullptr;
    for (const auto& [name, run] : runs) {
        if (!first) {
            first = &run;
            continue;
        }
        if (run.records.size() != first->records.size())
            throw std::invalid_argument("pairwise runs cover different job sets");
        for (std::size_t i = 0; i < run.records.size(); ++i)
            if (std::fabs(run.records[i].t_exp - first->records[i].t_exp) > 1e-6)
                throw std::invalid_argument("pairwise runs cover different job sets");
    }

    for (const auto& [nx, rx] : runs) {
        for (const auto& [ny, ry] : runs) {
            PairwiseCell cell;
            const std::size_t n = rx.records.size();
            if (n > 0) {
                std::size_t su = 0, sd = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double diff = rx.records[i].wait - ry.records[i].wait;
                    if (diff < -kTimeEps)
                        ++su;
                    else if (diff > kTimeEps)
                        ++sd;
                }
                cell.su_pct = 100.0 * static_cast<double>(su) / static_cast<double>(n);
                cell.sd_pct = 100.0 * static_cast<double>(sd) / static_cast<double>(n);
                cell.tie_pct = 100.0 - cell.su_pct - cell.sd_pct;
            }
            matrix[{nx, ny}] = cell;
        }
    }
    return matrix;
}

}  // namespace susched
