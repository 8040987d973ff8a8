#pragma once

#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "susched/engine.hpp"

namespace susched {

/// Serves in arrival order, ties by id.
class FcfsPolicy : public Policy {
public:
    std::string_view name() const override { return "FCFS"; }
    void on_arrival(const Job& job, const EngineView&) override {
        waiting_.insert({job.arrival, job.id});
    }
    void on_service_start(const Job& job, const EngineView&) override {
        waiting_.erase({job.arrival, job.id});
    }
    JobId select_next(const EngineView&, Rng&) override;

private:
    std::set<std::pair<double, JobId>> waiting_;
};

/// Shortest job first, non-preemptive, ties by id.
class SjfPolicy : public Policy {
public:
    std::string_view name() const override { return "SJF"; }
    void on_arrival(const Job& job, const EngineView&) override {
        waiting_.insert({job.duration, job.id});
    }
    void on_service_start(const Job& job, const EngineView&) override {
        waiting_.erase({job.duration, job.id});
    }
    JobId select_next(const EngineView&, Rng&) override;

private:
    std::set<std::pair<double, JobId>> waiting_;
};

/// Shortest remaining demand first; preempted by arrivals only (the order
/// among waiting jobs cannot change between arrivals, so quantum slicing is
/// unnecessary). For transfer-style jobs the demand is the remaining bytes
/// (remaining time x link bandwidth), which reduces to remaining service
/// time for plain jobs.
class SrptPolicy : public Policy {
public:
    std::string_view name() const override { return "SRPT"; }
    bool is_preemptive() const override { return true; }
    bool needs_quantum() const override { return false; }
    void on_arrival(const Job& job, const EngineView&) override;
    void on_requeue(const Job& job, double attained, const EngineView&) override;
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

private:
    std::set<std::pair<double, JobId>> waiting_;
    std::unordered_map<JobId, double> key_of_;
};

/// Round robin: cyclic order, preempted jobs re-enter at the tail. Arrivals
/// do not interrupt the running slice.
class RoundRobinPolicy : public Policy {
public:
    std::string_view name() const override { return "RR"; }
    bool is_preemptive() const override { return true; }
    bool preempts_on_arrival() const override { return false; }
    void on_arrival(const Job& job, const EngineView&) override { queue_.push_back(job.id); }
    void on_requeue(const Job& job, double, const EngineView&) override {
        queue_.push_back(job.id);
    }
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

private:
    std::deque<JobId> queue_;
};

/// Exact processor sharing: every job in the system attains service at rate
/// 1/n. Implemented event-exactly through virtual time, so simultaneous
/// identical jobs finish at the same instant.
RunResult ps_run(std::vector<Job> jobs);

/// Positional rearrangement flavors reconstructed for comparison purposes.
enum class PositionalKind { Mpf, MpfSd, MinPf };

/// Applies one rearrangement to a location table whose tail is a freshly
/// appended urgent job:
///  - Mpf: swap the urgent job with the non-urgent job nearest the head.
///  - MpfSd: same swap, but only if the urgent job is strictly shorter than
///    the job it displaces.
///  - MinPf: repeatedly swap the urgent job with the nearest non-urgent job
///    ahead of it until none remains ahead.
void positional_rearrange(std::vector<JobId>& table, const std::vector<Job>& jobs,
                          PositionalKind kind);

/// Location-table scheduler driven by positional_rearrange on each urgent
/// arrival; serves the table head.
class PositionalPolicy : public Policy {
public:
    explicit PositionalPolicy(PositionalKind kind) : kind_(kind) {}
    std::string_view name() const override;
    void on_arrival(const Job& job, const EngineView& view) override;
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

    const std::vector<JobId>& table() const { return table_; }

private:
    PositionalKind kind_;
    std::vector<JobId> table_;
};

}  // namespace susched
