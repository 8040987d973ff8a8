#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "susched/core.hpp"
#include "susched/rng.hpp"

namespace susched {

/// Event kinds in same-timestamp processing order: a completion at time t
/// frees the server before a quantum expires, and both precede arrivals at
/// t, so a job arriving exactly when another finishes sees an idle server.
enum class EventKind : std::uint8_t { Completion = 0, QuantumExpiry = 1, Arrival = 2 };

struct Event {
    Time time;
    EventKind kind;
    JobId job;
    std::uint64_t seq;        // insertion order, final tiebreak
    std::uint64_t dispatch;   // dispatch generation; 0 for arrivals

    bool operator<(const Event& other) const {
        if (time != other.time) return time < other.time;
        if (kind != other.kind) return kind < other.kind;
        return seq < other.seq;
    }
};

struct RunResult {
    std::vector<CompletionRecord> records;  // indexed by job id
    std::uint64_t events_processed = 0;
    std::string policy_name;
    std::uint64_t seed = 0;

    /// Equality over outcomes (records and event count), ignoring the
    /// policy label; used by schedule-equivalence checks.
    bool same_outcome(const RunResult& other) const;
};

/// Read-only view of the running simulation handed to policies. Vectors are
/// indexed by job id. `t_exp` entries are valid once the job has arrived.
class EngineView {
public:
    EngineView(const std::vector<Job>& jobs, const std::vector<double>& t_exp)
        : jobs_(jobs), t_exp_(t_exp) {}

    Time now = 0.0;
    double remaining_at_server = 0.0;

    const std::vector<Job>& jobs() const { return jobs_; }
    const Job& job(JobId id) const { return jobs_[id]; }
    double t_exp(JobId id) const { return t_exp_[id]; }
    double wait_so_far(JobId id) const { return now - jobs_[id].arrival; }

private:
    const std::vector<Job>& jobs_;
    const std::vector<double>& t_exp_;
};

/// A scheduling discipline. Policies keep their own ordered indexes of the
/// waiting set, maintained through the hooks; `select_next` must return a
/// job that is currently waiting.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string_view name() const = 0;

    /// Preemptive policies are re-consulted at arrivals and quantum
    /// expiries; non-preemptive ones run each selected job to completion.
    virtual bool is_preemptive() const { return false; }

    /// Whether an arrival interrupts the job in service (quantum expiries
    /// always do for preemptive policies). Round-robin turns this off.
    virtual bool preempts_on_arrival() const { return is_preemptive(); }

    /// Whether the policy needs quantum slicing at all. Remaining-demand
    /// order only changes at arrivals, so e.g. SRPT turns this off.
    virtual bool needs_quantum() const { return is_preemptive(); }

    virtual void on_arrival(const Job& job, const EngineView& view) {
        (void)job;
        (void)view;
    }
    /// A preempted job re-enters the waiting set with `attained` service.
    virtual void on_requeue(const Job& job, double attained, const EngineView& view) {
        (void)job;
        (void)attained;
        (void)view;
    }
    virtual void on_service_start(const Job& job, const EngineView& view) {
        (void)job;
        (void)view;
    }
    virtual void on_completion(const Job& job, const CompletionRecord& record,
                               const EngineView& view) {
        (void)job;
        (void)record;
        (void)view;
    }

    virtual JobId select_next(const EngineView& view, Rng& rng) = 0;
};

/// Runs `jobs` under `policy` to completion and returns one record per job.
///
/// The loop is work-conserving: the server idles only while the waiting set
/// is empty. T_exp and RSU are frozen at each job's arrival instant. The
/// same inputs always produce the same result.
///
/// `quantum` must be positive when the policy slices service; it is ignored
/// for non-preemptive policies.
RunResult run(std::vector<Job> jobs, Policy& policy,
              std::optional<double> quantum = std::nullopt, std::uint64_t seed = 0);

/// Serves jobs in the exact order given (a permutation of the job ids),
/// idling when the next job in line has not arrived yet. Oracle harness for
/// hand-worked schedules.
RunResult replay_fixed_order(std::vector<Job> jobs, const std::vector<JobId>& order);

}  // namespace susched
