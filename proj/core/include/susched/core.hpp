#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace susched {

/// Simulation time is a continuous non-negative real. Web workloads use
/// seconds; synthetic workloads use abstract time units. Two instants are
/// considered equal when they differ by less than `kTimeEps`.
using Time = double;

inline constexpr double kTimeEps = 1e-9;

inline bool time_eq(double a, double b) { return a - b <= kTimeEps && b - a <= kTimeEps; }
inline bool time_lt(double a, double b) { return b - a > kTimeEps; }

using JobId = std::uint32_t;

/// One unit of work. Ids are assigned in arrival order and break all
/// remaining ties in every ordering used by the simulator.
///
/// `requested_pct` is the percentage of the maximum attainable speed-up an
/// urgent job asks for; it is only meaningful on urgent jobs. `file_size`
/// and `bandwidth` describe transfer-style work (duration = file_size /
/// bandwidth); they are either both present or both absent.
struct Job {
    JobId id = 0;
    Time arrival = 0.0;
    double duration = 0.0;
    bool urgent = false;
    std::optional<double> requested_pct;  // in (0,100], urgent jobs only
    std::optional<double> file_size;      // bytes
    std::optional<double> bandwidth;      // bytes/sec

    /// Throws std::invalid_argument if any field invariant is violated.
    void validate() const;
};

/// Snapshot of the queue at one instant: ids of jobs waiting for service
/// (arrived strictly before `now`) plus the job at the server, if any, with
/// its remaining service demand.
struct SystemState {
    struct InService {
        JobId id;
        double remaining;
    };

    std::vector<JobId> waiting;
    std::optional<InService> in_service;
    Time now = 0.0;

    double remaining_at_server() const { return in_service ? in_service->remaining : 0.0; }
};

/// Per-job outcome of a finished run.
///
/// `t_exp` is the sojourn the job would have had under FCFS, frozen at its
/// arrival instant. `wait` excludes service (finish - arrival - duration).
/// `rsu` is the requested speed-up captured at arrival for urgent jobs that
/// carry a percentage; absent otherwise.
struct CompletionRecord {
    JobId job_id = 0;
    double t_exp = 0.0;
    double t_actual = 0.0;
    double wait = 0.0;
    Time finish = 0.0;
    double attained = 0.0;
    std::optional<double> rsu;
};

/// Outcome class of a completed job relative to its FCFS reference.
/// `amount` is |t_exp - t_actual| and is strictly positive for the
/// non-neutral classes, zero for Neutral.
struct SpeedClass {
    enum class Kind { SpedUp, SlowedDown, Neutral };

    Kind kind = Kind::Neutral;
    double amount = 0.0;

    bool sped_up() const { return kind == Kind::SpedUp; }
    bool slowed_down() const { return kind == Kind::SlowedDown; }
    bool neutral() const { return kind == Kind::Neutral; }
};

/// Expected execution time of `job` arriving at `state.now`: its own
/// duration plus the durations of all waiting jobs plus the remaining
/// demand of the job at the server. The arriving job itself must not be
/// part of `state`.
double expected_execution(const Job& job, const SystemState& state,
                          const std::vector<Job>& jobs);

/// Classifies a completed job by the sign of t_exp - t_actual.
SpeedClass classify(const CompletionRecord& record);

/// Requested speed-up for an urgent job arriving at `state.now`:
/// (requested_pct / 100) x sum of waiting durations. Throws
/// std::invalid_argument on non-urgent jobs or missing percentage.
double requested_speedup(const Job& job, const SystemState& state,
                         const std::vector<Job>& jobs);

}  // namespace susched
