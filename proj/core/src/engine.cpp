#include "susched/engine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace susched {

bool RunResult::same_outcome(const RunResult& other) const {
    if (events_processed != other.events_processed) return false;
    if (records.size() != other.records.size()) return false;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& a = records[i];
        const auto& b = other.records[i];
        if (a.job_id != b.job_id || a.t_exp != b.t_exp || a.t_actual != b.t_actual ||
            a.wait != b.wait || a.finish != b.finish || a.attained != b.attained ||
            a.rsu != b.rsu)
            return false;
    }
    return true;
}

namespace {

struct EventGreater {
    bool operator()(const Event& a, const Event& b) const { return b < a; }
};

// Jobs may be handed over in any vector order, but ids must equal the
// arrival rank: the id doubles as the index into every per-job table and as
// the final tiebreak of every ordering.
void sort_and_check(std::vector<Job>& jobs) {
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.id < b.id;
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        jobs[i].validate();
        if (jobs[i].id != i)
            throw std::invalid_argument("job ids must be assigned in arrival order");
    }
}

}  // namespace

RunResult run(std::vector<Job> jobs, Policy& policy, std::optional<double> quantum,
              std::uint64_t seed) {
    RunResult result;
    result.policy_name = std::string(policy.name());
    result.seed = seed;
    if (jobs.empty()) return result;

    sort_and_check(jobs);

    const bool preemptive = policy.is_preemptive();
    const bool slice = preemptive && policy.needs_quantum();
    if (slice && (!quantum || !(*quantum > 0.0)))
        throw std::invalid_argument("preemptive policy needs a positive quantum");

    const std::size_t n = jobs.size();
    std::vector<double> t_exp(n, 0.0);
    std::vector<double> attained(n, 0.0);
    std::vector<std::optional<double>> rsu(n);
    result.records.resize(n);

    EngineView view(jobs, t_exp);
    Rng rng(seed);

    std::priority_queue<Event, std::vector<Event>, EventGreater> events;
    std::uint64_t seq = 0;
    for (const Job& j : jobs)
        events.push({j.arrival, EventKind::Arrival, j.id, seq++, 0});

    // Outstanding work = arrived service demand not yet served. Adding the
    // arriving job's own duration to it yields its FCFS-referenced T_exp,
    // for preemptive schedules too: any work-conserving discipline leaves
    // the same unfinished work at a given instant as FCFS would.
    double outstanding = 0.0;

    std::optional<JobId> in_service;
    double service_started = 0.0;   // resume point of current slice
    double remaining = 0.0;         // of the in-service job
    std::uint64_t dispatch_gen = 0;
    std::size_t waiting_count = 0;
    std::size_t completed = 0;

    auto record_completion = [&](JobId id, double now) {
        const Job& j = jobs[id];
        CompletionRecord rec;
        rec.job_id = id;
        rec.t_exp = t_exp[id];
        rec.finish = now;
        rec.t_actual = now - j.arrival;
        rec.wait = rec.t_actual - j.duration;
        rec.attained = j.duration;
        rec.rsu = rsu[id];
        result.records[id] = rec;
        ++completed;
        policy.on_completion(j, rec, view);
    };

    auto dispatch = [&](double now) {
        JobId id = policy.select_next(view, rng);
        if (id >= n || attained[id] >= jobs[id].duration)
            throw std::logic_error("policy selected a job that is not waiting");
        in_service = id;
        remaining = jobs[id].duration - attained[id];
        service_started = now;
        ++dispatch_gen;
        --waiting_count;
        policy.on_service_start(jobs[id], view);
        if (slice && *quantum < remaining - kTimeEps)
            events.push({now + *quantum, EventKind::QuantumExpiry, id, seq++, dispatch_gen});
        else
            events.push({now + remaining, EventKind::Completion, id, seq++, dispatch_gen});
    };

    auto pause_in_service = [&](double now) {
        JobId id = *in_service;
        double served = now - service_started;
        attained[id] += served;
        outstanding -= served;
        in_service.reset();
        ++dispatch_gen;  // invalidates the pending completion/expiry event
        ++waiting_count;
        policy.on_requeue(jobs[id], attained[id], view);
    };

    while (completed < n) {
        if (events.empty()) throw std::logic_error("event queue drained before all jobs finished");
        const double now = events.top().time;
        view.now = now;
        bool arrived_this_batch = false;

        // Drain every event at this instant; scheduling decisions happen
        // only once the batch is complete, so a job arriving exactly at a
        // completion instant is eligible for the freed server.
        while (!events.empty() && events.top().time == now) {
            Event ev = events.top();
            events.pop();
            switch (ev.kind) {
                case EventKind::Completion: {
                    if (ev.dispatch != dispatch_gen || !in_service || *in_service != ev.job)
                        continue;  // stale after a preemption
                    double served = now - service_started;
                    attained[ev.job] += served;
                    outstanding -= served;
                    in_service.reset();
                    ++dispatch_gen;
                    view.remaining_at_server = 0.0;
                    record_completion(ev.job, now);
                    break;
                }
                case EventKind::QuantumExpiry: {
                    if (ev.dispatch != dispatch_gen || !in_service || *in_service != ev.job)
                        continue;
                    pause_in_service(now);
                    view.remaining_at_server = 0.0;
                    break;
                }
                case EventKind::Arrival: {
                    const Job& j = jobs[ev.job];
                    // `outstanding` is only settled at completion/pause, so
                    // subtract the progress of the slice running right now.
                    const double in_progress = in_service ? now - service_started : 0.0;
                    view.remaining_at_server = in_service ? remaining - in_progress : 0.0;
                    t_exp[ev.job] = j.duration + (outstanding - in_progress);
                    if (j.urgent && j.requested_pct) {
                        const double waiting_work =
                            (outstanding - in_progress) - view.remaining_at_server;
                        rsu[ev.job] = (*j.requested_pct / 100.0) * waiting_work;
                    }
                    outstanding += j.duration;
                    policy.on_arrival(j, view);
                    ++waiting_count;
                    arrived_this_batch = true;
                    break;
                }
            }
            ++result.events_processed;
        }

        if (in_service && arrived_this_batch && preemptive && policy.preempts_on_arrival())
            pause_in_service(now);

        view.remaining_at_server = in_service ? remaining - (now - service_started) : 0.0;
        if (!in_service && waiting_count > 0) dispatch(now);
    }

    return result;
}

RunResult replay_fixed_order(std::vector<Job> jobs, const std::vector<JobId>& order) {
    RunResult result;
    result.policy_name = "REPLAY";
    if (jobs.empty() && order.empty()) return result;

    sort_and_check(jobs);
    const std::size_t n = jobs.size();

    std::unordered_set<JobId> seen;
    for (JobId id : order) {
        if (id >= n) throw std::invalid_argument("replay order names an unknown job id");
        if (!seen.insert(id).second) throw std::invalid_argument("replay order repeats a job id");
    }
    if (order.size() != n) throw std::invalid_argument("replay order is not a permutation");

    // Pass 1: service start/finish times in the forced order.
    std::vector<double> start(n, 0.0), finish(n, 0.0);
    double clock = 0.0;
    std::vector<std::pair<double, double>> busy;  // merged service intervals
    for (JobId id : order) {
        const Job& j = jobs[id];
        double s = std::max(clock, j.arrival);
        start[id] = s;
        clock = s + j.duration;
        finish[id] = clock;
        if (!busy.empty() && busy.back().second == s)
            busy.back().second = clock;
        else
            busy.emplace_back(s, clock);
    }

    auto served_by = [&](double t) {
        double total = 0.0;
        for (const auto& [b, e] : busy) {
            if (t <= b) break;
            total += std::min(t, e) - b;
        }
        return total;
    };

    // Pass 2: records with T_exp frozen at each arrival.
    result.records.resize(n);
    double arrived = 0.0;
    for (const Job& j : jobs) {  // arrival order
        CompletionRecord rec;
        rec.job_id = j.id;
        rec.t_exp = j.duration + (arrived - served_by(j.arrival));
        rec.finish = finish[j.id];
        rec.t_actual = finish[j.id] - j.arrival;
        rec.wait = rec.t_actual - j.duration;
        rec.attained = j.duration;
        result.records[j.id] = rec;
        arrived += j.duration;
    }
    result.events_processed = 2 * n;
    return result;
}

}  // namespace susched
