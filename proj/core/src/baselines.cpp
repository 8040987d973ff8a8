#include "susched/baselines.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace susched {

namespace {

JobId front_or_throw(const std::set<std::pair<double, JobId>>& waiting) {
    if (waiting.empty()) throw std::logic_error("select_next on an empty waiting set");
    return waiting.begin()->second;
}

}  // namespace

JobId FcfsPolicy::select_next(const EngineView&, Rng&) { return front_or_throw(waiting_); }

JobId SjfPolicy::select_next(const EngineView&, Rng&) { return front_or_throw(waiting_); }

void SrptPolicy::on_arrival(const Job& job, const EngineView&) {
    const double key = job.duration * job.bandwidth.value_or(1.0);
    waiting_.insert({key, job.id});
    key_of_[job.id] = key;
}

void SrptPolicy::on_requeue(const Job& job, double attained, const EngineView&) {
    const double key = (job.duration - attained) * job.bandwidth.value_or(1.0);
    waiting_.insert({key, job.id});
    key_of_[job.id] = key;
}

void SrptPolicy::on_service_start(const Job& job, const EngineView&) {
    waiting_.erase({key_of_.at(job.id), job.id});
    key_of_.erase(job.id);
}

JobId SrptPolicy::select_next(const EngineView&, Rng&) { return front_or_throw(waiting_); }

void RoundRobinPolicy::on_service_start(const Job& job, const EngineView&) {
    if (queue_.empty() || queue_.front() != job.id)
        throw std::logic_error("round robin served out of order");
    queue_.pop_front();
}

JobId RoundRobinPolicy::select_next(const EngineView&, Rng&) {
    if (queue_.empty()) throw std::logic_error("select_next on an empty waiting set");
    return queue_.front();
}

RunResult ps_run(std::vector<Job> jobs) {
    RunResult result;
    result.policy_name = "PS";
    if (jobs.empty()) return result;

    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.id < b.id;
    });
    const std::size_t n = jobs.size();
    for (std::size_t i = 0; i < n; ++i) {
        jobs[i].validate();
        if (jobs[i].id != i)
            throw std::invalid_argument("job ids must be assigned in arrival order");
    }
    result.records.resize(n);

    // Virtual time advances at rate 1/n(t); job j finishes when V reaches
    // V(arrival of j) + duration of j.
    using Entry = std::pair<double, JobId>;  // (virtual deadline, id)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> active;
    double t = 0.0, v = 0.0;
    double sum_deadlines = 0.0;  // over active jobs, for T_exp bookkeeping

    auto complete_one = [&](double until_t) -> bool {
        if (active.empty()) return false;
        auto [vd, id] = active.top();
        const double finish = t + (vd - v) * static_cast<double>(active.size());
        if (finish > until_t) return false;
        active.pop();
        t = finish;
        v = vd;
        sum_deadlines -= vd;
        CompletionRecord rec;
        rec.job_id = id;
        rec.t_exp = result.records[id].t_exp;  // stashed at arrival
        rec.finish = finish;
        rec.t_actual = finish - jobs[id].arrival;
        rec.wait = rec.t_actual - jobs[id].duration;
        rec.attained = jobs[id].duration;
        result.records[id] = rec;
        return true;
    };

    for (const Job& j : jobs) {
        while (complete_one(j.arrival)) {
        }
        if (!active.empty()) v += (j.arrival - t) / static_cast<double>(active.size());
        t = j.arrival;
        // Remaining work of every active job k is deadline(k) - v.
        const double outstanding = sum_deadlines - v * static_cast<double>(active.size());
        result.records[j.id].t_exp = j.duration + outstanding;
        active.push({v + j.duration, j.id});
        sum_deadlines += v + j.duration;
    }
    while (complete_one(std::numeric_limits<double>::infinity())) {
    }

    result.events_processed = 2 * n;
    return result;
}

void positional_rearrange(std::vector<JobId>& table, const std::vector<Job>& jobs,
                          PositionalKind kind) {
    if (table.empty()) return;
    std::size_t pos = table.size() - 1;  // the urgent job sits at the tail

    switch (kind) {
        case PositionalKind::Mpf:
        case PositionalKind::MpfSd:
            for (std::size_t i = 0; i < pos; ++i) {
                if (jobs[table[i]].urgent) continue;
                if (kind == PositionalKind::MpfSd &&
                    !(jobs[table[pos]].duration < jobs[table[i]].duration))
                    return;  // only a strictly shorter urgent job may displace
                std::swap(table[i], table[pos]);
                return;
            }
            return;
        case PositionalKind::MinPf:
            while (pos > 0) {
                std::size_t nearest = pos;
                for (std::size_t i = pos; i-- > 0;) {
                    if (!jobs[table[i]].urgent) {
                        nearest = i;
                        break;
                    }
                }
                if (nearest == pos) return;  // blocked, nothing non-urgent ahead
                std::swap(table[nearest], table[pos]);
                pos = nearest;
            }
            return;
    }
}

std::string_view PositionalPolicy::name() const {
    switch (kind_) {
        case PositionalKind::Mpf: return "MPF";
        case PositionalKind::MpfSd: return "MPF-SD";
        case PositionalKind::MinPf: return "MINPF";
    }
    return "MPF";
}

void PositionalPolicy::on_arrival(const Job& job, const EngineView& view) {
    table_.push_back(job.id);
    if (job.urgent) positional_rearrange(table_, view.jobs(), kind_);
}

void PositionalPolicy::on_service_start(const Job& job, const EngineView&) {
    auto it = std::find(table_.begin(), table_.end(), job.id);
    if (it == table_.end()) throw std::logic_error("positional table lost a job");
    table_.erase(it);
}

JobId PositionalPolicy::select_next(const EngineView&, Rng&) {
    if (table_.empty()) throw std::logic_error("select_next on an empty waiting set");
    return table_.front();
}

}  // namespace susched
