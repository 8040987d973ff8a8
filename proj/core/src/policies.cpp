#include "susched/policies.hpp"

#include <stdexcept>

namespace susched {

bool opportunistically_forwardable(double candidate_duration, const OrderedIndex& urgent,
                                   const EngineView& view) {
    double prefix = 0.0;
    auto it = urgent.begin();
    while (it != urgent.end()) {
        // Jobs tied on priority all count toward each other's prefix.
        const double tied_priority = it->priority;
        auto group_end = it;
        while (group_end != urgent.end() && group_end->priority == tied_priority) {
            prefix += group_end->duration;
            ++group_end;
        }
        for (auto k = it; k != group_end; ++k) {
            const double ahead = view.wait_so_far(k->id) + candidate_duration + prefix +
                                 view.remaining_at_server;
            if (view.t_exp(k->id) - ahead <= kTimeEps) return false;
        }
        it = group_end;
    }
    return true;
}

void TwoClassPolicy::on_arrival(const Job& job, const EngineView& view) {
    IndexKey key = job.urgent ? urgent_key(job, view)
                              : IndexKey{priority_p(job), job.duration, job.id};
    (job.urgent ? urgent_ : nonurgent_).insert(key);
    key_of_[job.id] = key;
    class_of_[job.id] = job.urgent;
}

void TwoClassPolicy::on_service_start(const Job& job, const EngineView&) {
    auto it = key_of_.find(job.id);
    if (it == key_of_.end()) return;
    (class_of_[job.id] ? urgent_ : nonurgent_).erase(it->second);
    key_of_.erase(it);
    class_of_.erase(job.id);
}

JobId UdsuPolicy::select_next(const EngineView&, Rng&) {
    const IndexKey* pick = urgent_.empty() ? nonurgent_.candidate() : urgent_.candidate();
    if (!pick) throw std::logic_error("select_next on an empty waiting set");
    return pick->id;
}

JobId NubsuPolicy::select_next(const EngineView& view, Rng&) {
    const IndexKey* nu = nonurgent_.candidate();
    if (!nu) {
        const IndexKey* u = urgent_.candidate();
        if (!u) throw std::logic_error("select_next on an empty waiting set");
        return u->id;
    }
    if (urgent_.empty()) return nu->id;
    if (!opportunistically_forwardable(nu->duration, urgent_, view))
        return urgent_.candidate()->id;

    // Forwarding past waiting urgent jobs; remember them so the outcome can
    // be judged when the forwarded job completes.
    std::vector<CapturedUrgent> captured;
    captured.reserve(urgent_.size());
    for (const IndexKey& k : urgent_)
        captured.push_back({k.id, view.job(k.id).arrival, k.duration, view.t_exp(k.id)});
    active_forward_ = std::move(captured);
    ++forwards_;
    return nu->id;
}

void NubsuPolicy::on_completion(const Job&, const CompletionRecord& record,
                                const EngineView& view) {
    if (!active_forward_) return;
    // Non-preemptive service: the completion right after a forward is the
    // forwarded job itself, and every captured urgent job is still waiting.
    // The forward failed if some captured job is now guaranteed to miss its
    // speed-up: its wait so far plus everything the index will serve up to
    // and including it already reaches its expected execution time. Urgent
    // jobs that arrived during the forward count toward that prefix, which
    // is how a forward that looked safe turns out blocking.
    std::unordered_map<JobId, const CapturedUrgent*> captured;
    for (const CapturedUrgent& k : *active_forward_) captured[k.id] = &k;
    bool blocked = false;
    double prefix = 0.0;
    auto it = urgent_.begin();
    while (it != urgent_.end() && !blocked) {
        const double tied_priority = it->priority;
        auto group_end = it;
        while (group_end != urgent_.end() && group_end->priority == tied_priority) {
            prefix += group_end->duration;
            ++group_end;
        }
        for (auto k = it; k != group_end; ++k) {
            auto hit = captured.find(k->id);
            if (hit == captured.end()) continue;
            const double projected =
                (record.finish - hit->second->arrival) + prefix + view.remaining_at_server;
            if (hit->second->t_exp - projected <= kTimeEps) {
                blocked = true;
                break;
            }
        }
        it = group_end;
    }
    if (blocked) ++unsuccessful_;
    active_forward_.reset();
}

std::optional<double> NubsuPolicy::dnuji() const {
    if (forwards_ == 0) return std::nullopt;
    return static_cast<double>(unsuccessful_) / static_cast<double>(forwards_);
}

void FsuPolicy::on_arrival(const Job& job, const EngineView&) {
    all_.insert({priority_p(job), job.duration, job.id});
}

void FsuPolicy::on_service_start(const Job& job, const EngineView&) {
    all_.erase({priority_p(job), job.duration, job.id});
}

JobId FsuPolicy::select_next(const EngineView&, Rng&) {
    const IndexKey* pick = all_.candidate();
    if (!pick) throw std::logic_error("select_next on an empty waiting set");
    return pick->id;
}

GpsuPolicy::GpsuPolicy(double p, bool fine_grained) : p_(p), fine_grained_(fine_grained) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("GPSU probability must lie in [0,1]");
    name_ = "GPSU:" + std::to_string(p);
    name_.erase(name_.find_last_not_of('0') + 1);
    if (name_.back() == '.') name_.pop_back();
}

IndexKey GpsuPolicy::urgent_key(const Job& job, const EngineView& view) const {
    if (!fine_grained_) return {priority_p(job), job.duration, job.id};
    return {priority_urgent(job, view.t_exp(job.id)), job.duration, job.id};
}

JobId GpsuPolicy::select_next(const EngineView&, Rng& rng) {
    if (urgent_.empty() || nonurgent_.empty()) {
        const IndexKey* pick = urgent_.empty() ? nonurgent_.candidate() : urgent_.candidate();
        if (!pick) throw std::logic_error("select_next on an empty waiting set");
        return pick->id;
    }
    return rng.uniform01() <= p_ ? urgent_.candidate()->id : nonurgent_.candidate()->id;
}

}  // namespace susched
