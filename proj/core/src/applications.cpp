#include "susched/applications.hpp"

#include <stdexcept>

namespace susched {

double ssu_priority(const Job& request) {
    if (!request.file_size || !request.bandwidth)
        throw std::invalid_argument("SSU needs file_size and bandwidth on every request");
    return request.arrival * *request.file_size / *request.bandwidth;
}

double dsu_priority(const Job& request, double attained) {
    if (!request.bandwidth)
        throw std::invalid_argument("DSU needs bandwidth on every request");
    return request.arrival * attained / *request.bandwidth;
}

void SsuPolicy::on_arrival(const Job& job, const EngineView&) {
    waiting_.insert({ssu_priority(job), *job.file_size, job.id});
}

void SsuPolicy::on_service_start(const Job& job, const EngineView&) {
    waiting_.erase({ssu_priority(job), *job.file_size, job.id});
}

JobId SsuPolicy::select_next(const EngineView&, Rng&) {
    if (waiting_.empty()) throw std::logic_error("select_next on an empty waiting set");
    return waiting_.begin()->id;
}

void LeastAttainedPolicy::reinsert(const Job& job, double attained) {
    Key key{priority_of(job, attained), job.arrival, job.id};
    waiting_.insert(key);
    key_of_[job.id] = key;
}

void LeastAttainedPolicy::on_service_start(const Job& job, const EngineView&) {
    auto it = key_of_.find(job.id);
    if (it == key_of_.end()) throw std::logic_error("attained-service index lost a job");
    waiting_.erase(it->second);
    key_of_.erase(it);
}

JobId LeastAttainedPolicy::select_next(const EngineView&, Rng&) {
    if (waiting_.empty()) throw std::logic_error("select_next on an empty waiting set");
    return waiting_.begin()->id;
}

void SsupsPolicy::on_arrival(const Job& job, const EngineView&) {
    waiting_.insert({ssups_priority(job), job.duration, job.id});
}

void SsupsPolicy::on_service_start(const Job& job, const EngineView&) {
    waiting_.erase({ssups_priority(job), job.duration, job.id});
}

JobId SsupsPolicy::select_next(const EngineView&, Rng&) {
    if (waiting_.empty()) throw std::logic_error("select_next on an empty waiting set");
    return waiting_.begin()->id;
}

}  // namespace susched
