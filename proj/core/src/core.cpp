#include "susched/core.hpp"

#include <cmath>
#include <stdexcept>

namespace susched {

void Job::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("job duration must be positive");
    if (arrival < 0.0) throw std::invalid_argument("job arrival must be non-negative");
    if (requested_pct) {
        if (!urgent) throw std::invalid_argument("requested_pct on a non-urgent job");
        if (!(*requested_pct > 0.0) || *requested_pct > 100.0)
            throw std::invalid_argument("requested_pct must lie in (0,100]");
    }
    if (file_size.has_value() != bandwidth.has_value())
        throw std::invalid_argument("file_size and bandwidth must be given together");
    if (file_size) {
        if (!(*file_size > 0.0) || !(*bandwidth > 0.0))
            throw std::invalid_argument("file_size and bandwidth must be positive");
        if (std::fabs(duration - *file_size / *bandwidth) > kTimeEps)
            throw std::invalid_argument("duration must equal file_size / bandwidth");
    }
}

double expected_execution(const Job& job, const SystemState& state,
                          const std::vector<Job>& jobs) {
    double total = job.duration + state.remaining_at_server();
    for (JobId id : state.waiting) total += jobs.at(id).duration;
    return total;
}

SpeedClass classify(const CompletionRecord& record) {
    const double diff = record.t_exp - record.t_actual;
    if (diff > kTimeEps) return {SpeedClass::Kind::SpedUp, diff};
    if (diff < -kTimeEps) return {SpeedClass::Kind::SlowedDown, -diff};
    return {SpeedClass::Kind::Neutral, 0.0};
}

double requested_speedup(const Job& job, const SystemState& state,
                         const std::vector<Job>& jobs) {
    if (!job.urgent) throw std::invalid_argument("requested_speedup on a non-urgent job");
    if (!job.requested_pct) throw std::invalid_argument("urgent job carries no requested_pct");
    double waiting_sum = 0.0;
    for (JobId id : state.waiting) waiting_sum += jobs.at(id).duration;
    return (*job.requested_pct / 100.0) * waiting_sum;
}

}  // namespace susched
