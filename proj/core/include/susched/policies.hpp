#pragma once

#include <optional>
#include <set>
#include <unordered_map>

#include "susched/engine.hpp"

namespace susched {

/// Base priority of a job: arrival time times duration. Smaller is served
/// sooner; the arrival factor ages long-waiting jobs to the front, the
/// duration factor prefers short jobs.
inline double priority_p(const Job& job) { return job.arrival * job.duration; }

/// Priority among urgent jobs carrying a requested percentage:
/// arrival + (1 - pct/100) * (t_exp - duration). A job requesting 100%
/// collapses to its arrival time.
inline double priority_urgent(const Job& job, double t_exp) {
    const double pct = job.requested_pct.value_or(100.0);
    return job.arrival + (1.0 - pct / 100.0) * (t_exp - job.duration);
}

/// Key of the waiting-set indexes. Lexicographic order implements the
/// candidate rule: minimum priority, then shortest duration, then lowest id.
struct IndexKey {
    double priority;
    double duration;
    JobId id;

    bool operator<(const IndexKey& o) const {
        if (priority != o.priority) return priority < o.priority;
        if (duration != o.duration) return duration < o.duration;
        return id < o.id;
    }
};

/// Ordered index over a class of waiting jobs; min element is the candidate.
class OrderedIndex {
public:
    void insert(const IndexKey& key) { keys_.insert(key); }
    void erase(const IndexKey& key) { keys_.erase(key); }
    bool empty() const { return keys_.empty(); }
    std::size_t size() const { return keys_.size(); }

    const IndexKey* candidate() const { return keys_.empty() ? nullptr : &*keys_.begin(); }

    auto begin() const { return keys_.begin(); }
    auto end() const { return keys_.end(); }

private:
    std::set<IndexKey> keys_;
};

/// True when serving a non-urgent job of the given duration next provably
/// leaves every urgent job in `urgent` able to achieve speed-up: for each
/// urgent k (walking in increasing priority with a running prefix sum of
/// durations, k's own included),
///   wait_so_far(k) + candidate_duration + prefix(k) + remaining_at_server
/// must stay strictly below t_exp(k). Equality fails the test.
bool opportunistically_forwardable(double candidate_duration, const OrderedIndex& urgent,
                                   const EngineView& view);

/// Speed-up an urgent waiting job would get if dispatched as soon as the
/// server frees: t_exp - (wait so far + own duration + remaining at server).
inline double current_speedup(const Job& job, double t_exp, Time now,
                              double remaining_at_server) {
    return t_exp - ((now - job.arrival) + job.duration + remaining_at_server);
}

/// Shared bookkeeping of the urgent/non-urgent index pair.
class TwoClassPolicy : public Policy {
public:
    void on_arrival(const Job& job, const EngineView& view) override;
    void on_service_start(const Job& job, const EngineView& view) override;

protected:
    /// Key used for urgent jobs; non-urgent jobs always use priority_p.
    virtual IndexKey urgent_key(const Job& job, const EngineView& view) const {
        return {priority_p(job), job.duration, job.id};
    }

    OrderedIndex urgent_;
    OrderedIndex nonurgent_;

private:
    std::unordered_map<JobId, IndexKey> key_of_;
    std::unordered_map<JobId, bool> class_of_;
};

/// Urgent-dominant: always the urgent candidate when one exists, otherwise
/// the non-urgent candidate. Maximizes accelerated urgent jobs and accepts
/// arbitrary slow-down for the rest.
class UdsuPolicy : public TwoClassPolicy {
public:
    std::string_view name() const override { return "UDSU"; }
    JobId select_next(const EngineView& view, Rng& rng) override;
};

/// Urgent-first, but forwards the non-urgent candidate whenever doing so
/// provably cannot block any waiting urgent job's speed-up. Tracks how often
/// a forward retroactively turned out to block one (DNUJI).
class NubsuPolicy : public TwoClassPolicy {
public:
    std::string_view name() const override { return "NUBSU"; }
    JobId select_next(const EngineView& view, Rng& rng) override;
    void on_completion(const Job& job, const CompletionRecord& record,
                       const EngineView& view) override;

    std::uint64_t forwards() const { return forwards_; }
    std::uint64_t unsuccessful_forwards() const { return unsuccessful_; }
    /// unsuccessful / total forwarded; absent when nothing was forwarded.
    std::optional<double> dnuji() const;

private:
    struct CapturedUrgent {
        JobId id;
        double arrival;
        double duration;
        double t_exp;
    };

    std::optional<std::vector<CapturedUrgent>> active_forward_;
    std::uint64_t forwards_ = 0;
    std::uint64_t unsuccessful_ = 0;
};

/// One combined ordering over all waiting jobs; ignores the urgent flag.
class FsuPolicy : public Policy {
public:
    std::string_view name() const override { return "FSU"; }
    void on_arrival(const Job& job, const EngineView& view) override;
    void on_service_start(const Job& job, const EngineView& view) override;
    JobId select_next(const EngineView& view, Rng& rng) override;

private:
    OrderedIndex all_;
};

/// Probabilistic bias between the two classes: with probability `p` the
/// urgent candidate is served, otherwise the non-urgent one. In fine-grained
/// mode urgent jobs are ordered by priority_urgent, otherwise by priority_p.
/// No random draw is consumed while one class is empty.
class GpsuPolicy : public TwoClassPolicy {
public:
    GpsuPolicy(double p, bool fine_grained);
    std::string_view name() const override { return name_; }
    JobId select_next(const EngineView& view, Rng& rng) override;

protected:
    IndexKey urgent_key(const Job& job, const EngineView& view) const override;

private:
    double p_;
    bool fine_grained_;
    std::string name_;
};

}  // namespace susched
