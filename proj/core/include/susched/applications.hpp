#pragma once

#include <set>
#include <unordered_map>

#include "susched/engine.hpp"

namespace susched {

/// Web request priority for known file sizes: arrival x file_size /
/// bandwidth. Smaller is served first; non-preemptive. Throws when the
/// request carries no size/bandwidth attributes.
double ssu_priority(const Job& request);

/// Web request priority when the size is unknown: arrival x attained
/// service / bandwidth. Least-attained behavior with aging; preemptive.
double dsu_priority(const Job& request, double attained);

/// Process priority with known burst: arrival x burst.
inline double ssups_priority(const Job& process) { return process.arrival * process.duration; }

/// Process priority with unknown burst: arrival x attained service.
inline double dsups_priority(const Job& process, double attained) {
    return process.arrival * attained;
}

/// Static web speed-up: argmin ssu_priority, ties by smaller file size.
class SsuPolicy : public Policy {
public:
    std::string_view name() const override { return "SSU"; }
    void on_arrival(const Job& job, const EngineView&) override;
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

private:
    struct Key {
        double priority;
        double file_size;
        JobId id;
        bool operator<(const Key& o) const {
            if (priority != o.priority) return priority < o.priority;
            if (file_size != o.file_size) return file_size < o.file_size;
            return id < o.id;
        }
    };
    std::set<Key> waiting_;
};

/// Attained-service ordering shared by the dynamic policies. All fresh
/// arrivals have priority zero; ties go to the earliest arrival, then id.
class LeastAttainedPolicy : public Policy {
public:
    bool is_preemptive() const override { return true; }
    void on_arrival(const Job& job, const EngineView&) override { reinsert(job, 0.0); }
    void on_requeue(const Job& job, double attained, const EngineView&) override {
        reinsert(job, attained);
    }
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

protected:
    virtual double priority_of(const Job& job, double attained) const = 0;

private:
    struct Key {
        double priority;
        double arrival;
        JobId id;
        bool operator<(const Key& o) const {
            if (priority != o.priority) return priority < o.priority;
            if (arrival != o.arrival) return arrival < o.arrival;
            return id < o.id;
        }
    };
    void reinsert(const Job& job, double attained);
    std::set<Key> waiting_;
    std::unordered_map<JobId, Key> key_of_;
};

/// Dynamic web speed-up (size-oblivious).
class DsuPolicy : public LeastAttainedPolicy {
public:
    std::string_view name() const override { return "DSU"; }

protected:
    double priority_of(const Job& job, double attained) const override {
        return dsu_priority(job, attained);
    }
};

/// Static process speed-up; non-preemptive, ties by smallest burst.
class SsupsPolicy : public Policy {
public:
    std::string_view name() const override { return "SSUPS"; }
    void on_arrival(const Job& job, const EngineView&) override;
    void on_service_start(const Job& job, const EngineView&) override;
    JobId select_next(const EngineView&, Rng&) override;

private:
    struct Key {
        double priority;
        double burst;
        JobId id;
        bool operator<(const Key& o) const {
            if (priority != o.priority) return priority < o.priority;
            if (burst != o.burst) return burst < o.burst;
            return id < o.id;
        }
    };
    std::set<Key> waiting_;
};

/// Dynamic process speed-up (burst-oblivious).
class DsupsPolicy : public LeastAttainedPolicy {
public:
    std::string_view name() const override { return "DSUPS"; }

protected:
    double priority_of(const Job& job, double attained) const override {
        return dsups_priority(job, attained);
    }
};

}  // namespace susched
