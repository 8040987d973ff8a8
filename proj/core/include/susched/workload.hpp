#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "susched/core.hpp"

namespace susched {

/// M/M/1-style synthetic workload: Poisson arrivals at rate rho x mu,
/// exponential service demands with rate mu. Urgent labeling and the
/// percentage draws use random streams independent of the arrival/duration
/// streams, so changing the urgent fraction never perturbs the jobs
/// themselves.
struct SyntheticSpec {
    std::size_t n_jobs = 10000;
    double mu = 0.04;
    double rho = 1.1;
    double urgent_fraction = 0.0;
    bool fine_grained = false;  // draw a requested percentage per urgent job
    std::uint64_t seed = 0;
};

std::vector<Job> generate(const SyntheticSpec& spec);

/// Labels each job urgent independently with the given probability; in
/// fine-grained mode every urgent job draws a percentage uniform in
/// (0,100]. Arrival times, durations and ids are left untouched. Labelings
/// are nested: a job urgent at fraction f stays urgent at any f' > f.
std::vector<Job> apply_urgency(std::vector<Job> jobs, double fraction, bool fine_grained,
                               std::uint64_t seed);

/// One process-accounting record, one line of the ingest CSV.
struct ProcessLogRecord {
    std::string command;
    double utime = 0.0;
    double systime = 0.0;
    double etime = 0.0;
    long uid = 0;
    long gid = 0;
    double mem = 0.0;
    long pid = 0;
    long ppid = 0;
    double finish_time = 0.0;  // seconds; textual timestamps are accepted
};

struct IngestStats {
    std::size_t parsed = 0;
    std::size_t skipped_malformed = 0;
    std::size_t dropped = 0;  // zero burst / out-of-range size
};

/// Reads a headered CSV of process-accounting records and turns each into a
/// job: duration = utime + systime (clamped to [1,185]), arrival
/// reconstructed as finish_time - etime and shifted so the earliest arrival
/// is zero. Zero-burst records are dropped; malformed lines are skipped
/// with a warning. Throws when no usable record remains.
std::vector<Job> ingest_process_log(const std::string& path, IngestStats* stats = nullptr);

/// Bandwidth-class scenarios for web traces. Sizes bucket into small
/// (0-50 KB, boundary included), medium (50-500 KB, boundary included) and
/// large (>500 KB); Scenario 1 maps them to 1/10/100 Mbps and Scenario 2 to
/// 100/10/1 Mbps (1 Mbps = 125000 bytes/sec).
enum class Scenario { One = 1, Two = 2 };

double scenario_bandwidth(double size_bytes, Scenario scenario);

/// Reads a headered CSV web trace (arrival,url,size,status) and produces
/// transfer jobs with duration = size / scenario bandwidth. Sizes outside
/// [56 bytes, 15 MB] are dropped; arrivals are shifted so the earliest is
/// zero.
std::vector<Job> ingest_web_trace(const std::string& path, Scenario scenario,
                                  IngestStats* stats = nullptr);

/// Synthetic stand-in for a proxy trace: sizes drawn 64% small / 32% medium
/// / 4% large (log-uniform within each bucket), Poisson arrivals calibrated
/// so that offered load matches `target_rho` under the chosen scenario.
struct WebMixSpec {
    std::size_t n_requests = 20000;
    double target_rho = 1.05;
    Scenario scenario = Scenario::One;
    std::uint64_t seed = 0;
};

std::vector<Job> generate_webmix(const WebMixSpec& spec);

/// Jobs CSV used by the ingest/simulate pipeline; round-trips exactly.
void write_jobs_csv(const std::string& path, const std::vector<Job>& jobs);
std::vector<Job> read_jobs_csv(const std::string& path);

}  // namespace susched
