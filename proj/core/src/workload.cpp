#include "susched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "susched/rng.hpp"

namespace susched {

namespace {

// Random stream ids; labeling streams are distinct from job-shape streams.
enum : std::uint64_t { kArrivalStream = 0, kDurationStream = 1, kUrgentStream = 2, kPctStream = 3 };

constexpr double kSmallMax = 50.0 * 1024;    // bytes, boundary belongs to small
constexpr double kMediumMax = 500.0 * 1024;  // boundary belongs to medium
constexpr double kMinSize = 56.0;
constexpr double kMaxSize = 15.0 * 1024 * 1024;
constexpr double kMbps = 125000.0;  // bytes/sec

std::vector<std::string> split_csv(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");  // trailing empty field
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

// Accepts epoch seconds or a ctime-style stamp like "Sun Dec 15 16:47:50 2013".
bool parse_timestamp(const std::string& s, double& out) {
    if (parse_double(s, out)) return true;
    std::tm tm = {};
    std::istringstream ss(s);
    ss >> std::get_time(&tm, "%a %b %d %H:%M:%S %Y");
    if (ss.fail()) return false;
    tm.tm_isdst = 0;
    std::time_t t = timegm(&tm);
    if (t == static_cast<std::time_t>(-1)) return false;
    out = static_cast<double>(t);
    return true;
}

// Shift arrivals so the earliest is zero, sort, and assign arrival-rank ids.
std::vector<Job> finalize(std::vector<Job> jobs) {
    if (jobs.empty()) return jobs;
    double min_arrival = std::numeric_limits<double>::infinity();
    for (const Job& j : jobs) min_arrival = std::min(min_arrival, j.arrival);
    for (Job& j : jobs) j.arrival -= min_arrival;
    std::stable_sort(jobs.begin(), jobs.end(),
                     [](const Job& a, const Job& b) { return a.arrival < b.arrival; });
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].id = static_cast<JobId>(i);
    return jobs;
}

}  // namespace

std::vector<Job> generate(const SyntheticSpec& spec) {
    if (spec.n_jobs == 0) throw std::invalid_argument("n_jobs must be positive");
    if (!(spec.mu > 0.0) || !(spec.rho > 0.0))
        throw std::invalid_argument("mu and rho must be positive");

    const double lambda = spec.rho * spec.mu;
    Rng arrivals = Rng::stream(spec.seed, kArrivalStream);
    Rng durations = Rng::stream(spec.seed, kDurationStream);

    std::vector<Job> jobs;
    jobs.reserve(spec.n_jobs);
    double t = 0.0;
    for (std::size_t i = 0; i < spec.n_jobs; ++i) {
        t += arrivals.exponential(lambda);
        Job j;
        j.id = static_cast<JobId>(i);
        j.arrival = t;
        j.duration = durations.exponential(spec.mu);
        jobs.push_back(j);
    }
    return apply_urgency(std::move(jobs), spec.urgent_fraction, spec.fine_grained, spec.seed);
}

std::vector<Job> apply_urgency(std::vector<Job> jobs, double fraction, bool fine_grained,
                               std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("urgent fraction must lie in [0,1]");
    Rng flags = Rng::stream(seed, kUrgentStream);
    Rng pcts = Rng::stream(seed, kPctStream);
    for (Job& j : jobs) {
        j.urgent = flags.uniform01() < fraction;
        j.requested_pct.reset();
        if (j.urgent && fine_grained)
            j.requested_pct = 100.0 * pcts.uniform01_open_low();  // in (0,100]
    }
    return jobs;
}

std::vector<Job> ingest_process_log(const std::string& path, IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open process log: " + path);

    IngestStats local;
    std::vector<Job> jobs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (first && !fields.empty() && fields[0] == "command") {
            first = false;
            continue;  // header
        }
        first = false;
        ProcessLogRecord rec;
        double finish = 0.0;
        if (fields.size() < 10 || !parse_double(fields[1], rec.utime) ||
            !parse_double(fields[2], rec.systime) || !parse_double(fields[3], rec.etime) ||
            !parse_timestamp(fields[9], finish) || rec.etime < 0.0) {
            ++local.skipped_malformed;
            std::cerr << "ingest: skipping malformed process record: " << line << "\n";
            continue;
        }
        ++local.parsed;
        const double burst = rec.utime + rec.systime;
        if (!(burst > 0.0)) {
            ++local.dropped;
            continue;
        }
        Job j;
        j.duration = std::clamp(burst, 1.0, 185.0);
        j.arrival = finish - rec.etime;
        jobs.push_back(j);
    }
    if (stats) *stats = local;
    if (jobs.empty()) throw std::runtime_error("no usable process records in " + path);
    return finalize(std::move(jobs));
}

double scenario_bandwidth(double size_bytes, Scenario scenario) {
    int bucket = size_bytes <= kSmallMax ? 0 : (size_bytes <= kMediumMax ? 1 : 2);
    if (scenario == Scenario::Two) bucket = 2 - bucket;
    return kMbps * std::pow(10.0, bucket);  // 1, 10, 100 Mbps
}

std::vector<Job> ingest_web_trace(const std::string& path, Scenario scenario,
                                  IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open web trace: " + path);

    IngestStats local;
    std::vector<Job> jobs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (first && !fields.empty() && fields[0] == "arrival") {
            first = false;
            continue;
        }
        first = false;
        double arrival = 0.0, size = 0.0;
        if (fields.size() < 3 || !parse_timestamp(fields[0], arrival) ||
            !parse_double(fields[2], size)) {
            ++local.skipped_malformed;
            std::cerr << "ingest: skipping malformed trace record: " << line << "\n";
            continue;
        }
        ++local.parsed;
        if (size < kMinSize || size > kMaxSize) {
            ++local.dropped;
            continue;
        }
        Job j;
        j.arrival = arrival;
        j.file_size = size;
        j.bandwidth = scenario_bandwidth(size, scenario);
        j.duration = size / *j.bandwidth;
        jobs.push_back(j);
    }
    if (stats) *stats = local;
    if (jobs.empty()) throw std::runtime_error("no usable trace records in " + path);
    return finalize(std::move(jobs));
}

std::vector<Job> generate_webmix(const WebMixSpec& spec) {
    if (spec.n_requests == 0) throw std::invalid_argument("n_requests must be positive");
    Rng arrivals = Rng::stream(spec.seed, kArrivalStream);
    Rng sizes = Rng::stream(spec.seed, kDurationStream);

    std::vector<Job> jobs(spec.n_requests);
    double total_duration = 0.0;
    for (Job& j : jobs) {
        const double cls = sizes.uniform01();
        double lo = kMinSize, hi = kSmallMax;
        if (cls >= 0.64) {
            lo = kSmallMax;
            hi = kMediumMax;
        }
        if (cls >= 0.96) {
            lo = kMediumMax;
            hi = kMaxSize;
        }
        const double size = lo * std::exp(sizes.uniform01() * std::log(hi / lo));
        j.file_size = size;
        j.bandwidth = scenario_bandwidth(size, spec.scenario);
        j.duration = size / *j.bandwidth;
        total_duration += j.duration;
    }
    const double lambda = spec.target_rho * spec.n_requests / total_duration;
    double t = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        t += arrivals.exponential(lambda);
        jobs[i].arrival = t;
        jobs[i].id = static_cast<JobId>(i);
    }
    return jobs;
}

void write_jobs_csv(const std::string& path, const std::vector<Job>& jobs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write jobs csv: " + path);
    out << "id,arrival,duration,urgent,requested_pct,file_size,bandwidth\n";
    char buf[352];
    for (const Job& j : jobs) {
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%d,", j.id, j.arrival, j.duration,
                      j.urgent ? 1 : 0);
        out << buf;
        if (j.requested_pct) {
            std::snprintf(buf, sizeof buf, "%.17g", *j.requested_pct);
            out << buf;
        }
        out << ',';
        if (j.file_size) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", *j.file_size, *j.bandwidth);
            out << buf;
        } else {
            out << ',';
        }
        out << '\n';
    }
}

std::vector<Job> read_jobs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open jobs csv: " + path);
    std::vector<Job> jobs;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() < 7) throw std::runtime_error("bad jobs csv line: " + line);
        Job j;
        j.id = static_cast<JobId>(std::stoul(f[0]));
        j.arrival = std::stod(f[1]);
        j.duration = std::stod(f[2]);
        j.urgent = f[3] == "1";
        if (!f[4].empty()) j.requested_pct = std::stod(f[4]);
        if (!f[5].empty()) {
            j.file_size = std::stod(f[5]);
            j.bandwidth = std::stod(f[6]);
        }
        jobs.push_back(j);
    }
    return jobs;
}

}  // namespace susched
