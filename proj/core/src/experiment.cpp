#include "susched/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "susched/applications.hpp"
#include "susched/baselines.hpp"
#include "susched/policies.hpp"

namespace susched {

namespace fs = std::filesystem;

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string format_cell(const std::optional<double>& v) {
    return v ? format_metric(*v) : "-";
}

bool is_positional(const std::string& name) {
    return name == "MPF" || name == "MPF-SD" || name == "MINPF";
}

}  // namespace

std::vector<std::string> known_policy_names() {
    return {"FCFS", "SJF",  "SRPT",  "RR",  "PS",  "UDSU", "NUBSU", "FSU",
            "GPSU", "MPF",  "MPF-SD", "MINPF", "SSU", "DSU",  "SSUPS", "DSUPS"};
}

PolicySpec parse_policy_spec(const std::string& text) {
    PolicySpec spec;
    std::string name = upper(text);
    if (auto colon = name.find(':'); colon != std::string::npos) {
        spec.name = name.substr(0, colon);
        if (spec.name != "GPSU")
            throw std::invalid_argument("only GPSU takes a parameter: " + text);
        try {
            spec.gpsu_p = std::stod(name.substr(colon + 1));
        } catch (...) {
            throw std::invalid_argument("bad GPSU probability in: " + text);
        }
        if (spec.gpsu_p < 0.0 || spec.gpsu_p > 1.0)
            throw std::invalid_argument("GPSU probability must lie in [0,1]: " + text);
    } else {
        spec.name = name;
    }
    const auto names = known_policy_names();
    if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
        std::string msg = "unknown policy '" + text + "'; valid names:";
        for (const auto& n : names) msg += " " + n;
        throw std::invalid_argument(msg);
    }
    if (spec.name == "GPSU") {
        GpsuPolicy tmp(spec.gpsu_p, false);
        spec.label = std::string(tmp.name());
    } else {
        spec.label = spec.name;
    }
    return spec;
}

PolicyHandle make_policy(const PolicySpec& spec, bool fine_grained) {
    PolicyHandle handle;
    if (spec.name == "FCFS")
        handle.policy = std::make_unique<FcfsPolicy>();
    else if (spec.name == "SJF")
        handle.policy = std::make_unique<SjfPolicy>();
    else if (spec.name == "SRPT")
        handle.policy = std::make_unique<SrptPolicy>();
    else if (spec.name == "RR")
        handle.policy = std::make_unique<RoundRobinPolicy>();
    else if (spec.name == "PS")
        handle.exact_ps = true;
    else if (spec.name == "UDSU")
        handle.policy = std::make_unique<UdsuPolicy>();
    else if (spec.name == "NUBSU")
        handle.policy = std::make_unique<NubsuPolicy>();
    else if (spec.name == "FSU")
        handle.policy = std::make_unique<FsuPolicy>();
    else if (spec.name == "GPSU")
        handle.policy = std::make_unique<GpsuPolicy>(spec.gpsu_p, fine_grained);
    else if (spec.name == "MPF")
        handle.policy = std::make_unique<PositionalPolicy>(PositionalKind::Mpf);
    else if (spec.name == "MPF-SD")
        handle.policy = std::make_unique<PositionalPolicy>(PositionalKind::MpfSd);
    else if (spec.name == "MINPF")
        handle.policy = std::make_unique<PositionalPolicy>(PositionalKind::MinPf);
    else if (spec.name == "SSU")
        handle.policy = std::make_unique<SsuPolicy>();
    else if (spec.name == "DSU")
        handle.policy = std::make_unique<DsuPolicy>();
    else if (spec.name == "SSUPS")
        handle.policy = std::make_unique<SsupsPolicy>();
    else if (spec.name == "DSUPS")
        handle.policy = std::make_unique<DsupsPolicy>();
    else
        throw std::invalid_argument("unknown policy: " + spec.name);
    return handle;
}

void ExperimentConfig::validate() const {
    if (policies.empty()) throw std::invalid_argument("config needs at least one policy");
    if (seeds.empty()) throw std::invalid_argument("config needs at least one seed");
    if (urgent_fractions.empty())
        throw std::invalid_argument("config needs at least one urgent fraction");
    for (double f : urgent_fractions)
        if (f < 0.0 || f > 1.0)
            throw std::invalid_argument("urgent fractions must lie in [0,1]");
    if (fine_grained)
        for (const auto& p : policies)
            if (is_positional(p.name))
                throw std::invalid_argument(
                    "positional policies are not applicable in fine-grained mode");
    if ((workload == WorkloadKind::Pacct || workload == WorkloadKind::WebTrace ||
         workload == WorkloadKind::JobsCsv) &&
        path.empty())
        throw std::invalid_argument("trace workloads need a path");
    if (!(quantum > 0.0)) throw std::invalid_argument("quantum must be positive");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.policies.clear();
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;

        if (key == "workload") {
            const std::string w = upper(value);
            if (w == "SYNTHETIC")
                cfg.workload = WorkloadKind::Synthetic;
            else if (w == "PACCT")
                cfg.workload = WorkloadKind::Pacct;
            else if (w == "WEBTRACE")
                cfg.workload = WorkloadKind::WebTrace;
            else if (w == "WEBMIX")
                cfg.workload = WorkloadKind::WebMix;
            else if (w == "JOBS")
                cfg.workload = WorkloadKind::JobsCsv;
            else
                throw std::invalid_argument("unknown workload: " + value);
        } else if (key == "n_jobs") {
            cfg.n_jobs = std::stoul(value);
        } else if (key == "mu") {
            cfg.mu = std::stod(value);
        } else if (key == "rho") {
            cfg.rho_values.clear();
            for (const auto& v : split_list(value)) cfg.rho_values.push_back(std::stod(v));
        } else if (key == "urgent_fractions") {
            cfg.urgent_fractions.clear();
            for (const auto& v : split_list(value))
                cfg.urgent_fractions.push_back(std::stod(v));
        } else if (key == "mode") {
            const std::string m = upper(value);
            if (m == "FINE-GRAINED")
                cfg.fine_grained = true;
            else if (m == "NO-CONSTRAINTS")
                cfg.fine_grained = false;
            else
                throw std::invalid_argument("unknown mode: " + value);
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const auto& v : split_list(value)) cfg.seeds.push_back(std::stoull(v));
        } else if (key == "policies") {
            for (const auto& v : split_list(value)) cfg.policies.push_back(parse_policy_spec(v));
        } else if (key == "quantum") {
            cfg.quantum = std::stod(value);
        } else if (key == "path") {
            cfg.path = value;
        } else if (key == "scenario") {
            const int s = std::stoi(value);
            if (s != 1 && s != 2) throw std::invalid_argument("scenario must be 1 or 2");
            cfg.scenario = s == 1 ? Scenario::One : Scenario::Two;
        } else if (key == "target_rho") {
            cfg.target_rho = std::stod(value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "formats") {
            cfg.csv = false;
            cfg.markdown = false;
            for (const auto& v : split_list(value)) {
                if (upper(v) == "CSV") cfg.csv = true;
                else if (upper(v) == "MD" || upper(v) == "MARKDOWN") cfg.markdown = true;
                else throw std::invalid_argument("unknown format: " + v);
            }
        } else if (key == "emit_records") {
            cfg.emit_records = value == "true" || value == "1";
        } else if (key == "abort_threshold") {
            if (upper(value) == "AUTO") {
                cfg.abort_auto = true;
            } else if (upper(value) == "NONE") {
                cfg.abort_auto = false;
                cfg.abort_threshold.reset();
            } else {
                cfg.abort_threshold = std::stod(value);
            }
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void write_records_csv(const std::string& path, const RunResult& run,
                       const std::vector<Job>& jobs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write records csv: " + path);
    out << "job_id,arrival,duration,urgent,t_exp,t_actual,wait,finish\n";
    char buf[384];
    for (const CompletionRecord& rec : run.records) {
        const Job& j = jobs.at(rec.job_id);
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", rec.job_id,
                      j.arrival, j.duration, j.urgent ? 1 : 0, rec.t_exp, rec.t_actual, rec.wait,
                      rec.finish);
        out << buf;
    }
}

RunResult read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records csv: " + path);
    RunResult run;
    run.policy_name = fs::path(path).stem().string();
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string field;
        std::stringstream ss(line);
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (f.size() < 8) throw std::runtime_error("bad records line: " + line);
        CompletionRecord rec;
        rec.job_id = static_cast<JobId>(std::stoul(f[0]));
        rec.t_exp = std::stod(f[4]);
        rec.t_actual = std::stod(f[5]);
        rec.wait = std::stod(f[6]);
        rec.finish = std::stod(f[7]);
        run.records.push_back(rec);
    }
    return run;
}

namespace {

struct CellKey {
    double rho;
    double fraction;
    bool operator<(const CellKey& o) const {
        if (rho != o.rho) return rho < o.rho;
        return fraction < o.fraction;
    }
};

std::string cell_tag(const std::string& label, double rho, double fraction, std::uint64_t seed) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_rho%g_f%g_s%llu", label.c_str(), rho, fraction,
                  static_cast<unsigned long long>(seed));
    return buf;
}

void write_raw_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "policy,rho,urgent_fraction,seed,achieved_ratio,successful_ratio,"
           "slowdown_nonurgent,mean_wait,p95_wait,max_wait,std_wait,dnuji,user_abort\n";
    for (const SweepRow& r : rows) {
        out << r.policy << ',' << format_double(r.rho) << ',' << format_double(r.urgent_fraction)
            << ',' << r.seed << ',' << format_cell(r.report.achieved_ratio) << ','
            << format_cell(r.report.successful_ratio) << ','
            << format_cell(r.report.slowdown_nonurgent) << ','
            << format_metric(r.report.mean_wait) << ',' << format_metric(r.report.p95_wait) << ','
            << format_metric(r.report.max_wait) << ',' << format_metric(r.report.std_wait) << ','
            << format_cell(r.report.dnuji) << ',' << format_cell(r.report.user_abort) << '\n';
    }
}

struct Averaged {
    std::optional<double> achieved, successful, slowdown, dnuji, abort;
    double mean_wait = 0, p95_wait = 0, max_wait = 0, std_wait = 0;
};

Averaged average_rows(const std::vector<const SweepRow*>& rows) {
    Averaged avg;
    auto opt_mean = [&](auto getter) -> std::optional<double> {
        double sum = 0.0;
        std::size_t count = 0;
        for (const SweepRow* r : rows)
            if (auto v = getter(*r)) {
                sum += *v;
                ++count;
            }
        if (count == 0) return std::nullopt;
        return sum / static_cast<double>(count);
    };
    avg.achieved = opt_mean([](const SweepRow& r) { return r.report.achieved_ratio; });
    avg.successful = opt_mean([](const SweepRow& r) { return r.report.successful_ratio; });
    avg.slowdown = opt_mean([](const SweepRow& r) { return r.report.slowdown_nonurgent; });
    avg.dnuji = opt_mean([](const SweepRow& r) { return r.report.dnuji; });
    avg.abort = opt_mean([](const SweepRow& r) { return r.report.user_abort; });
    double n = static_cast<double>(rows.size());
    for (const SweepRow* r : rows) {
        avg.mean_wait += r->report.mean_wait / n;
        avg.p95_wait += r->report.p95_wait / n;
        avg.max_wait += r->report.max_wait / n;
        avg.std_wait += r->report.std_wait / n;
    }
    return avg;
}

void write_summary(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows) {
    // group: (rho, fraction, policy) -> seed rows
    std::map<std::tuple<double, double, std::string>, std::vector<const SweepRow*>> groups;
    std::vector<std::string> labels;
    for (const auto& p : cfg.policies)
        if (std::find(labels.begin(), labels.end(), p.label) == labels.end())
            labels.push_back(p.label);
    for (const SweepRow& r : rows) groups[{r.rho, r.urgent_fraction, r.policy}].push_back(&r);

    if (cfg.csv) {
        std::ofstream out(cfg.out_dir + "/summary.csv");
        out << "policy,rho,urgent_fraction,achieved_ratio,successful_ratio,slowdown_nonurgent,"
               "mean_wait,p95_wait,max_wait,std_wait,dnuji,user_abort\n";
        for (double rho : cfg.rho_values) {
            for (double f : cfg.urgent_fractions) {
                for (const auto& label : labels) {
                    auto it = groups.find({rho, f, label});
                    if (it == groups.end()) continue;
                    Averaged a = average_rows(it->second);
                    out << label << ',' << format_double(rho) << ',' << format_double(f) << ','
                        << format_cell(a.achieved) << ',' << format_cell(a.successful) << ','
                        << format_cell(a.slowdown) << ',' << format_metric(a.mean_wait) << ','
                        << format_metric(a.p95_wait) << ',' << format_metric(a.max_wait) << ','
                        << format_metric(a.std_wait) << ',' << format_cell(a.dnuji) << ','
                        << format_cell(a.abort) << '\n';
                }
            }
        }
    }

    if (!cfg.markdown) return;
    std::ofstream md(cfg.out_dir + "/summary.md");
    struct Metric {
        const char* title;
        std::function<std::string(const Averaged&)> cell;
    };
    const std::vector<Metric> metrics = {
        {"Achieved speed-up ratio (% of urgent jobs sped up)",
         [](const Averaged& a) { return format_cell(a.achieved); }},
        {"Successfully sped-up ratio (% of urgent jobs meeting their request)",
         [](const Averaged& a) { return format_cell(a.successful); }},
        {"Slowed-down non-urgent jobs (%)",
         [](const Averaged& a) { return format_cell(a.slowdown); }},
        {"Mean wait time", [](const Averaged& a) { return format_metric(a.mean_wait); }},
        {"95th percentile / maximum wait time",
         [](const Averaged& a) {
             return format_metric(a.p95_wait) + " / " + format_metric(a.max_wait);
         }},
        {"Wait time standard deviation",
         [](const Averaged& a) { return format_metric(a.std_wait); }},
        {"DNUJI (unsuccessful / total opportunistic forwards)",
         [](const Averaged& a) { return format_cell(a.dnuji); }},
        {"User abort (%)", [](const Averaged& a) { return format_cell(a.abort); }},
    };
    for (double rho : cfg.rho_values) {
        for (const Metric& metric : metrics) {
            md << "## " << metric.title << " (rho = " << format_double(rho) << ")\n\n";
            md << "| Urgent jobs |";
            for (const auto& label : labels) md << ' ' << label << " |";
            md << "\n|---|";
            for (std::size_t i = 0; i < labels.size(); ++i) md << "---|";
            md << '\n';
            for (double f : cfg.urgent_fractions) {
                md << "| " << format_double(f * 100.0) << "% |";
                for (const auto& label : labels) {
                    auto it = groups.find({rho, f, label});
                    md << ' ' << (it == groups.end() ? "-" : metric.cell(average_rows(it->second)))
                       << " |";
                }
                md << '\n';
            }
            md << '\n';
        }
    }
}

}  // namespace

std::vector<SweepRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    const std::string records_dir = cfg.out_dir + "/records";
    if (cfg.emit_records) fs::create_directories(records_dir);

    // Trace-backed workloads are read once and shared across the sweep.
    std::vector<Job> trace_jobs;
    if (cfg.workload == WorkloadKind::Pacct)
        trace_jobs = ingest_process_log(cfg.path);
    else if (cfg.workload == WorkloadKind::WebTrace)
        trace_jobs = ingest_web_trace(cfg.path, cfg.scenario);
    else if (cfg.workload == WorkloadKind::JobsCsv)
        trace_jobs = read_jobs_csv(cfg.path);

    std::vector<SweepRow> rows;
    for (double rho : cfg.rho_values) {
        for (std::uint64_t seed : cfg.seeds) {
            std::vector<Job> base;
            switch (cfg.workload) {
                case WorkloadKind::Synthetic:
                    base = generate({cfg.n_jobs, cfg.mu, rho, 0.0, false, seed});
                    break;
                case WorkloadKind::WebMix:
                    base = generate_webmix({cfg.n_jobs, cfg.target_rho, cfg.scenario, seed});
                    break;
                default:
                    base = trace_jobs;
            }
            for (double fraction : cfg.urgent_fractions) {
                std::vector<Job> jobs =
                    apply_urgency(base, fraction, cfg.fine_grained, seed);

                // Shared abort threshold per cell, derived from PS if asked.
                std::optional<double> threshold = cfg.abort_threshold;
                if (cfg.abort_auto && !threshold) {
                    RunResult ps = ps_run(jobs);
                    threshold = 0.0;
                    for (const auto& rec : ps.records)
                        threshold = std::max(*threshold, 0.95 * rec.t_actual);
                }

                for (const PolicySpec& spec : cfg.policies) {
                    PolicyHandle handle = make_policy(spec, cfg.fine_grained);
                    RunResult result = handle.exact_ps
                                           ? ps_run(jobs)
                                           : run(jobs, *handle.policy, cfg.quantum, seed);
                    SweepRow row;
                    row.policy = spec.label;
                    row.rho = rho;
                    row.urgent_fraction = fraction;
                    row.seed = seed;
                    row.report = summarize(result, jobs);
                    if (auto* nubsu = dynamic_cast<NubsuPolicy*>(handle.policy.get()))
                        row.report.dnuji = nubsu->dnuji();
                    if (threshold) row.report.user_abort = user_abort(result, threshold);
                    rows.push_back(std::move(row));

                    if (cfg.emit_records)
                        write_records_csv(records_dir + "/" +
                                              cell_tag(spec.label, rho, fraction, seed) + ".csv",
                                          result, jobs);
                }
            }
        }
    }

    if (cfg.csv) write_raw_csv(cfg.out_dir + "/raw.csv", rows);
    write_summary(cfg, rows);
    return rows;
}

void write_pairwise(const std::string& runs_dir, const std::string& out_dir, bool markdown) {
    std::map<std::string, RunResult> runs;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(runs_dir))
        if (entry.path().extension() == ".csv") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) runs[f.stem().string()] = read_records_csv(f.string());
    if (runs.empty()) throw std::runtime_error("no record files in " + runs_dir);

    PairwiseMatrix matrix = pairwise(runs);
    fs::create_directories(out_dir);
    std::ofstream out(out_dir + "/pairwise.csv");
    out << "policy_x,policy_y,su_pct,sd_pct,tie_pct\n";
    for (const auto& [key, cell] : matrix)
        out << key.first << ',' << key.second << ',' << format_metric(cell.su_pct) << ','
            << format_metric(cell.sd_pct) << ',' << format_metric(cell.tie_pct) << '\n';

    if (!markdown) return;
    std::ofstream md(out_dir + "/pairwise.md");
    md << "## Speed-up / slow-down percentage per policy pair (SU / SD)\n\n| X \\\\ Y |";
    std::vector<std::string> names;
    for (const auto& [name, _] : runs) names.push_back(name);
    for (const auto& n : names) md << ' ' << n << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < names.size(); ++i) md << "---|";
    md << '\n';
    for (const auto& x : names) {
        md << "| " << x << " |";
        for (const auto& y : names) {
            const PairwiseCell& cell = matrix.at({x, y});
            md << ' ' << format_metric(cell.su_pct) << " / " << format_metric(cell.sd_pct)
               << " |";
        }
        md << '\n';
    }
}

}  // namespace susched
