// Experiment runner for the speed-up scheduling simulator.
//
// simulate: sweep (policy x load x urgent fraction x seed) from a config
//           file and emit raw/summary tables plus per-job record files.
// compare:  pairwise speed-up/slow-down matrix over emitted record files.
// ingest:   convert a process-accounting log or web trace into the jobs CSV
//           consumed by `simulate` with `workload = jobs`.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "susched/experiment.hpp"

namespace {

constexpr const char* kSimulateHelp = R"(Runs the sweep described by --config.

Reproducible tables, by configuration:
  synthetic sweep, no-constraints mode, policies UDSU,NUBSU,FSU[,MPF,MPF-SD,MINPF]
      -> per-fraction achieved-speed-up %%, slowed-down non-urgent %%,
         mean wait, p95/max wait columns of summary.csv
  synthetic sweep, fine-grained mode, policies GPSU:1,GPSU:0.9,GPSU:0.8,GPSU:0.7
      -> successfully-sped-up %% and slowdown/mean-wait columns
  synthetic sweep, policy NUBSU, rho list 1.1,1.3,1.5
      -> dnuji column (plot-ready, one row per load/fraction)
  workload = pacct, path = <log.csv>
      -> the same tables over a process-accounting trace
  workload = webmix or webtrace with scenario = 1|2 and policies PS,SRPT,SSU,DSU
      -> response-time and user-abort columns (abort_threshold = auto)
  policies FCFS,SJF,SRPT,RR,SSUPS,DSUPS over rho list
      -> wait-time mean/max/stddev comparison; feed records/ to `compare`
         for the pairwise speed-up/slow-down matrix)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event single-server scheduling simulator with "
                 "speed-up policies"};
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_override, format_override;
    std::vector<std::string> policy_override;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    auto* simulate = app.add_subcommand("simulate", kSimulateHelp);
    simulate->add_option("--config", config_path, "experiment config file")->required();
    simulate->add_option("--seed-override", seed_override, "run a single seed instead of the configured list")
        ->each([&](const std::string&) { has_seed_override = true; });
    simulate->add_option("--policy", policy_override,
                         "policy name (repeatable); replaces the configured list");
    simulate->add_option("--out", out_override, "output directory override");
    simulate->add_option("--format", format_override, "csv|md")
        ->check(CLI::IsMember({"csv", "md"}));

    // compare
    std::string runs_dir, compare_out = "compare_out";
    bool compare_md = false;
    auto* compare = app.add_subcommand(
        "compare", "Pairwise per-job wait comparison over record files emitted by simulate");
    compare->add_option("--runs", runs_dir, "directory of per-run record CSVs")->required();
    compare->add_option("--out", compare_out, "output directory");
    compare->add_flag("--md", compare_md, "also write a markdown matrix");

    // ingest
    std::string pacct_path, webtrace_path, jobs_out = "jobs.csv";
    int scenario = 1;
    auto* ingest = app.add_subcommand(
        "ingest", "Convert a trace into the jobs CSV consumed by simulate (workload = jobs)");
    auto* pacct_opt = ingest->add_option("--pacct", pacct_path, "process-accounting CSV");
    auto* web_opt = ingest->add_option("--webtrace", webtrace_path, "web trace CSV");
    pacct_opt->excludes(web_opt);
    ingest->add_option("--scenario", scenario, "bandwidth scenario for web traces (1|2)")
        ->check(CLI::IsMember({1, 2}));
    ingest->add_option("--out", jobs_out, "output jobs CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            susched::ExperimentConfig cfg = susched::parse_config_file(config_path);
            if (has_seed_override) cfg.seeds = {seed_override};
            if (!policy_override.empty()) {
                cfg.policies.clear();
                for (const auto& p : policy_override)
                    cfg.policies.push_back(susched::parse_policy_spec(p));
            }
            if (!out_override.empty()) cfg.out_dir = out_override;
            if (format_override == "csv") {
                cfg.csv = true;
                cfg.markdown = false;
            } else if (format_override == "md") {
                cfg.csv = false;
                cfg.markdown = true;
            }
            auto rows = susched::run_experiment(cfg);
            std::cout << "wrote " << rows.size() << " sweep rows under " << cfg.out_dir << "\n";
        } else if (compare->parsed()) {
            susched::write_pairwise(runs_dir, compare_out, compare_md);
            std::cout << "wrote pairwise matrix under " << compare_out << "\n";
        } else if (ingest->parsed()) {
            if (pacct_path.empty() == webtrace_path.empty()) {
                std::cerr << "ingest needs exactly one of --pacct / --webtrace\n";
                return 2;
            }
            susched::IngestStats stats;
            std::vector<susched::Job> jobs;
            if (!pacct_path.empty()) {
                jobs = susched::ingest_process_log(pacct_path, &stats);
            } else {
                jobs = susched::ingest_web_trace(
                    webtrace_path,
                    scenario == 1 ? susched::Scenario::One : susched::Scenario::Two, &stats);
            }
            susched::write_jobs_csv(jobs_out, jobs);
            std::cout << "wrote " << jobs.size() << " jobs to " << jobs_out << " (parsed "
                      << stats.parsed << ", skipped " << stats.skipped_malformed << ", dropped "
                      << stats.dropped << ")\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
