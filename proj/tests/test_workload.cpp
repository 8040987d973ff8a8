#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "susched/rng.hpp"
#include "susched/workload.hpp"
#include "test_util.hpp"

using namespace susched;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("[workload] synthetic generation") {
    SUBCASE("zero urgent fraction labels nothing") {
        auto jobs = generate({1000, 0.04, 1.1, 0.0, false, 1});
        for (const Job& j : jobs) CHECK_FALSE(j.urgent);
    }
    SUBCASE("mean duration concentrates around 1/mu") {
        double mean = 0.0;
        const int seeds = 5;
        for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
            auto jobs = generate({10000, 0.04, 1.1, 0.0, false, seed});
            double sum = 0.0;
            for (const Job& j : jobs) sum += j.duration;
            mean += sum / jobs.size() / seeds;
        }
        CHECK(mean == doctest::Approx(25.0).epsilon(0.04));
    }
    SUBCASE("urgent count concentrates around the fraction") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto jobs = generate({10000, 0.04, 1.1, 0.3, false, seed});
            std::size_t urgent = 0;
            for (const Job& j : jobs) urgent += j.urgent;
            CHECK(urgent > 2850);
            CHECK(urgent < 3150);
        }
    }
    SUBCASE("same seed reproduces the same jobs") {
        auto a = generate({500, 0.04, 1.3, 0.5, true, 77});
        auto b = generate({500, 0.04, 1.3, 0.5, true, 77});
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].arrival == b[i].arrival);
            CHECK(a[i].duration == b[i].duration);
            CHECK(a[i].urgent == b[i].urgent);
            CHECK(a[i].requested_pct == b[i].requested_pct);
        }
    }
    SUBCASE("urgent labeling leaves arrivals and durations untouched") {
        auto base = generate({500, 0.04, 1.1, 0.0, false, 9});
        auto labeled = apply_urgency(base, 0.7, true, 9);
        REQUIRE(base.size() == labeled.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(base[i].arrival == labeled[i].arrival);
            CHECK(base[i].duration == labeled[i].duration);
            if (labeled[i].urgent) {
                REQUIRE(labeled[i].requested_pct.has_value());
                CHECK(*labeled[i].requested_pct > 0.0);
                CHECK(*labeled[i].requested_pct <= 100.0);
            }
        }
    }
    SUBCASE("labelings nest across fractions") {
        auto base = generate({2000, 0.04, 1.1, 0.0, false, 4});
        auto low = apply_urgency(base, 0.2, false, 4);
        auto high = apply_urgency(base, 0.6, false, 4);
        for (std::size_t i = 0; i < base.size(); ++i)
            if (low[i].urgent) CHECK(high[i].urgent);
    }
}

TEST_CASE("[workload] process log ingestion") {
    const std::string header =
        "command,utime,systime,etime,uid,gid,mem,pid,ppid,finish_time\n";

    SUBCASE("burst and arrival reconstruction") {
        auto path = write_temp("pl_basic.csv",
                               header + "cc1plus,17.00,1.00,19.00,1000,1000,31632,27379,27378,100.0\n");
        auto jobs = ingest_process_log(path);
        REQUIRE(jobs.size() == 1);
        CHECK(jobs[0].duration == doctest::Approx(18.0));
        CHECK(jobs[0].arrival == doctest::Approx(0.0));  // 100 - 19, shifted to zero
    }
    SUBCASE("textual finish timestamps are accepted") {
        auto path = write_temp(
            "pl_ctime.csv",
            header +
                "cc1plus,17.00,1.00,19.00,1000,1000,31632,27379,27378,Sun Dec 15 16:47:50 2013\n" +
                "ld,5.00,0.00,6.00,1000,1000,10512,27554,27553,Sun Dec 15 16:47:52 2013\n");
        auto jobs = ingest_process_log(path);
        REQUIRE(jobs.size() == 2);
        // first arrival: 16:47:50 - 19s; second: 16:47:52 - 6s, i.e. 15s later
        CHECK(jobs[0].arrival == doctest::Approx(0.0));
        CHECK(jobs[1].arrival == doctest::Approx(15.0));
    }
    SUBCASE("zero-burst records are dropped") {
        auto path = write_temp("pl_zero.csv",
                               header + "idle,0.00,0.00,5.00,0,0,0,1,0,50.0\n" +
                                   "work,2.00,1.00,4.00,0,0,0,2,0,60.0\n");
        IngestStats stats;
        auto jobs = ingest_process_log(path, &stats);
        CHECK(jobs.size() == 1);
        CHECK(stats.dropped == 1);
    }
    SUBCASE("bursts clamp into [1,185]") {
        auto path = write_temp("pl_clamp.csv",
                               header + "tiny,0.10,0.10,1.00,0,0,0,1,0,50.0\n" +
                                   "huge,400.00,0.00,400.00,0,0,0,2,0,500.0\n");
        auto jobs = ingest_process_log(path);
        REQUIRE(jobs.size() == 2);
        CHECK(jobs[0].duration == doctest::Approx(1.0));
        CHECK(jobs[1].duration == doctest::Approx(185.0));
    }
    SUBCASE("three-line fixture gets a zero-based arrival axis") {
        auto path = write_temp("pl_three.csv",
                               header + "a,1.00,0.00,2.00,0,0,0,1,0,30.0\n" +
                                   "b,2.00,0.00,3.00,0,0,0,2,0,20.0\n" +
                                   "c,3.00,0.00,4.00,0,0,0,3,0,40.0\n");
        auto jobs = ingest_process_log(path);
        REQUIRE(jobs.size() == 3);
        CHECK(jobs[0].arrival == doctest::Approx(0.0));  // 20-3 = 17 is earliest
        CHECK(jobs[1].arrival == doctest::Approx(11.0));
        CHECK(jobs[2].arrival == doctest::Approx(19.0));
        for (std::size_t i = 0; i < 3; ++i) CHECK(jobs[i].id == i);
    }
    SUBCASE("malformed lines are skipped and counted") {
        auto path = write_temp("pl_bad.csv", header + "broken,not_a_number,1,2\n" +
                                                 "ok,2.00,1.00,4.00,0,0,0,2,0,60.0\n");
        IngestStats stats;
        auto jobs = ingest_process_log(path, &stats);
        CHECK(jobs.size() == 1);
        CHECK(stats.skipped_malformed == 1);
    }
    SUBCASE("a file with no usable records is an error") {
        auto path = write_temp("pl_empty.csv", header);
        CHECK_THROWS_AS(ingest_process_log(path), std::runtime_error);
        CHECK_THROWS_AS(ingest_process_log("/nonexistent/x.csv"), std::runtime_error);
    }
    SUBCASE("re-ingestion is identical") {
        auto path = write_temp("pl_idem.csv",
                               header + "a,1.00,0.50,2.00,0,0,0,1,0,30.0\n" +
                                   "b,2.00,0.25,3.00,0,0,0,2,0,20.0\n");
        auto a = ingest_process_log(path);
        auto b = ingest_process_log(path);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].arrival == b[i].arrival);
            CHECK(a[i].duration == b[i].duration);
        }
    }
}

TEST_CASE("[workload] scenario bandwidth mapping") {
    SUBCASE("quoted examples") {
        CHECK(scenario_bandwidth(10.0 * 1024, Scenario::One) == doctest::Approx(125000.0));
        CHECK(scenario_bandwidth(10.0 * 1024, Scenario::Two) == doctest::Approx(12500000.0));
        CHECK(scenario_bandwidth(600.0 * 1024, Scenario::One) == doctest::Approx(12500000.0));
    }
    SUBCASE("boundaries close on the left") {
        CHECK(scenario_bandwidth(50.0 * 1024, Scenario::One) == doctest::Approx(125000.0));
        CHECK(scenario_bandwidth(50.0 * 1024 + 1, Scenario::One) == doctest::Approx(1250000.0));
        CHECK(scenario_bandwidth(500.0 * 1024, Scenario::One) == doctest::Approx(1250000.0));
        CHECK(scenario_bandwidth(500.0 * 1024 + 1, Scenario::One) ==
              doctest::Approx(12500000.0));
    }
    SUBCASE("every size maps to exactly one bandwidth per scenario") {
        Rng rng(8);
        for (int i = 0; i < 1000; ++i) {
            const double size = 56.0 + rng.uniform01() * (15.0 * 1024 * 1024 - 56.0);
            for (Scenario s : {Scenario::One, Scenario::Two}) {
                const double bw = scenario_bandwidth(size, s);
                CHECK((bw == 125000.0 || bw == 1250000.0 || bw == 12500000.0));
            }
        }
    }
}

TEST_CASE("[workload] web trace ingestion") {
    const std::string header = "arrival,url,size,status\n";

    SUBCASE("scenario durations") {
        auto path = write_temp("wt_basic.csv", header + "5.0,/a,10240,200\n");
        auto s1 = ingest_web_trace(path, Scenario::One);
        auto s2 = ingest_web_trace(path, Scenario::Two);
        REQUIRE(s1.size() == 1);
        CHECK(*s1[0].bandwidth == doctest::Approx(125000.0));
        CHECK(s1[0].duration == doctest::Approx(10240.0 / 125000.0));
        CHECK(*s2[0].bandwidth == doctest::Approx(12500000.0));
    }
    SUBCASE("out-of-range sizes are dropped, bad sizes skipped") {
        auto path = write_temp("wt_filter.csv", header + "1.0,/tiny,8,200\n" +
                                                    "2.0,/big,99999999,200\n" +
                                                    "3.0,/bad,notasize,200\n" +
                                                    "4.0,/ok,2048,200\n");
        IngestStats stats;
        auto jobs = ingest_web_trace(path, Scenario::One, &stats);
        CHECK(jobs.size() == 1);
        CHECK(stats.dropped == 2);
        CHECK(stats.skipped_malformed == 1);
    }
}

TEST_CASE("[workload] web mix surrogate") {
    WebMixSpec spec;
    spec.n_requests = 20000;
    spec.seed = 21;
    spec.scenario = Scenario::One;
    auto jobs = generate_webmix(spec);
    REQUIRE(jobs.size() == spec.n_requests);

    std::size_t small = 0, medium = 0, large = 0;
    for (const Job& j : jobs) {
        const double size = *j.file_size;
        CHECK(size >= 56.0);
        CHECK(size <= 15.0 * 1024 * 1024);
        if (size <= 50.0 * 1024)
            ++small;
        else if (size <= 500.0 * 1024)
            ++medium;
        else
            ++large;
    }
    CHECK(small / double(jobs.size()) == doctest::Approx(0.64).epsilon(0.03));
    CHECK(medium / double(jobs.size()) == doctest::Approx(0.32).epsilon(0.05));
    CHECK(large / double(jobs.size()) == doctest::Approx(0.04).epsilon(0.2));

    SUBCASE("deterministic per seed") {
        auto again = generate_webmix(spec);
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            CHECK(jobs[i].arrival == again[i].arrival);
            CHECK(*jobs[i].file_size == *again[i].file_size);
        }
    }
}

TEST_CASE("[workload] jobs csv round-trips exactly") {
    auto jobs = generate({200, 0.04, 1.2, 0.4, true, 15});
    const auto path =
        (std::filesystem::temp_directory_path() / "jobs_roundtrip.csv").string();
    write_jobs_csv(path, jobs);
    auto loaded = read_jobs_csv(path);
    REQUIRE(loaded.size() == jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        CHECK(loaded[i].id == jobs[i].id);
        CHECK(loaded[i].arrival == jobs[i].arrival);
        CHECK(loaded[i].duration == jobs[i].duration);
        CHECK(loaded[i].urgent == jobs[i].urgent);
        CHECK(loaded[i].requested_pct == jobs[i].requested_pct);
        CHECK(loaded[i].file_size == jobs[i].file_size);
    }
}
