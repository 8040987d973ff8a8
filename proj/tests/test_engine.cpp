#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "susched/baselines.hpp"
#include "susched/core.hpp"
#include "susched/engine.hpp"
#include "susched/policies.hpp"
#include "susched/workload.hpp"
#include "test_util.hpp"

using namespace susched;
using test::example_jobs;
using test::make_job;

TEST_CASE("[engine] FCFS on the worked example is neutral everywhere") {
    FcfsPolicy fcfs;
    RunResult result = run(example_jobs(), fcfs);
    REQUIRE(result.records.size() == 6);
    const double expected_texp[] = {5, 9, 11, 14, 16, 20};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(result.records[i].t_exp == doctest::Approx(expected_texp[i]).epsilon(1e-12));
        CHECK(result.records[i].t_actual ==
              doctest::Approx(result.records[i].t_exp).epsilon(1e-12));
        CHECK(classify(result.records[i]).neutral());
    }
}

TEST_CASE("[engine] forced schedule reproduces the worked example outcomes") {
    RunResult result = replay_fixed_order(example_jobs(), {0, 5, 3, 2, 4, 1});
    REQUIRE(result.records.size() == 6);
    const double expected_texp[] = {5, 9, 11, 14, 16, 20};
    const double expected_actual[] = {5, 24, 15, 11, 16, 5};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(result.records[i].t_exp == doctest::Approx(expected_texp[i]).epsilon(1e-12));
        CHECK(result.records[i].t_actual == doctest::Approx(expected_actual[i]).epsilon(1e-12));
    }
    CHECK(classify(result.records[5]).sped_up());
    CHECK(classify(result.records[5]).amount == doctest::Approx(15.0));
    CHECK(classify(result.records[3]).sped_up());
    CHECK(classify(result.records[3]).amount == doctest::Approx(3.0));
    CHECK(classify(result.records[2]).slowed_down());
    CHECK(classify(result.records[2]).amount == doctest::Approx(4.0));
    CHECK(classify(result.records[1]).slowed_down());
    CHECK(classify(result.records[1]).amount == doctest::Approx(15.0));
    CHECK(classify(result.records[0]).neutral());
    CHECK(classify(result.records[4]).neutral());
}

TEST_CASE("[engine] replay in arrival order equals FCFS") {
    auto jobs = example_jobs();
    FcfsPolicy fcfs;
    RunResult direct = run(jobs, fcfs);
    RunResult replayed = replay_fixed_order(jobs, {0, 1, 2, 3, 4, 5});
    REQUIRE(direct.records.size() == replayed.records.size());
    for (std::size_t i = 0; i < direct.records.size(); ++i) {
        CHECK(direct.records[i].finish ==
              doctest::Approx(replayed.records[i].finish).epsilon(1e-12));
        CHECK(direct.records[i].wait == doctest::Approx(replayed.records[i].wait).epsilon(1e-12));
    }
}

TEST_CASE("[engine] replay rejects broken orders") {
    auto jobs = example_jobs();
    CHECK_THROWS_AS(replay_fixed_order(jobs, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(replay_fixed_order(jobs, {0, 1, 2, 3, 4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(replay_fixed_order(jobs, {0, 1, 2, 3, 4, 9}), std::invalid_argument);
}

TEST_CASE("[engine] swapped two-job order swaps the waits") {
    std::vector<Job> jobs = {make_job(0, 0.0, 2.0), make_job(1, 0.0, 3.0)};
    RunResult forward = replay_fixed_order(jobs, {0, 1});
    RunResult swapped = replay_fixed_order(jobs, {1, 0});
    CHECK(forward.records[0].wait == doctest::Approx(0.0));
    CHECK(forward.records[1].wait == doctest::Approx(2.0));
    CHECK(swapped.records[1].wait == doctest::Approx(0.0));
    CHECK(swapped.records[0].wait == doctest::Approx(3.0));
}

TEST_CASE("[engine] lone job finishes after its own duration") {
    std::vector<Job> jobs = {make_job(0, 0.0, 5.0)};
    FcfsPolicy fcfs;
    RunResult result = run(jobs, fcfs);
    CHECK(result.records[0].finish == doctest::Approx(5.0));
    CHECK(result.records[0].wait == doctest::Approx(0.0));
    CHECK(run({}, fcfs).records.empty());
}

TEST_CASE("[engine] work conservation and determinism on synthetic load") {
    auto jobs = generate({500, 0.04, 1.2, 0.3, false, 7});

    for (bool preemptive : {false, true}) {
        RunResult a, b;
        if (preemptive) {
            SrptPolicy p1, p2;
            a = run(jobs, p1, 1.0, 7);
            b = run(jobs, p2, 1.0, 7);
        } else {
            UdsuPolicy p1, p2;
            a = run(jobs, p1, {}, 7);
            b = run(jobs, p2, {}, 7);
        }
        CHECK(a.same_outcome(b));

        // Last finish = total work + total idle; with no idle overlap the
        // makespan bounds busy time, and every record carries full service.
        double total_work = 0.0;
        for (const Job& j : jobs) total_work += j.duration;
        double last_finish = 0.0;
        double sum_attained = 0.0;
        for (const auto& rec : a.records) {
            last_finish = std::max(last_finish, rec.finish);
            sum_attained += rec.attained;
            CHECK(rec.t_actual >= jobs[rec.job_id].duration - kTimeEps);
        }
        CHECK(sum_attained == doctest::Approx(total_work).epsilon(1e-9));
        CHECK(last_finish >= total_work / jobs.size());
    }
}

TEST_CASE("[engine] non-preemptive service is contiguous") {
    // Under FCFS each start time equals the previous finish or the arrival.
    auto jobs = generate({200, 0.04, 1.1, 0.0, false, 3});
    FcfsPolicy fcfs;
    RunResult result = run(jobs, fcfs);
    double prev_finish = 0.0;
    for (const auto& rec : result.records) {
        const double start = rec.finish - jobs[rec.job_id].duration;
        CHECK(start >= std::max(prev_finish, jobs[rec.job_id].arrival) - kTimeEps);
        prev_finish = rec.finish;
    }
}

TEST_CASE("[engine] preemptive slices add up to the full demand") {
    std::vector<Job> jobs = {make_job(0, 0.0, 4.0), make_job(1, 1.0, 1.0)};
    SrptPolicy srpt;
    RunResult result = run(jobs, srpt);
    // The short job preempts at t=1 and finishes at 2; the long one resumes.
    CHECK(result.records[1].finish == doctest::Approx(2.0));
    CHECK(result.records[0].finish == doctest::Approx(5.0));
    CHECK(result.records[0].attained == doctest::Approx(4.0));
}

TEST_CASE("[engine] completion at t frees the server for an arrival at t") {
    // Second job arrives exactly when the first finishes: no wait at all.
    std::vector<Job> jobs = {make_job(0, 0.0, 5.0), make_job(1, 5.0, 2.0)};
    FcfsPolicy fcfs;
    RunResult result = run(jobs, fcfs);
    CHECK(result.records[1].wait == doctest::Approx(0.0));
    CHECK(result.records[1].t_exp == doctest::Approx(2.0));
}

TEST_CASE("[engine] quantum required for slicing policies") {
    std::vector<Job> jobs = {make_job(0, 0.0, 5.0)};
    RoundRobinPolicy rr;
    CHECK_THROWS_AS(run(jobs, rr, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(run(jobs, rr, -1.0), std::invalid_argument);
    CHECK_NOTHROW(run(jobs, rr, 1.0));
}

TEST_CASE("[engine] ids must be arrival ranks") {
    std::vector<Job> jobs = {make_job(1, 0.0, 5.0), make_job(0, 1.0, 2.0)};
    FcfsPolicy fcfs;
    CHECK_THROWS_AS(run(jobs, fcfs), std::invalid_argument);
}
