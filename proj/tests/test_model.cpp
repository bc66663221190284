#include <doctest.h>

#include <set>
#include <stdexcept>

#include "mfsim/fixtures.hpp"
#include "mfsim/model.hpp"
#include "mfsim/rng.hpp"
#include "oracle.hpp"

using namespace mfsim;

namespace {

JobDag tiny_job() {
  std::vector<ComputeTask> tasks{{1, 0, 2.0, {1}, {}}};
  std::vector<MetaflowSpec> metaflows{{1, 1}};
  std::vector<Flow> flows{{1, 1, 1, 0, 4.0, 4.0}};
  return JobDag::build(9, 0.0, tasks, metaflows, flows);
}

}  // namespace

TEST_CASE("build accepts a minimal job and fills derived fields") {
  JobDag dag = tiny_job();
  CHECK(dag.id() == 9);
  CHECK(dag.tasks().size() == 1);
  CHECK(dag.metaflow(1).flows == std::vector<int>{1});
  CHECK(dag.flow(1).size_remaining == 4.0);
  CHECK(dag.has_task(1));
  CHECK_FALSE(dag.has_task(2));
  CHECK_THROWS_AS(dag.task(3), std::invalid_argument);
}

TEST_CASE("build rejects malformed jobs") {
  std::vector<MetaflowSpec> mfs{{1, 1}};
  std::vector<Flow> fl{{1, 1, 0, 1, 1.0, 1.0}};

  SUBCASE("cycle in task deps") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {2}}, {2, 0, 1.0, {}, {1}}};
    CHECK_THROWS_WITH_AS(JobDag::build(1, 0.0, tasks, mfs, fl),
                         doctest::Contains("cycle"), std::invalid_argument);
  }
  SUBCASE("self dependency") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {1}}};
    CHECK_THROWS_AS(JobDag::build(1, 0.0, tasks, mfs, fl),
                    std::invalid_argument);
  }
  SUBCASE("metaflow without flows") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {}}};
    std::vector<MetaflowSpec> two{{1, 1}, {2, 1}};
    CHECK_THROWS_WITH_AS(JobDag::build(1, 0.0, tasks, two, fl),
                         doctest::Contains("no flows"), std::invalid_argument);
  }
  SUBCASE("flow pointing at a missing metaflow") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {}, {}}};
    std::vector<Flow> bad{{1, 7, 0, 1, 1.0, 1.0}};
    CHECK_THROWS_AS(JobDag::build(1, 0.0, tasks, mfs, bad),
                    std::invalid_argument);
  }
  SUBCASE("metaflow consumed by a missing task") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {}, {}}};
    std::vector<MetaflowSpec> bad{{1, 5}};
    CHECK_THROWS_AS(JobDag::build(1, 0.0, tasks, bad, fl),
                    std::invalid_argument);
  }
  SUBCASE("duplicate ids") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {}}, {1, 0, 1.0, {}, {}}};
    CHECK_THROWS_WITH_AS(JobDag::build(1, 0.0, tasks, mfs, fl),
                         doctest::Contains("duplicate"), std::invalid_argument);
  }
  SUBCASE("non-positive flow size") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {}}};
    std::vector<Flow> bad{{1, 1, 0, 1, 0.0, 0.0}};
    CHECK_THROWS_AS(JobDag::build(1, 0.0, tasks, mfs, bad),
                    std::invalid_argument);
  }
  SUBCASE("negative release") {
    std::vector<ComputeTask> tasks{{1, 0, 1.0, {1}, {}}};
    CHECK_THROWS_AS(JobDag::build(1, -1.0, tasks, mfs, fl),
                    std::invalid_argument);
  }
}

TEST_CASE("a consumer always waits for the metaflow it consumes") {
  // Task 1 consumes metaflow 1 but does not list it; build adds it.
  std::vector<ComputeTask> tasks{{1, 0, 1.0, {}, {}}};
  std::vector<MetaflowSpec> mfs{{1, 1}};
  std::vector<Flow> fl{{1, 1, 0, 1, 1.0, 1.0}};
  JobDag dag = JobDag::build(1, 0.0, tasks, mfs, fl);
  CHECK(dag.task(1).metaflow_deps == std::vector<int>{1});
}

TEST_CASE("ancestor_metaflows walks the whole upstream chain") {
  StagedJobFixture fx = staged_job_fixture();
  CHECK(ancestor_metaflows(fx.job, 1) == std::set<int>{1});
  CHECK(ancestor_metaflows(fx.job, 2) == std::set<int>{2});
  CHECK(ancestor_metaflows(fx.job, 3) == std::set<int>{1, 3});
  CHECK(ancestor_metaflows(fx.job, 4) == std::set<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(ancestor_metaflows(fx.job, 99), std::invalid_argument);
}

TEST_CASE("unlockable_tasks golden cases on the staged job") {
  StagedJobFixture fx = staged_job_fixture();
  const JobDag& dag = fx.job;

  SUBCASE("fresh state: each head metaflow unlocks only its consumer") {
    CHECK(unlockable_tasks(dag, 1, {}, {}) == std::set<int>{1});
    CHECK(unlockable_tasks(dag, 2, {}, {}) == std::set<int>{2});
    // c3 also needs task c1, which nothing finishes.
    CHECK(unlockable_tasks(dag, 3, {}, {}).empty());
    CHECK(unlockable_tasks(dag, 4, {}, {}).empty());
  }

  SUBCASE("late state: finishing the last metaflow cascades") {
    std::set<int> fin_mf{1, 3, 4};
    std::set<int> fin_tasks{1, 3};
    CHECK(unlockable_tasks(dag, 2, fin_mf, fin_tasks) == std::set<int>{2, 4});
  }

  SUBCASE("already-startable unfinished tasks are included") {
    // Metaflow 1 finished but c1 still running: evaluating metaflow 3 sees
    // c1 startable, so c3 becomes reachable through the cascade.
    std::set<int> fin_mf{1};
    CHECK(unlockable_tasks(dag, 3, fin_mf, {}) == std::set<int>{1, 3});
  }

  SUBCASE("finished tasks never reappear") {
    std::set<int> fin_mf{1};
    std::set<int> fin_tasks{1};
    CHECK(unlockable_tasks(dag, 3, fin_mf, fin_tasks) == std::set<int>{3});
  }

  CHECK_THROWS_AS(unlockable_tasks(dag, 42, {}, {}), std::invalid_argument);
}

TEST_CASE("unlockable_tasks matches the naive fixpoint oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    JobDag dag = oracle::random_job(rng, trial, 4);
    oracle::ProgressSample ps = oracle::random_progress(rng, dag);
    for (const Metaflow& mf : dag.metaflows()) {
      std::set<int> got = unlockable_tasks(dag, mf.id, ps.finished_metaflows,
                                           ps.finished_tasks);
      std::set<int> want = oracle::unlockable_tasks_naive(
          dag, mf.id, ps.finished_metaflows, ps.finished_tasks);
      CHECK(got == want);
    }
  }
}

TEST_CASE("remaining_size tracks live flow state") {
  StagedJobFixture fx = staged_job_fixture();
  CHECK(remaining_size(fx.job, 1) == 3.0);
  CHECK(remaining_size(fx.job, 2) == 5.0);
  fx.job.flow(2).size_remaining = 0.5;
  CHECK(remaining_size(fx.job, 1) == 1.5);
  fx.job.flow(1).size_remaining = 0.0;
  fx.job.flow(2).size_remaining = 0.0;
  CHECK(remaining_size(fx.job, 1) == 0.0);
  CHECK(metaflow_finished(fx.job, 1));
  CHECK_FALSE(metaflow_finished(fx.job, 2));
  CHECK_THROWS_AS(remaining_size(fx.job, 42), std::invalid_argument);
}

TEST_CASE("FlowIndex maps between global and per-job positions") {
  MotivationFixture fx = motivation_fixture();
  FlowIndex index(fx.jobs);
  CHECK(index.total() == 3);
  CHECK(index.global_of(0, 0) == 0);
  CHECK(index.global_of(1, 0) == 1);
  CHECK(index.global_of(1, 1) == 2);
  for (int g = 0; g < index.total(); ++g) {
    FlowIndex::Ref r = index.ref_of(g);
    CHECK(index.global_of(r.job_index, r.flow_pos) == g);
  }
  std::vector<FlowPorts> snap = snapshot_flows(fx.jobs);
  REQUIRE(snap.size() == 3);
  CHECK(snap[0].remaining == 3.0);
  CHECK(snap[1].remaining == 1.0);
  CHECK(snap[2].remaining == 3.0);
}
