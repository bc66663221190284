#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfsim/fixtures.hpp"
#include "mfsim/schedulers.hpp"
#include "mfsim/rng.hpp"
#include "oracle.hpp"

using namespace mfsim;

namespace {

// Drains the flows of the given metaflows and marks them finished.
void finish_metaflows(JobDag& dag, JobProgress& progress,
                      std::initializer_list<int> ids) {
  for (int id : ids) {
    for (int fid : dag.metaflow(id).flows) dag.flow(fid).size_remaining = 0.0;
    progress.finished_metaflows.insert(id);
  }
}

SchedulerState make_state(const Fabric& fabric, const std::vector<JobDag>& jobs,
                          const std::vector<JobProgress>& progress,
                          double now = 0.0) {
  return SchedulerState{&fabric, &jobs, &progress, now};
}

}  // namespace

TEST_CASE("metaflow gains on the staged job match hand arithmetic") {
  StagedJobFixture fx = staged_job_fixture();
  JobProgress fresh;
  fresh.released = true;

  SUBCASE("head metaflow is direct: unlocked load over remaining bytes") {
    Gain g = metaflow_gain(fx.job, 1, fresh);
    CHECK(g.kind == GainKind::kDirect);
    CHECK(g.value == 5.0 / 3.0);
  }
  SUBCASE("mid-chain metaflow is indirect: bytes blocking its consumer") {
    Gain g = metaflow_gain(fx.job, 3, fresh);
    CHECK(g.kind == GainKind::kIndirect);
    CHECK(g.value == 3.0 + 2.0);  // remaining of metaflows 1 and 3
  }
  SUBCASE("deepest metaflow counts every upstream byte") {
    Gain g = metaflow_gain(fx.job, 4, fresh);
    CHECK(g.kind == GainKind::kIndirect);
    CHECK(g.value == 3.0 + 5.0 + 2.0 + 4.0);
  }
  SUBCASE("finishing the last blocker turns a metaflow direct with cascade") {
    JobProgress late;
    late.released = true;
    finish_metaflows(fx.job, late, {1, 3, 4});
    late.finished_tasks = {1, 3};
    Gain g = metaflow_gain(fx.job, 2, late);
    CHECK(g.kind == GainKind::kDirect);
    CHECK(g.value == (4.0 + 2.0) / 5.0);
  }
  SUBCASE("a finished metaflow has no gain") {
    JobProgress done;
    done.released = true;
    finish_metaflows(fx.job, done, {1});
    CHECK_THROWS_AS(metaflow_gain(fx.job, 1, done), std::invalid_argument);
  }
}

TEST_CASE("direct gain equals unlocked load per remaining byte") {
  std::vector<ComputeTask> tasks{{1, 0, 6.0, {1}, {}}};
  std::vector<MetaflowSpec> mfs{{1, 1}};
  std::vector<Flow> flows{{1, 1, 1, 0, 2.0, 2.0}};
  JobDag dag = JobDag::build(1, 0.0, tasks, mfs, flows);
  JobProgress p;
  p.released = true;
  Gain g = metaflow_gain(dag, 1, p);
  CHECK(g.kind == GainKind::kDirect);
  CHECK(g.value == 3.0);
}

TEST_CASE("sort places direct gains first, descending, then indirect ascending") {
  std::vector<RankedMetaflow> v{
      {0, 1, 10, 0.0, {GainKind::kDirect, 2.0}},
      {0, 1, 11, 0.0, {GainKind::kIndirect, 1.0}},
      {0, 1, 12, 0.0, {GainKind::kDirect, 5.0}},
      {0, 1, 13, 0.0, {GainKind::kIndirect, 4.0}},
  };
  sort_metaflows(v);
  std::vector<int> ids;
  for (const RankedMetaflow& r : v) ids.push_back(r.metaflow_id);
  CHECK(ids == std::vector<int>{12, 10, 11, 13});
}

TEST_CASE("sort tie-breaks by release, then job, then metaflow id") {
  std::vector<RankedMetaflow> v{
      {0, 5, 2, 1.0, {GainKind::kDirect, 3.0}},
      {1, 4, 9, 0.5, {GainKind::kDirect, 3.0}},
      {2, 4, 1, 0.5, {GainKind::kDirect, 3.0}},
      {3, 2, 7, 0.5, {GainKind::kDirect, 3.0}},
  };
  sort_metaflows(v);
  CHECK(v[0].job_id == 2);
  CHECK(v[1].metaflow_id == 1);
  CHECK(v[2].metaflow_id == 9);
  CHECK(v[3].job_id == 5);
}

TEST_CASE("sort invariants hold on random inputs") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RankedMetaflow> v;
    int n = 1 + static_cast<int>(rng.next_below(12));
    for (int i = 0; i < n; ++i) {
      Gain g{rng.next_unit() < 0.5 ? GainKind::kDirect : GainKind::kIndirect,
             static_cast<double>(rng.next_below(4))};
      v.push_back({static_cast<int>(rng.next_below(3)),
                   static_cast<int>(rng.next_below(3)), i,
                   static_cast<double>(rng.next_below(2)), g});
    }
    sort_metaflows(v);
    bool seen_indirect = false;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].gain.kind == GainKind::kIndirect) seen_indirect = true;
      else CHECK_FALSE(seen_indirect);  // no direct after an indirect
      if (i + 1 < v.size() && v[i].gain.kind == v[i + 1].gain.kind) {
        if (v[i].gain.kind == GainKind::kDirect)
          CHECK(v[i].gain.value >= v[i + 1].gain.value);
        else
          CHECK(v[i].gain.value <= v[i + 1].gain.value);
      }
    }
  }
}

TEST_CASE("madd grants simultaneous-finish rates at the bottleneck horizon") {
  Fabric fabric = make_fabric(3);
  PortTable full = full_capacity(fabric);

  SUBCASE("single flow saturates its path") {
    std::vector<FlowPorts> flows{{0, 1, 3.0}};
    MaddResult r = madd_rates(flows, full);
    CHECK(r.gamma == doctest::Approx(3.0));
    CHECK(r.rates[0] == doctest::Approx(1.0));
  }
  SUBCASE("two flows into one ingress finish together") {
    std::vector<FlowPorts> flows{{0, 2, 3.0}, {1, 2, 1.0}};
    MaddResult r = madd_rates(flows, full);
    CHECK(r.gamma == doctest::Approx(4.0));
    CHECK(r.rates[0] == doctest::Approx(0.75));
    CHECK(r.rates[1] == doctest::Approx(0.25));
  }
  SUBCASE("reduced residual stretches the horizon") {
    PortTable res = full;
    res.ingress[2] = 0.5;
    std::vector<FlowPorts> flows{{0, 2, 3.0}, {1, 2, 1.0}};
    MaddResult r = madd_rates(flows, res);
    double want = oracle::min_group_horizon(flows, res, 100.0);
    CHECK(r.gamma == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.rates[0] == doctest::Approx(3.0 / want));
    CHECK(r.rates[1] == doctest::Approx(1.0 / want));
  }
  SUBCASE("a needed port with no residual blocks the whole group") {
    PortTable res = full;
    res.egress[1] = 0.0;
    std::vector<FlowPorts> flows{{0, 2, 3.0}, {1, 2, 1.0}};
    MaddResult r = madd_rates(flows, res);
    CHECK(r.blocked());
    CHECK(r.gamma == std::numeric_limits<double>::infinity());
    CHECK(r.rates.empty());
  }
  SUBCASE("contract violations throw") {
    CHECK_THROWS_AS(madd_rates({}, full), std::invalid_argument);
    std::vector<FlowPorts> drained{{0, 1, 0.0}};
    CHECK_THROWS_AS(madd_rates(drained, full), std::invalid_argument);
    std::vector<FlowPorts> outside{{0, 9, 1.0}};
    CHECK_THROWS_AS(madd_rates(outside, full), std::invalid_argument);
  }
}

TEST_CASE("madd is minimal and feasible on random groups") {
  Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    int machines = 2 + static_cast<int>(rng.next_below(4));
    Fabric fabric = make_fabric(machines);
    PortTable res = full_capacity(fabric);
    for (double& c : res.ingress) c = 0.05 + rng.next_unit();
    for (double& c : res.egress) c = 0.05 + rng.next_unit();
    int n = 1 + static_cast<int>(rng.next_below(6));
    std::vector<FlowPorts> flows;
    for (int i = 0; i < n; ++i)
      flows.push_back({static_cast<int>(rng.next_below(machines)),
                       static_cast<int>(rng.next_below(machines)),
                       0.1 + 3.0 * rng.next_unit()});
    MaddResult r = madd_rates(flows, res);
    REQUIRE_FALSE(r.blocked());

    // Every flow finishes exactly at gamma.
    for (size_t i = 0; i < flows.size(); ++i)
      CHECK(flows[i].remaining / r.rates[i] ==
            doctest::Approx(r.gamma).epsilon(1e-9));
    // Port usage within residuals.
    std::vector<double> eg(machines, 0.0), in(machines, 0.0);
    for (size_t i = 0; i < flows.size(); ++i) {
      eg[flows[i].src] += r.rates[i];
      in[flows[i].dst] += r.rates[i];
    }
    for (int m = 0; m < machines; ++m) {
      CHECK(eg[m] <= res.egress[m] + 1e-9);
      CHECK(in[m] <= res.ingress[m] + 1e-9);
    }
    // No smaller horizon is feasible.
    double want = oracle::min_group_horizon(flows, res, 1e5);
    CHECK(r.gamma == doctest::Approx(want).epsilon(1e-7));
    CHECK_FALSE(oracle::group_feasible_within(flows, res, r.gamma * 0.999));
  }
}

TEST_CASE("metaflow scheduling follows gain priority") {
  StagedJobFixture fx = staged_job_fixture();
  std::vector<JobDag> jobs{fx.job};
  std::vector<JobProgress> progress(1);
  progress[0].released = true;
  ScheduleDecision d = msa_schedule(make_state(fx.fabric, jobs, progress));

  // Priority: MF1 direct 5/3, MF2 direct 4/5, then indirect MF3 (5), MF4 (14).
  REQUIRE(d.ordered.size() == 4);
  CHECK(d.ordered[0].metaflow_id == 1);
  CHECK(d.ordered[1].metaflow_id == 2);
  CHECK(d.ordered[2].metaflow_id == 3);
  CHECK(d.ordered[3].metaflow_id == 4);

  // MF1 saturates ingress 4 and MF2 ingress 5; MF3 and MF4 are blocked.
  // Flow order: ids 1..8 at positions 0..7.
  CHECK(d.allocation.rates[0] == doctest::Approx(1.0 / 3.0));
  CHECK(d.allocation.rates[1] == doctest::Approx(2.0 / 3.0));
  CHECK(d.allocation.rates[2] == doctest::Approx(0.4));
  CHECK(d.allocation.rates[3] == doctest::Approx(0.6));
  CHECK(d.allocation.rates[4] == 0.0);
  CHECK(d.allocation.rates[5] == 0.0);
  CHECK(d.allocation.rates[6] == 0.0);
  CHECK(d.allocation.rates[7] == 0.0);
}

TEST_CASE("unreleased jobs are invisible to schedulers") {
  StagedJobFixture fx = staged_job_fixture();
  std::vector<JobDag> jobs{fx.job};
  std::vector<JobProgress> progress(1);  // not released
  for (SchedulerKind kind :
       {SchedulerKind::kMsa, SchedulerKind::kVarys, SchedulerKind::kFair}) {
    ScheduleDecision d = schedule(kind, make_state(fx.fabric, jobs, progress));
    CHECK(d.ordered.empty());
    for (double r : d.allocation.rates) CHECK(r == 0.0);
  }
}

TEST_CASE("later groups run on what earlier grants left behind") {
  // Gains: job 2 direct 1/2, job 1 direct 1/4. Job 2's pair takes half of
  // egress 0; job 1's flow then stretches over the remaining half.
  Fabric fabric = make_fabric(4);
  std::vector<ComputeTask> ta{{1, 1, 1.0, {1}, {}}};
  std::vector<MetaflowSpec> ma{{1, 1}};
  std::vector<Flow> fa{{1, 1, 0, 1, 4.0, 4.0}};
  JobDag a = JobDag::build(1, 0.0, ta, ma, fa);

  std::vector<ComputeTask> tb{{1, 2, 1.0, {1}, {}}};
  std::vector<MetaflowSpec> mb{{1, 1}};
  std::vector<Flow> fb{{1, 1, 0, 2, 1.0, 1.0}, {2, 1, 3, 2, 1.0, 1.0}};
  JobDag b = JobDag::build(2, 0.0, tb, mb, fb);

  std::vector<JobDag> jobs{a, b};
  std::vector<JobProgress> progress(2);
  progress[0].released = progress[1].released = true;

  ScheduleDecision d = msa_schedule(make_state(fabric, jobs, progress));
  CHECK(d.ordered[0].job_id == 2);
  CHECK(d.allocation.rates[1] == doctest::Approx(0.5));
  CHECK(d.allocation.rates[2] == doctest::Approx(0.5));
  CHECK(d.allocation.rates[0] == doctest::Approx(0.5));
}

TEST_CASE("work conservation grants leftovers in priority order") {
  // Two single-flow metaflows of one job share an egress; the first
  // saturates it, the second is blocked. A third job's flow on untouched
  // ports picks up bandwidth only when work conservation is on.
  Fabric fabric = make_fabric(5);
  std::vector<ComputeTask> t1{{1, 1, 9.0, {1}, {}}, {2, 2, 1.0, {2}, {}}};
  std::vector<MetaflowSpec> m1{{1, 1}, {2, 2}};
  std::vector<Flow> f1{{1, 1, 0, 1, 1.0, 1.0}, {2, 2, 0, 2, 8.0, 8.0}};
  JobDag j1 = JobDag::build(1, 0.0, t1, m1, f1);

  std::vector<ComputeTask> t2{{1, 4, 1.0, {1}, {}}};
  std::vector<MetaflowSpec> m2{{1, 1}};
  std::vector<Flow> f2{{1, 1, 0, 4, 2.0, 2.0}, {2, 1, 3, 4, 2.0, 2.0}};
  JobDag j2 = JobDag::build(2, 0.0, t2, m2, f2);

  std::vector<JobDag> jobs{j1, j2};
  std::vector<JobProgress> progress(2);
  progress[0].released = progress[1].released = true;
  SchedulerState state = make_state(fabric, jobs, progress);

  // Gains: j1/mf1 direct 9, j1/mf2 direct 0.125, j2/mf1 direct 0.25.
  ScheduleDecision off = msa_schedule(state, {false});
  CHECK(off.allocation.rates[0] == doctest::Approx(1.0));  // j1 mf1
  // j2 group: egress 0 exhausted -> blocked entirely.
  CHECK(off.allocation.rates[2] == 0.0);
  CHECK(off.allocation.rates[3] == 0.0);
  // j1 mf2 also blocked on egress 0.
  CHECK(off.allocation.rates[1] == 0.0);

  ScheduleDecision on = msa_schedule(state, {true});
  CHECK(on.allocation.rates[0] == doctest::Approx(1.0));
  CHECK(on.allocation.rates[2] == 0.0);                   // still stuck
  CHECK(on.allocation.rates[3] == doctest::Approx(1.0));  // free path used
}

TEST_CASE("equal-gain metaflows of one job are granted as one group") {
  // Hard barrier: all metaflows share the same indirect gain, so the
  // decision must equal one simultaneous-finish assignment over every flow.
  Fabric fabric = make_fabric(4);
  std::vector<ComputeTask> tasks{{1, 2, 1.0, {1, 2}, {}}, {2, 3, 1.0, {1, 2}, {}}};
  std::vector<MetaflowSpec> mfs{{1, 1}, {2, 2}};
  std::vector<Flow> flows{{1, 1, 0, 2, 2.0, 2.0},
                          {2, 1, 1, 2, 2.0, 2.0},
                          {3, 2, 0, 3, 2.0, 2.0},
                          {4, 2, 1, 3, 2.0, 2.0}};
  JobDag dag = JobDag::build(1, 0.0, tasks, mfs, flows);
  std::vector<JobDag> jobs{dag};
  std::vector<JobProgress> progress(1);
  progress[0].released = true;

  ScheduleDecision d = msa_schedule(make_state(fabric, jobs, progress));
  std::vector<FlowPorts> all = snapshot_flows(jobs);
  MaddResult joint = madd_rates(all, full_capacity(fabric));
  REQUIRE(d.allocation.rates.size() == joint.rates.size());
  for (size_t i = 0; i < joint.rates.size(); ++i)
    CHECK(d.allocation.rates[i] == joint.rates[i]);
}

TEST_CASE("coflow baseline orders jobs by effective bottleneck") {
  MotivationFixture fx = motivation_fixture();
  std::vector<JobProgress> progress(2);
  progress[0].released = progress[1].released = true;
  ScheduleDecision d = varys_schedule(make_state(fx.fabric, fx.jobs, progress));

  REQUIRE(d.ordered.size() == 2);
  CHECK(d.ordered[0].job_id == 1);  // bottleneck 3 before bottleneck 4
  CHECK(d.ordered[1].job_id == 2);
  CHECK(d.ordered[0].metaflow_id == -1);
  CHECK(d.ordered[0].gain.value == doctest::Approx(3.0));
  CHECK(d.ordered[1].gain.value == doctest::Approx(4.0));

  // Job 1 saturates egress 1 / ingress 0; job 2's group is blocked (its
  // 1->2 flow has no egress left) but backfill drives the 0->2 flow.
  CHECK(d.allocation.rates[0] == doctest::Approx(1.0));
  CHECK(d.allocation.rates[1] == 0.0);
  CHECK(d.allocation.rates[2] == doctest::Approx(1.0));
}

TEST_CASE("coflow baseline matches pure simultaneous finish for one coflow") {
  Fabric fabric = make_fabric(3);
  std::vector<ComputeTask> tasks{{1, 2, 1.0, {1}, {}}};
  std::vector<MetaflowSpec> mfs{{1, 1}};
  std::vector<Flow> flows{{1, 1, 0, 2, 3.0, 3.0}, {2, 1, 1, 2, 1.0, 1.0}};
  JobDag dag = JobDag::build(1, 0.0, tasks, mfs, flows);
  std::vector<JobDag> jobs{dag};
  std::vector<JobProgress> progress(1);
  progress[0].released = true;

  ScheduleDecision d = varys_schedule(make_state(fabric, jobs, progress));
  // Ingress 2 is everyone's bottleneck; backfill finds no two-sided slack.
  CHECK(d.allocation.rates[0] == doctest::Approx(0.75));
  CHECK(d.allocation.rates[1] == doctest::Approx(0.25));
}

TEST_CASE("fair sharing is max-min") {
  Fabric fabric = make_fabric(6);

  SUBCASE("two flows out of one machine split it") {
    std::vector<ComputeTask> tasks{{1, 1, 1.0, {1, 2}, {}}};
    std::vector<MetaflowSpec> mfs{{1, 1}, {2, 1}};
    std::vector<Flow> flows{{1, 1, 0, 1, 5.0, 5.0}, {2, 2, 0, 2, 5.0, 5.0}};
    JobDag dag = JobDag::build(1, 0.0, tasks, mfs, flows);
    std::vector<JobDag> jobs{dag};
    std::vector<JobProgress> progress(1);
    progress[0].released = true;
    ScheduleDecision d = fair_schedule(make_state(fabric, jobs, progress));
    CHECK(d.allocation.rates[0] == doctest::Approx(0.5));
    CHECK(d.allocation.rates[1] == doctest::Approx(0.5));
  }

  SUBCASE("an unconstrained flow keeps filling after others freeze") {
    std::vector<ComputeTask> tasks{{1, 1, 1.0, {1, 2, 3}, {}}};
    std::vector<MetaflowSpec> mfs{{1, 1}, {2, 1}, {3, 1}};
    std::vector<Flow> flows{{1, 1, 0, 1, 5.0, 5.0},
                            {2, 2, 0, 2, 5.0, 5.0},
                            {3, 3, 3, 2, 5.0, 5.0},
                            {4, 3, 4, 5, 5.0, 5.0}};
    JobDag dag = JobDag::build(1, 0.0, tasks, mfs, flows);
    std::vector<JobDag> jobs{dag};
    std::vector<JobProgress> progress(1);
    progress[0].released = true;
    ScheduleDecision d = fair_schedule(make_state(fabric, jobs, progress));
    CHECK(d.allocation.rates[0] == doctest::Approx(0.5));
    CHECK(d.allocation.rates[1] == doctest::Approx(0.5));
    CHECK(d.allocation.rates[2] == doctest::Approx(0.5));
    CHECK(d.allocation.rates[3] == doctest::Approx(1.0));
  }
}

TEST_CASE("schedulers produce valid allocations on random states") {
  Rng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    int machines = 3 + static_cast<int>(rng.next_below(4));
    Fabric fabric = make_fabric(machines);
    int n_jobs = 1 + static_cast<int>(rng.next_below(3));
    std::vector<JobDag> jobs;
    std::vector<JobProgress> progress;
    for (int j = 0; j < n_jobs; ++j) {
      JobDag dag = oracle::random_job(rng, j + 1, machines);
      JobProgress p;
      p.released = rng.next_unit() < 0.85;
      if (p.released) {
        oracle::ProgressSample ps = oracle::random_progress(rng, dag);
        p.finished_metaflows = ps.finished_metaflows;
        p.finished_tasks = ps.finished_tasks;
      }
      jobs.push_back(std::move(dag));
      progress.push_back(std::move(p));
    }
    SchedulerState state = make_state(fabric, jobs, progress);
    std::vector<FlowPorts> snap = snapshot_flows(jobs);
    for (SchedulerKind kind :
         {SchedulerKind::kMsa, SchedulerKind::kVarys, SchedulerKind::kFair}) {
      for (bool wc : {false, true}) {
        ScheduleDecision d = schedule(kind, state, {wc});
        ValidationReport r = validate_allocation(fabric, d.allocation, snap);
        CHECK(r.ok());
        // Flows of unreleased jobs stay silent.
        FlowIndex index(jobs);
        for (size_t ji = 0; ji < jobs.size(); ++ji) {
          if (progress[ji].released) continue;
          for (size_t pos = 0; pos < jobs[ji].flows().size(); ++pos)
            CHECK(d.allocation.rates[index.global_of(
                      static_cast<int>(ji), static_cast<int>(pos))] == 0.0);
        }
      }
    }
  }
}

TEST_CASE("fair sharing satisfies the max-min certificate on random states") {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    int machines = 3 + static_cast<int>(rng.next_below(4));
    Fabric fabric = make_fabric(machines);
    std::vector<JobDag> jobs{oracle::random_job(rng, 1, machines, 4, 4)};
    std::vector<JobProgress> progress(1);
    progress[0].released = true;
    ScheduleDecision d = fair_schedule(make_state(fabric, jobs, progress));
    std::vector<FlowPorts> snap = snapshot_flows(jobs);
    CHECK(oracle::is_max_min_allocation(fabric, snap, d.allocation.rates));
  }
}

TEST_CASE("scaling all flow sizes leaves priorities and rates unchanged") {
  for (double scale : {0.25, 4.0, 1024.0}) {
    StagedJobFixture fx = staged_job_fixture();
    StagedJobFixture scaled = staged_job_fixture();
    for (const Flow& f : fx.job.flows()) {
      Flow& g = scaled.job.flow(f.id);
      g.size_total = f.size_total * scale;
      g.size_remaining = f.size_remaining * scale;
    }
    std::vector<JobDag> a{fx.job}, b{scaled.job};
    std::vector<JobProgress> progress(1);
    progress[0].released = true;
    ScheduleDecision da = msa_schedule(make_state(fx.fabric, a, progress));
    ScheduleDecision db = msa_schedule(make_state(fx.fabric, b, progress));
    REQUIRE(da.ordered.size() == db.ordered.size());
    for (size_t i = 0; i < da.ordered.size(); ++i) {
      CHECK(da.ordered[i].metaflow_id == db.ordered[i].metaflow_id);
      CHECK(da.ordered[i].gain.kind == db.ordered[i].gain.kind);
    }
    for (size_t i = 0; i < da.allocation.rates.size(); ++i)
      CHECK(da.allocation.rates[i] ==
            doctest::Approx(db.allocation.rates[i]).epsilon(1e-12));
  }
}

TEST_CASE("scheduler names round-trip") {
  for (SchedulerKind k :
       {SchedulerKind::kMsa, SchedulerKind::kVarys, SchedulerKind::kFair})
    CHECK(scheduler_from_name(scheduler_name(k)) == k);
  CHECK_THROWS_AS(scheduler_from_name("sebf"), std::invalid_argument);
}
