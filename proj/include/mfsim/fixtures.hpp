#pragma once

#include <vector>

#include "mfsim/fabric.hpp"
#include "mfsim/model.hpp"

namespace mfsim {

// Hand-sized instance where coflow-level scheduling (smallest bottleneck
// first plus backfill) and gain-sorted metaflow scheduling trade places:
// the coflow baseline reaches average communication time 3.5 but average
// job completion 8.0, while metaflow scheduling gives 4.0 and 7.0. Used by
// the `motivation` CLI command and the golden engine tests.
//
// Three machines, unit ports. Job 1: one 3-unit flow (1 -> 0) feeding a
// load-3 task on machine 0. Job 2: a 1-unit flow (1 -> 2) feeding load-3
// task t21, and a 3-unit flow (0 -> 2) feeding load-3 task t22 which also
// waits for t21. Both jobs release at t=0.
struct MotivationFixture {
  Fabric fabric;
  std::vector<JobDag> jobs;
  // Published aggregates the instance is built to reproduce.
  double varys_avg_cct = 3.5;
  double varys_avg_jct = 8.0;
  double msa_avg_cct = 4.0;
  double msa_avg_jct = 7.0;
};

MotivationFixture motivation_fixture();

// One job with four metaflows feeding a staged task chain: c1 and c3 share a
// machine, c3 waits for c1, c4 waits for c2 and c3. Exercises direct and
// indirect gain arithmetic at interesting progress states.
//
// Flows (id: metaflow, src -> dst, size): 1: MF1 0->4 1, 2: MF1 1->4 2,
// 3: MF2 2->5 2, 4: MF2 3->5 3, 5: MF3 0->4 1, 6: MF3 1->4 1,
// 7: MF4 2->5 2, 8: MF4 3->5 2. Tasks (id, machine, load): c1 4 5,
// c2 5 4, c3 4 6, c4 5 2.
struct StagedJobFixture {
  Fabric fabric;
  JobDag job;
};

StagedJobFixture staged_job_fixture();

}  // namespace mfsim
