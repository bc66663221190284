#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mfsim/fabric.hpp"
#include "mfsim/model.hpp"

namespace mfsim {

// Live progress of one job inside a run.
struct JobProgress {
  bool released = false;
  std::set<int> finished_metaflows;
  std::set<int> finished_tasks;
};

// Read-only view a scheduler decides from. jobs carries live remaining
// sizes; progress parallels jobs.
struct SchedulerState {
  const Fabric* fabric = nullptr;
  const std::vector<JobDag>* jobs = nullptr;
  const std::vector<JobProgress>* progress = nullptr;
  double now = 0.0;
};

// Priority of one unfinished metaflow in the given progress state. Direct
// when finishing it alone unlocks tasks (unlocked load per remaining byte);
// otherwise indirect (bytes still owed across the consumer's ancestor
// metaflows, itself included). Throws std::invalid_argument for a finished
// metaflow.
Gain metaflow_gain(const JobDag& dag, int metaflow_id,
                   const JobProgress& progress);

struct RankedMetaflow {
  int job_index = 0;    // position in SchedulerState::jobs
  int job_id = 0;
  int metaflow_id = 0;  // -1 when the entry stands for a whole job's flows
  double release_time = 0.0;
  Gain gain;
};

// Direct entries first, by descending value; then indirect entries by
// ascending value. Ties broken by release time, then job id, then metaflow
// id. Stable and deterministic.
void sort_metaflows(std::vector<RankedMetaflow>& entries);

struct MaddResult {
  double gamma = 0.0;         // shared completion horizon; +inf when blocked
  std::vector<double> rates;  // parallel to the input span; empty when blocked

  bool blocked() const { return rates.empty(); }
};

// Minimal-bandwidth simultaneous finish: every listed flow completes exactly
// at gamma, the tightest horizon any port (or any single flow's port pair)
// permits under the given residual capacities. If any needed port has
// residual <= kEps the group is blocked and gets no bandwidth this round.
// Flows must have remaining > 0.
MaddResult madd_rates(std::span<const FlowPorts> flows,
                      const PortTable& residual);

struct ScheduleDecision {
  RateAllocation allocation;  // FlowIndex order over SchedulerState::jobs
  // What the scheduler ranked, in assignment order (diagnostic output).
  std::vector<RankedMetaflow> ordered;
};

struct ScheduleOptions {
  // After priority assignment, hand leftover port bandwidth to active flows
  // in priority order. Applies to metaflow scheduling; the coflow baseline
  // backfills unconditionally.
  bool work_conserving = false;
};

// Gain-sorted metaflow scheduling: rank with metaflow_gain, then walk the
// order granting each group its simultaneous-finish rates against what
// bandwidth is left. Adjacent entries of one job with identical gain are
// granted as a single group, so equal-priority metaflows (a barrier stage)
// share the fabric the way one coflow would.
ScheduleDecision msa_schedule(const SchedulerState& state,
                              const ScheduleOptions& opts = {});

// Coflow baseline: jobs ordered by smallest effective bottleneck (over full
// port capacity), each granted simultaneous-finish rates for all its
// remaining flows, then unconditional backfill of leftover bandwidth.
ScheduleDecision varys_schedule(const SchedulerState& state,
                                const ScheduleOptions& opts = {});

// Per-flow max-min fairness via progressive filling; ignores job structure.
ScheduleDecision fair_schedule(const SchedulerState& state,
                               const ScheduleOptions& opts = {});

enum class SchedulerKind { kMsa, kVarys, kFair };

SchedulerKind scheduler_from_name(std::string_view name);  // msa|varys|fair
std::string_view scheduler_name(SchedulerKind kind);

ScheduleDecision schedule(SchedulerKind kind, const SchedulerState& state,
                          const ScheduleOptions& opts = {});

}  // namespace mfsim
