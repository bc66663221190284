#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfsim/fabric.hpp"
#include "mfsim/model.hpp"
#include "mfsim/schedulers.hpp"

namespace mfsim {

enum class EventKind { kJobRelease, kFlowComplete, kMetaflowComplete, kTaskComplete };

std::string_view event_kind_name(EventKind kind);

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::kJobRelease;
  int job_id = 0;
  int entity_id = 0;  // flow/metaflow/task id; repeats job_id for releases

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct FlowRecord {
  int job_id = 0;
  int flow_id = 0;
  double completion = 0.0;  // relative to job release
  double delivered = 0.0;   // bytes actually transferred

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct MetaflowRecord {
  int job_id = 0;
  int metaflow_id = 0;
  double completion = 0.0;  // relative to job release

  friend bool operator==(const MetaflowRecord&, const MetaflowRecord&) = default;
};

struct JobRecord {
  int job_id = 0;
  double release = 0.0;
  double cct = 0.0;  // last flow completion, relative to release
  double jct = 0.0;  // last task completion, relative to release

  friend bool operator==(const JobRecord&, const JobRecord&) = default;
};

struct SimReport {
  std::vector<JobRecord> per_job;            // in input job order
  std::vector<FlowRecord> per_flow;          // in completion order
  std::vector<MetaflowRecord> per_metaflow;  // in completion order
  double avg_cct = 0.0;
  double avg_jct = 0.0;
  std::vector<SimEvent> events;  // filled when RunOptions::record_events

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// Called once per inter-event interval with the allocation active on it and
// the flow snapshot (FlowIndex order, remaining sizes at interval start).
using IntervalObserver = std::function<void(
    double t0, double t1, const RateAllocation&, std::span<const FlowPorts>)>;

struct RunOptions {
  SchedulerKind scheduler = SchedulerKind::kMsa;
  bool work_conserving = false;
  bool record_events = false;
  IntervalObserver interval_observer;
};

// Fluid simulation to quiescence: continuous time, rates held constant
// between events, a fresh scheduling decision at every event instant (job
// release, flow/metaflow completion, task completion). Flows are clamped to
// finished once within kEps * size_total of done. Compute tasks run serially
// per machine in (ready time, job id, task id) order. Deterministic for
// identical inputs. Throws std::runtime_error naming stuck entities when no
// further progress is possible.
SimReport run(std::vector<JobDag> jobs, const Fabric& fabric,
              const RunOptions& opts = {});

}  // namespace mfsim
