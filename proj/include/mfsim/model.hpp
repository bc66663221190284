#pragma once

#include <set>
#include <span>
#include <vector>

#include "mfsim/fabric.hpp"

namespace mfsim {

// One point-to-point transfer. size_remaining is live simulation state; the
// rest is fixed when the job is built.
struct Flow {
  int id = 0;
  int metaflow = 0;
  int src = 0;
  int dst = 0;
  double size_total = 0.0;
  double size_remaining = 0.0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

// The schedulable unit: the group of flows consumed by one compute task.
struct Metaflow {
  int id = 0;
  int consumer_task = 0;
  std::vector<int> flows;  // member flow ids, ascending

  friend bool operator==(const Metaflow&, const Metaflow&) = default;
};

struct ComputeTask {
  int id = 0;
  int machine = 0;
  double load = 0.0;              // execution time once started
  std::vector<int> metaflow_deps;  // ascending
  std::vector<int> task_deps;      // ascending

  friend bool operator==(const ComputeTask&, const ComputeTask&) = default;
};

// Metaflow as given to build(); the member flow list is derived from
// Flow::metaflow.
struct MetaflowSpec {
  int id = 0;
  int consumer_task = 0;
};

// A job: compute tasks wired into a DAG, metaflows feeding them, and the
// flows that make the metaflows up. Validated on construction, after which
// only flow remaining sizes change.
class JobDag {
 public:
  // Checks referential integrity and structure. Throws std::invalid_argument
  // on: duplicate ids, metaflow with no flows or a missing consumer task,
  // flow referencing a missing metaflow, flow with size <= 0, dangling
  // dependency ids, or a cycle among task_deps. Dependency lists are
  // deduplicated and sorted; a metaflow missing from its own consumer's
  // metaflow_deps is added there, so a task never starts before the data it
  // consumes has arrived.
  static JobDag build(int job_id, double release_time,
                      std::vector<ComputeTask> tasks,
                      std::vector<MetaflowSpec> metaflows,
                      std::vector<Flow> flows);

  int id() const { return job_; }
  double release_time() const { return release_; }

  const std::vector<ComputeTask>& tasks() const { return tasks_; }
  const std::vector<Metaflow>& metaflows() const { return metaflows_; }
  const std::vector<Flow>& flows() const { return flows_; }

  const ComputeTask& task(int id) const;
  const Metaflow& metaflow(int id) const;
  const Flow& flow(int id) const;
  Flow& flow(int id);

  bool has_task(int id) const;
  bool has_metaflow(int id) const;

  friend bool operator==(const JobDag&, const JobDag&) = default;

 private:
  int job_ = 0;
  double release_ = 0.0;
  std::vector<ComputeTask> tasks_;     // sorted by id
  std::vector<Metaflow> metaflows_;    // sorted by id
  std::vector<Flow> flows_;            // sorted by id
};

// Every metaflow that must be finished before task_id may start: the
// metaflow_deps of the task itself and of all tasks reachable upward through
// task_deps. Throws std::invalid_argument on unknown task.
std::set<int> ancestor_metaflows(const JobDag& dag, int task_id);

// Tasks whose start is unlocked by finishing metaflow_id alone: the largest
// set D of unfinished tasks such that each member's prerequisites are all
// covered by finished_metaflows + the argument metaflow, and by
// finished_tasks + other members of D. Already-startable unfinished tasks are
// included. Throws std::invalid_argument on unknown metaflow.
std::set<int> unlockable_tasks(const JobDag& dag, int metaflow_id,
                               const std::set<int>& finished_metaflows,
                               const std::set<int>& finished_tasks);

// Sum of member flows' size_remaining.
double remaining_size(const JobDag& dag, int metaflow_id);

// A metaflow counts as finished once its remaining bytes are within kEps of
// zero (the engine clamps drained flows to exactly zero).
bool metaflow_finished(const JobDag& dag, int metaflow_id);

// Scheduling priority of a metaflow. Direct gain is compute load unlocked
// per unit of data still to send; indirect gain is the data volume standing
// between the consumer and execution (lower is better).
enum class GainKind { kDirect, kIndirect };

struct Gain {
  GainKind kind = GainKind::kIndirect;
  double value = 0.0;

  friend bool operator==(const Gain&, const Gain&) = default;
};

// Dense global numbering of the flows of a fixed job list, in (job position,
// flow id) order. Rate allocations for a multi-job state use this order.
class FlowIndex {
 public:
  explicit FlowIndex(std::span<const JobDag> jobs);

  int total() const { return total_; }
  int global_of(int job_index, int flow_pos) const {
    return offsets_[job_index] + flow_pos;
  }

  struct Ref {
    int job_index = 0;
    int flow_pos = 0;  // position within JobDag::flows()
  };
  Ref ref_of(int global) const;

 private:
  std::vector<int> offsets_;
  int total_ = 0;
};

// Endpoint/remaining snapshot of every flow, in FlowIndex order.
std::vector<FlowPorts> snapshot_flows(std::span<const JobDag> jobs);

}  // namespace mfsim
