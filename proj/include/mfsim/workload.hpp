#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfsim/model.hpp"

namespace mfsim {

// One job of a map-reduce trace: mapper machines and per-reducer shuffle
// volumes. Machine indices are 0-based here (traces on disk are 1-based).
struct TraceJob {
  int id = 0;
  long long arrival_ms = 0;
  std::vector<int> mappers;
  std::vector<std::pair<int, double>> reducers;  // (machine, data units)
};

struct Trace {
  int num_machines = 0;
  std::vector<TraceJob> jobs;
};

struct TraceParseOptions {
  double units_per_mb = 1.0;  // scale applied to reducer megabytes
};

// Parses the common coflow benchmark layout: a "<machines> <jobs>" header,
// then one line per job:
//   <id> <arrival_ms> <m> <mapper_1..m> <r> <reducer_1>:<mb_1> .. <reducer_r>:<mb_r>
// Throws std::runtime_error naming the offending line.
Trace parse_trace(std::string_view text, const TraceParseOptions& opts = {});
Trace load_trace(const std::string& path, const TraceParseOptions& opts = {});

enum class FlowSplit {
  kPerMapper,  // each reducer receives one flow per mapper, near-even sizes
  kLump,       // one flow per reducer, from the first mapper
};

struct ExpandedFlow {
  int src = 0;
  int dst = 0;
  double size = 0.0;
  int reducer_pos = 0;  // which reducer of the trace job this flow feeds
};

// Turns a trace job into concrete flows. Per-mapper sizes are the integer
// split of the reducer volume: floor(v/m) each, remainder folded into the
// first mapper's flow; zero-sized flows are dropped.
std::vector<ExpandedFlow> expand_flows(const TraceJob& job, FlowSplit split);

enum class DagTopology {
  kTotalOrder,    // one global task chain across all reducers
  kPartialOrder,  // an independent task chain per reducer
  kDisorder,      // every task waits for every metaflow (hard barrier)
};

DagTopology topology_from_name(std::string_view name);  // total|partial|disorder
std::string_view topology_name(DagTopology t);

struct DagGenOptions {
  DagTopology topology = DagTopology::kPartialOrder;
  FlowSplit split = FlowSplit::kPerMapper;
  int metaflows_per_reducer = 2;
  // Task load = ratio * metaflow bytes * (1 + U(-0.2, 0.2)), drawn from a
  // stream seeded by (seed, job id) so a job's loads do not depend on which
  // other jobs are generated.
  double compute_to_comm_ratio = 1.0;
  std::uint64_t seed = 1;
};

// Builds a job DAG from a trace job: each reducer's flows are cut into up to
// metaflows_per_reducer contiguous groups, each group feeding one compute
// task on the reducer's machine, with dependencies wired per the topology.
// Release time is the trace arrival in seconds.
JobDag generate_dag(const TraceJob& job, const DagGenOptions& opts);

// n distinct jobs drawn without replacement, deterministic in seed.
// Throws std::invalid_argument when n exceeds the trace size.
std::vector<TraceJob> sample_jobs(const Trace& trace, int n, std::uint64_t seed);

struct TraceSynthOptions {
  int num_machines = 150;
  int num_jobs = 120;
  std::uint64_t seed = 1;
};

// Deterministic synthetic trace in the on-disk format: mostly small jobs,
// a tail of wide ones, reducer volumes spanning three orders of magnitude.
std::string synthesize_trace(const TraceSynthOptions& opts);

}  // namespace mfsim
