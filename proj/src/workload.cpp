#include "mfsim/workload.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mfsim/rng.hpp"

namespace mfsim {

namespace {

[[noreturn]] void trace_error(int line, const std::string& what) {
  throw std::runtime_error("trace line " + std::to_string(line) + ": " + what);
}

// Strips comments and splits into whitespace-separated tokens.
std::vector<std::string> tokenize(std::string_view line) {
  if (size_t hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

long long parse_int(const std::string& tok, int line, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    trace_error(line, std::string("bad ") + what + " '" + tok + "'");
  }
}

double parse_num(const std::string& tok, int line, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    trace_error(line, std::string("bad ") + what + " '" + tok + "'");
  }
}

int parse_machine(const std::string& tok, int line, int num_machines) {
  long long m = parse_int(tok, line, "machine index");
  if (m < 1 || m > num_machines)
    trace_error(line, "machine index " + tok + " outside 1.." +
                          std::to_string(num_machines));
  return static_cast<int>(m - 1);
}

}  // namespace

Trace parse_trace(std::string_view text, const TraceParseOptions& opts) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long expected_jobs = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 2) trace_error(line_no, "header must be '<machines> <jobs>'");
      long long machines = parse_int(tok[0], line_no, "machine count");
      expected_jobs = parse_int(tok[1], line_no, "job count");
      if (machines < 1) trace_error(line_no, "machine count must be >= 1");
      if (expected_jobs < 0) trace_error(line_no, "negative job count");
      trace.num_machines = static_cast<int>(machines);
      have_header = true;
      continue;
    }

    TraceJob job;
    size_t p = 0;
    auto need = [&](const char* what) -> const std::string& {
      if (p >= tok.size()) trace_error(line_no, std::string("missing ") + what);
      return tok[p++];
    };
    job.id = static_cast<int>(parse_int(need("job id"), line_no, "job id"));
    job.arrival_ms = parse_int(need("arrival"), line_no, "arrival");
    if (job.arrival_ms < 0) trace_error(line_no, "negative arrival");
    long long m = parse_int(need("mapper count"), line_no, "mapper count");
    if (m < 1) trace_error(line_no, "mapper count must be >= 1");
    for (long long i = 0; i < m; ++i)
      job.mappers.push_back(
          parse_machine(need("mapper machine"), line_no, trace.num_machines));
    long long r = parse_int(need("reducer count"), line_no, "reducer count");
    if (r < 0) trace_error(line_no, "negative reducer count");
    for (long long i = 0; i < r; ++i) {
      const std::string& tokr = need("reducer entry");
      size_t colon = tokr.find(':');
      if (colon == std::string::npos)
        trace_error(line_no, "reducer entry '" + tokr + "' is not machine:mb");
      int machine =
          parse_machine(tokr.substr(0, colon), line_no, trace.num_machines);
      double mb = parse_num(tokr.substr(colon + 1), line_no, "reducer volume");
      if (mb < 0) trace_error(line_no, "negative reducer volume");
      job.reducers.emplace_back(machine, mb * opts.units_per_mb);
    }
    if (p != tok.size()) trace_error(line_no, "trailing tokens on job line");
    trace.jobs.push_back(std::move(job));
  }

  if (!have_header) throw std::runtime_error("trace is empty");
  if (static_cast<long long>(trace.jobs.size()) != expected_jobs)
    throw std::runtime_error(
        "trace header promises " + std::to_string(expected_jobs) +
        " jobs, file has " + std::to_string(trace.jobs.size()));
  return trace;
}

Trace load_trace(const std::string& path, const TraceParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str(), opts);
}

std::vector<ExpandedFlow> expand_flows(const TraceJob& job, FlowSplit split) {
  std::vector<ExpandedFlow> flows;
  for (size_t rp = 0; rp < job.reducers.size(); ++rp) {
    auto [dst, volume] = job.reducers[rp];
    if (volume <= 0.0) continue;
    if (split == FlowSplit::kLump) {
      flows.push_back({job.mappers.front(), dst, volume, static_cast<int>(rp)});
      continue;
    }
    size_t m = job.mappers.size();
    double base = std::floor(volume / static_cast<double>(m));
    double first = volume - base * static_cast<double>(m - 1);
    for (size_t i = 0; i < m; ++i) {
      double size = i == 0 ? first : base;
      if (size <= 0.0) continue;
      flows.push_back({job.mappers[i], dst, size, static_cast<int>(rp)});
    }
  }
  return flows;
}

DagTopology topology_from_name(std::string_view name) {
  if (name == "total") return DagTopology::kTotalOrder;
  if (name == "partial") return DagTopology::kPartialOrder;
  if (name == "disorder") return DagTopology::kDisorder;
  throw std::invalid_argument("unknown topology '" + std::string(name) +
                              "' (expected total, partial, or disorder)");
}

std::string_view topology_name(DagTopology t) {
  switch (t) {
    case DagTopology::kTotalOrder: return "total";
    case DagTopology::kPartialOrder: return "partial";
    case DagTopology::kDisorder: return "disorder";
  }
  return "?";
}

JobDag generate_dag(const TraceJob& job, const DagGenOptions& opts) {
  if (opts.metaflows_per_reducer < 1)
    throw std::invalid_argument("metaflows_per_reducer must be >= 1");
  std::vector<ExpandedFlow> expanded = expand_flows(job, opts.split);

  Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(job.id)));

  std::vector<Flow> flows;
  std::vector<MetaflowSpec> metaflows;
  std::vector<ComputeTask> tasks;
  int next_flow = 1, next_mf = 1, next_task = 1;
  int prev_task_global = -1;

  for (size_t rp = 0; rp < job.reducers.size(); ++rp) {
    std::vector<const ExpandedFlow*> mine;
    for (const ExpandedFlow& f : expanded)
      if (f.reducer_pos == static_cast<int>(rp)) mine.push_back(&f);
    if (mine.empty()) continue;

    int machine = job.reducers[rp].first;
    int k = std::min<int>(opts.metaflows_per_reducer,
                          static_cast<int>(mine.size()));
    int q = static_cast<int>(mine.size()) / k;
    int rem = static_cast<int>(mine.size()) % k;
    int prev_task_chain = -1;
    size_t cursor = 0;
    for (int g = 0; g < k; ++g) {
      int take = q + (g < rem ? 1 : 0);
      int mf_id = next_mf++;
      int task_id = next_task++;
      double bytes = 0.0;
      for (int i = 0; i < take; ++i) {
        const ExpandedFlow& f = *mine[cursor++];
        flows.push_back({next_flow++, mf_id, f.src, f.dst, f.size, f.size});
        bytes += f.size;
      }
      metaflows.push_back({mf_id, task_id});
      double noise = rng.next_range(-0.2, 0.2);
      double load = opts.compute_to_comm_ratio * bytes * (1.0 + noise);
      ComputeTask task{task_id, machine, load, {mf_id}, {}};
      switch (opts.topology) {
        case DagTopology::kTotalOrder:
          if (prev_task_global != -1) task.task_deps.push_back(prev_task_global);
          break;
        case DagTopology::kPartialOrder:
          if (prev_task_chain != -1) task.task_deps.push_back(prev_task_chain);
          break;
        case DagTopology::kDisorder:
          break;  // barrier wired below, once all metaflow ids exist
      }
      tasks.push_back(std::move(task));
      prev_task_global = task_id;
      prev_task_chain = task_id;
    }
  }

  if (opts.topology == DagTopology::kDisorder) {
    std::vector<int> all_mfs;
    all_mfs.reserve(metaflows.size());
    for (const MetaflowSpec& mf : metaflows) all_mfs.push_back(mf.id);
    for (ComputeTask& t : tasks) t.metaflow_deps = all_mfs;
  }

  double release = static_cast<double>(job.arrival_ms) / 1000.0;
  return JobDag::build(job.id, release, std::move(tasks), std::move(metaflows),
                       std::move(flows));
}

std::vector<TraceJob> sample_jobs(const Trace& trace, int n, std::uint64_t seed) {
  if (n < 0 || n > static_cast<int>(trace.jobs.size()))
    throw std::invalid_argument(
        "cannot sample " + std::to_string(n) + " of " +
        std::to_string(trace.jobs.size()) + " trace jobs");
  std::vector<int> order(trace.jobs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng(derive_seed(seed, 0x5a3d1e));
  std::vector<TraceJob> picked;
  picked.reserve(n);
  for (int i = 0; i < n; ++i) {
    size_t j = i + rng.next_below(order.size() - i);
    std::swap(order[i], order[j]);
    picked.push_back(trace.jobs[order[i]]);
  }
  return picked;
}

namespace {

// Distinct machines, 1-based for the on-disk format.
std::vector<int> pick_machines(Rng& rng, int count, int num_machines) {
  std::vector<int> pool(num_machines);
  for (int i = 0; i < num_machines; ++i) pool[i] = i + 1;
  std::vector<int> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    size_t j = i + rng.next_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

int roll_mapper_count(Rng& rng) {
  double u = rng.next_unit();
  if (u < 0.40) return 1;
  if (u < 0.65) return 2;
  if (u < 0.80) return 3;
  if (u < 0.92) return 4 + static_cast<int>(rng.next_below(3));   // 4..6
  return 7 + static_cast<int>(rng.next_below(4));                 // 7..10
}

int roll_reducer_count(Rng& rng) {
  double u = rng.next_unit();
  if (u < 0.15) return 1;
  if (u < 0.55) return 2 + static_cast<int>(rng.next_below(3));   // 2..4
  if (u < 0.85) return 5 + static_cast<int>(rng.next_below(4));   // 5..8
  return 9 + static_cast<int>(rng.next_below(6));                 // 9..14
}

long long roll_volume_mb(Rng& rng) {
  double u = rng.next_unit();
  if (u < 0.50) return 1 + static_cast<long long>(rng.next_below(10));
  if (u < 0.85) return 10 + static_cast<long long>(rng.next_below(91));
  return 100 + static_cast<long long>(rng.next_below(401));
}

}  // namespace

std::string synthesize_trace(const TraceSynthOptions& opts) {
  if (opts.num_machines < 1)
    throw std::invalid_argument("synthesize_trace: need at least one machine");
  if (opts.num_jobs < 0)
    throw std::invalid_argument("synthesize_trace: negative job count");

  std::ostringstream out;
  out << opts.num_machines << ' ' << opts.num_jobs << '\n';
  Rng arrivals(derive_seed(opts.seed, 0));
  long long arrival = 0;
  for (int j = 1; j <= opts.num_jobs; ++j) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(j)));
    arrival += static_cast<long long>(arrivals.next_below(2000));
    int m = std::min(roll_mapper_count(rng), opts.num_machines);
    int r = std::min(roll_reducer_count(rng), opts.num_machines);
    std::vector<int> mappers = pick_machines(rng, m, opts.num_machines);
    std::vector<int> reducers = pick_machines(rng, r, opts.num_machines);
    out << j << ' ' << arrival << ' ' << m;
    for (int mm : mappers) out << ' ' << mm;
    out << ' ' << r;
    for (int rr : reducers) out << ' ' << rr << ':' << roll_volume_mb(rng);
    out << '\n';
  }
  return out.str();
}

}  // namespace mfsim
