#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfsim/dagfile.hpp"
#include "mfsim/engine.hpp"
#include "mfsim/fixtures.hpp"
#include "mfsim/report.hpp"
#include "mfsim/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file " + path);
}

struct RunArgs {
  std::string trace_path;
  bool synthetic = false;
  std::vector<std::string> schedulers{"msa", "varys"};
  std::string topology = "partial";
  int n_jobs = -1;  // all of --trace, 20 synthetic
  std::uint64_t seed = 1;
  double rho = 1.0;
  int k_per_reducer = 2;
  bool work_conserving = false;
  bool shared_fabric = false;
  bool lump_flows = false;
  std::string out;
  std::string format = "csv";
};

int cmd_run(const RunArgs& args) {
  mfsim::Trace trace;
  if (args.synthetic) {
    trace = mfsim::parse_trace(mfsim::synthesize_trace({150, 120, args.seed}));
  } else if (!args.trace_path.empty()) {
    trace = mfsim::load_trace(args.trace_path);
  } else {
    std::cerr << "run: need --trace FILE or --synthetic\n";
    return kExitUsage;
  }

  mfsim::DagGenOptions gen;
  gen.topology = mfsim::topology_from_name(args.topology);
  gen.split = args.lump_flows ? mfsim::FlowSplit::kLump
                              : mfsim::FlowSplit::kPerMapper;
  gen.metaflows_per_reducer = args.k_per_reducer;
  gen.compute_to_comm_ratio = args.rho;
  gen.seed = args.seed;

  int n_jobs = args.n_jobs;
  if (n_jobs < 0) n_jobs = args.synthetic ? 20 : static_cast<int>(trace.jobs.size());
  std::vector<mfsim::TraceJob> sampled =
      mfsim::sample_jobs(trace, n_jobs, args.seed);
  mfsim::Fabric fabric = mfsim::make_fabric(trace.num_machines);

  std::vector<mfsim::JobDag> dags;
  dags.reserve(sampled.size());
  for (const mfsim::TraceJob& tj : sampled) dags.push_back(generate_dag(tj, gen));

  mfsim::ExperimentResults results;
  std::vector<std::pair<std::string, mfsim::SimReport>> reports;
  bool want_text = args.format == "text";

  for (const std::string& name : args.schedulers) {
    mfsim::RunOptions opts;
    opts.scheduler = mfsim::scheduler_from_name(name);
    opts.work_conserving = args.work_conserving;
    opts.record_events = want_text && args.shared_fabric;

    mfsim::SimReport combined;
    if (args.shared_fabric) {
      combined = mfsim::run(dags, fabric, opts);
    } else {
      // Each sampled job simulated alone on the fabric.
      double cct_sum = 0.0, jct_sum = 0.0;
      for (const mfsim::JobDag& dag : dags) {
        mfsim::SimReport rep = mfsim::run({dag}, fabric, opts);
        combined.per_job.push_back(rep.per_job.front());
        cct_sum += rep.per_job.front().cct;
        jct_sum += rep.per_job.front().jct;
      }
      if (!dags.empty()) {
        combined.avg_cct = cct_sum / static_cast<double>(dags.size());
        combined.avg_jct = jct_sum / static_cast<double>(dags.size());
      }
    }
    append_report(results, name, combined);
    if (want_text) reports.emplace_back(name, std::move(combined));
  }
  add_speedup(results, "varys", "msa");

  write_output(args.out, want_text ? to_text(results, reports)
                                   : to_csv(results));
  return kExitOk;
}

struct MotivationArgs {
  bool events = false;
  bool fair = false;
};

int cmd_motivation(const MotivationArgs& args) {
  mfsim::MotivationFixture fx = mfsim::motivation_fixture();

  struct Expected {
    const char* scheduler;
    mfsim::SchedulerKind kind;
    double avg_cct;
    double avg_jct;
  };
  std::vector<Expected> expected{
      {"varys", mfsim::SchedulerKind::kVarys, fx.varys_avg_cct, fx.varys_avg_jct},
      {"msa", mfsim::SchedulerKind::kMsa, fx.msa_avg_cct, fx.msa_avg_jct},
  };

  bool ok = true;
  std::printf("scheduler  avg_cct    avg_jct\n");
  for (const Expected& e : expected) {
    mfsim::RunOptions opts;
    opts.scheduler = e.kind;
    opts.record_events = args.events;
    mfsim::SimReport rep = mfsim::run(fx.jobs, fx.fabric, opts);
    std::printf("%-9s  %9.6f  %9.6f\n", e.scheduler, rep.avg_cct, rep.avg_jct);
    if (args.events)
      for (const mfsim::SimEvent& ev : rep.events)
        std::printf("    %9.6f %s job=%d entity=%d\n", ev.time,
                    std::string(event_kind_name(ev.kind)).c_str(), ev.job_id,
                    ev.entity_id);
    if (std::fabs(rep.avg_cct - e.avg_cct) > 1e-6 ||
        std::fabs(rep.avg_jct - e.avg_jct) > 1e-6) {
      std::printf("MISMATCH: %s expected avg_cct=%g avg_jct=%g\n", e.scheduler,
                  e.avg_cct, e.avg_jct);
      ok = false;
    }
  }
  if (args.fair) {
    mfsim::RunOptions opts;
    opts.scheduler = mfsim::SchedulerKind::kFair;
    mfsim::SimReport rep = mfsim::run(fx.jobs, fx.fabric, opts);
    std::printf("%-9s  %9.6f  %9.6f\n", "fair", rep.avg_cct, rep.avg_jct);
  }
  if (!ok) return kExitCheckFailed;
  std::printf("motivation aggregates match\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-level simulator for metaflow-scheduled datacenter jobs"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Simulate trace jobs under one or more schedulers");
  run->add_option("--trace", run_args.trace_path, "Trace file to load");
  run->add_flag("--synthetic", run_args.synthetic,
                "Use the built-in synthetic trace instead of --trace");
  run->add_option("--sched", run_args.schedulers,
                  "Scheduler to run: msa, varys, fair (repeatable)")
      ->capture_default_str();
  run->add_option("--topology", run_args.topology,
                  "Task graph shape: total, partial, disorder")
      ->capture_default_str();
  run->add_option("--n-jobs", run_args.n_jobs,
                  "Jobs sampled from the trace (default: all, or 20 synthetic)");
  run->add_option("--seed", run_args.seed, "Seed for sampling and loads")
      ->capture_default_str();
  run->add_option("--rho", run_args.rho, "Compute-to-communication load ratio")
      ->capture_default_str();
  run->add_option("--k-per-reducer", run_args.k_per_reducer,
                  "Metaflows carved out of each reducer")
      ->capture_default_str();
  run->add_flag("--work-conserving", run_args.work_conserving,
                "Backfill leftover bandwidth under metaflow scheduling");
  run->add_flag("--shared-fabric", run_args.shared_fabric,
                "Run all sampled jobs together instead of one at a time");
  run->add_flag("--lump-flows", run_args.lump_flows,
                "One flow per reducer instead of one per mapper");
  run->add_option("--out", run_args.out, "Output file ('-' for stdout)");
  run->add_option("--format", run_args.format, "Output format: csv or text")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();

  MotivationArgs motivation_args;
  CLI::App* motivation = app.add_subcommand(
      "motivation",
      "Run the hand-built two-job instance and check its aggregates");
  motivation->add_flag("--events", motivation_args.events, "Print event logs");
  motivation->add_flag("--fair", motivation_args.fair,
                       "Also report per-flow fair sharing");

  struct {
    int machines = 150;
    int jobs = 120;
    std::uint64_t seed = 1;
    std::string out;
  } gen_trace_args;
  CLI::App* gen_trace =
      app.add_subcommand("gen-trace", "Write a synthetic trace file");
  gen_trace->add_option("--machines", gen_trace_args.machines, "Fabric size")
      ->capture_default_str();
  gen_trace->add_option("--jobs", gen_trace_args.jobs, "Number of jobs")
      ->capture_default_str();
  gen_trace->add_option("--seed", gen_trace_args.seed, "Generator seed")
      ->capture_default_str();
  gen_trace->add_option("--out", gen_trace_args.out,
                        "Output file ('-' for stdout)");

  struct {
    std::string trace_path;
    bool synthetic = false;
    std::string topology = "partial";
    int n_jobs = -1;
    std::uint64_t seed = 1;
    double rho = 1.0;
    int k_per_reducer = 2;
    std::string out_dir = ".";
  } gen_dag_args;
  CLI::App* gen_dag = app.add_subcommand(
      "gen-dag", "Expand sampled trace jobs into job DAG files");
  gen_dag->add_option("--trace", gen_dag_args.trace_path, "Trace file to load");
  gen_dag->add_flag("--synthetic", gen_dag_args.synthetic,
                    "Use the built-in synthetic trace");
  gen_dag->add_option("--topology", gen_dag_args.topology,
                      "total, partial, or disorder")
      ->capture_default_str();
  gen_dag->add_option("--n-jobs", gen_dag_args.n_jobs,
                      "Jobs to sample (default: all, or 20 synthetic)");
  gen_dag->add_option("--seed", gen_dag_args.seed, "Seed")
      ->capture_default_str();
  gen_dag->add_option("--rho", gen_dag_args.rho,
                      "Compute-to-communication load ratio")
      ->capture_default_str();
  gen_dag->add_option("--k-per-reducer", gen_dag_args.k_per_reducer,
                      "Metaflows carved out of each reducer")
      ->capture_default_str();
  gen_dag->add_option("--out-dir", gen_dag_args.out_dir, "Directory for .dag files")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (motivation->parsed()) return cmd_motivation(motivation_args);
    if (gen_trace->parsed()) {
      write_output(gen_trace_args.out,
                   mfsim::synthesize_trace({gen_trace_args.machines,
                                            gen_trace_args.jobs,
                                            gen_trace_args.seed}));
      return kExitOk;
    }
    if (gen_dag->parsed()) {
      mfsim::Trace trace;
      if (gen_dag_args.synthetic) {
        trace = mfsim::parse_trace(
            mfsim::synthesize_trace({150, 120, gen_dag_args.seed}));
      } else if (!gen_dag_args.trace_path.empty()) {
        trace = mfsim::load_trace(gen_dag_args.trace_path);
      } else {
        std::cerr << "gen-dag: need --trace FILE or --synthetic\n";
        return kExitUsage;
      }
      mfsim::DagGenOptions gen;
      gen.topology = mfsim::topology_from_name(gen_dag_args.topology);
      gen.metaflows_per_reducer = gen_dag_args.k_per_reducer;
      gen.compute_to_comm_ratio = gen_dag_args.rho;
      gen.seed = gen_dag_args.seed;
      int n_jobs = gen_dag_args.n_jobs;
      if (n_jobs < 0)
        n_jobs = gen_dag_args.synthetic ? 20
                                        : static_cast<int>(trace.jobs.size());
      std::filesystem::create_directories(gen_dag_args.out_dir);
      for (const mfsim::TraceJob& tj :
           mfsim::sample_jobs(trace, n_jobs, gen_dag_args.seed)) {
        mfsim::JobDag dag = generate_dag(tj, gen);
        mfsim::save_job_dag(dag, gen_dag_args.out_dir + "/job_" +
                                     std::to_string(dag.id()) + ".dag");
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
