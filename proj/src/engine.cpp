#include "mfsim/engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mfsim {

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kJobRelease: return "job_release";
    case EventKind::kFlowComplete: return "flow_complete";
    case EventKind::kMetaflowComplete: return "metaflow_complete";
    case EventKind::kTaskComplete: return "task_complete";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class TaskStatus { kWaiting, kQueued, kRunning, kFinished };

struct QueuedTask {
  double ready = 0.0;
  int job_id = 0;
  int task_id = 0;
  int job_index = 0;
  int task_pos = 0;
};

bool queue_before(const QueuedTask& a, const QueuedTask& b) {
  if (a.ready != b.ready) return a.ready < b.ready;
  if (a.job_id != b.job_id) return a.job_id < b.job_id;
  return a.task_id < b.task_id;
}

struct RunningTask {
  bool active = false;
  int job_index = 0;
  int task_pos = 0;
  double end = 0.0;
};

class Engine {
 public:
  Engine(std::vector<JobDag> jobs, const Fabric& fabric, const RunOptions& opts)
      : jobs_(std::move(jobs)), fabric_(fabric), opts_(opts), index_(jobs_) {
    for (const JobDag& dag : jobs_)
      for (const Flow& f : dag.flows())
        if (f.src < 0 || f.src >= fabric_.num_machines || f.dst < 0 ||
            f.dst >= fabric_.num_machines)
          throw std::invalid_argument(
              "job " + std::to_string(dag.id()) + " flow " +
              std::to_string(f.id) + " references machine outside fabric");
    for (const JobDag& dag : jobs_)
      for (const ComputeTask& t : dag.tasks())
        if (t.machine < 0 || t.machine >= fabric_.num_machines)
          throw std::invalid_argument(
              "job " + std::to_string(dag.id()) + " task " +
              std::to_string(t.id) + " placed outside fabric");

    progress_.resize(jobs_.size());
    task_status_.resize(jobs_.size());
    unfinished_tasks_ = 0;
    for (size_t ji = 0; ji < jobs_.size(); ++ji) {
      task_status_[ji].assign(jobs_[ji].tasks().size(), TaskStatus::kWaiting);
      unfinished_tasks_ += static_cast<int>(jobs_[ji].tasks().size());
    }
    queues_.resize(fabric_.num_machines);
    running_.resize(fabric_.num_machines);
    delivered_.assign(index_.total(), 0.0);
    flow_done_.assign(index_.total(), 0);
    alloc_.rates.assign(index_.total(), 0.0);
    last_flow_end_.assign(jobs_.size(), 0.0);
    last_task_end_.assign(jobs_.size(), 0.0);
  }

  SimReport run() {
    release_due(0.0);
    cascade(0.0);
    while (unfinished_tasks_ > 0) {
      reschedule();
      double t = next_event_time();
      if (t == kInf) throw std::runtime_error(stuck_diagnostic());
      if (opts_.interval_observer) {
        std::vector<FlowPorts> snap = snapshot_flows(jobs_);
        opts_.interval_observer(now_, t, alloc_, snap);
      }
      advance(t);
      cascade(t);
    }
    finalize();
    return std::move(report_);
  }

 private:
  void log(double t, EventKind kind, int job_id, int entity_id) {
    if (opts_.record_events) report_.events.push_back({t, kind, job_id, entity_id});
  }

  void release_due(double t) {
    for (size_t ji = 0; ji < jobs_.size(); ++ji) {
      if (progress_[ji].released) continue;
      if (jobs_[ji].release_time() <= t + kEps) {
        progress_[ji].released = true;
        log(t, EventKind::kJobRelease, jobs_[ji].id(), jobs_[ji].id());
      }
    }
  }

  void reschedule() {
    SchedulerState state{&fabric_, &jobs_, &progress_, now_};
    ScheduleOptions opts{opts_.work_conserving};
    alloc_ = schedule(opts_.scheduler, state, opts).allocation;
  }

  double next_event_time() const {
    double t = kInf;
    for (size_t ji = 0; ji < jobs_.size(); ++ji)
      if (!progress_[ji].released)
        t = std::min(t, jobs_[ji].release_time());
    for (int g = 0; g < index_.total(); ++g) {
      if (flow_done_[g] || alloc_.rates[g] <= 0.0) continue;
      FlowIndex::Ref r = index_.ref_of(g);
      const Flow& f = jobs_[r.job_index].flows()[r.flow_pos];
      t = std::min(t, now_ + f.size_remaining / alloc_.rates[g]);
    }
    for (const RunningTask& rt : running_)
      if (rt.active) t = std::min(t, rt.end);
    return t;
  }

  void advance(double t) {
    double dt = t - now_;
    // Drain transmitting flows over [now, t], clamping finished ones.
    for (int g = 0; g < index_.total(); ++g) {
      if (flow_done_[g] || alloc_.rates[g] <= 0.0) continue;
      FlowIndex::Ref r = index_.ref_of(g);
      JobDag& dag = jobs_[r.job_index];
      Flow& f = dag.flow(dag.flows()[r.flow_pos].id);
      double moved = alloc_.rates[g] * dt;
      f.size_remaining -= moved;
      delivered_[g] += moved;
      if (f.size_remaining <= kEps * f.size_total) {
        f.size_remaining = 0.0;
        flow_done_[g] = 1;
        double fct = t - dag.release_time();
        report_.per_flow.push_back({dag.id(), f.id, fct, delivered_[g]});
        last_flow_end_[r.job_index] = std::max(last_flow_end_[r.job_index], fct);
        log(t, EventKind::kFlowComplete, dag.id(), f.id);
      }
    }
    // Tasks whose execution ends at t.
    for (int m = 0; m < fabric_.num_machines; ++m) {
      RunningTask& rt = running_[m];
      if (!rt.active || rt.end > t + kEps) continue;
      finish_task(rt.job_index, rt.task_pos, t);
      rt.active = false;
    }
    release_due(t);
    now_ = t;
  }

  void finish_task(int job_index, int task_pos, double t) {
    JobDag& dag = jobs_[job_index];
    const ComputeTask& task = dag.tasks()[task_pos];
    task_status_[job_index][task_pos] = TaskStatus::kFinished;
    progress_[job_index].finished_tasks.insert(task.id);
    --unfinished_tasks_;
    double rel = t - dag.release_time();
    last_task_end_[job_index] = std::max(last_task_end_[job_index], rel);
    log(t, EventKind::kTaskComplete, dag.id(), task.id);
  }

  // Propagates everything that follows instantaneously at time t: metaflow
  // completions, newly startable tasks, machine dispatch, and zero-load task
  // completions, to a fixed point.
  void cascade(double t) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ji = 0; ji < jobs_.size(); ++ji) {
        if (!progress_[ji].released) continue;
        JobDag& dag = jobs_[ji];
        for (const Metaflow& mf : dag.metaflows()) {
          if (progress_[ji].finished_metaflows.count(mf.id)) continue;
          if (!metaflow_finished(dag, mf.id)) continue;
          progress_[ji].finished_metaflows.insert(mf.id);
          report_.per_metaflow.push_back(
              {dag.id(), mf.id, t - dag.release_time()});
          log(t, EventKind::kMetaflowComplete, dag.id(), mf.id);
          changed = true;
        }
        for (size_t pos = 0; pos < dag.tasks().size(); ++pos) {
          if (task_status_[ji][pos] != TaskStatus::kWaiting) continue;
          const ComputeTask& task = dag.tasks()[pos];
          bool ready = true;
          for (int m : task.metaflow_deps)
            if (!progress_[ji].finished_metaflows.count(m)) { ready = false; break; }
          if (ready)
            for (int d : task.task_deps)
              if (!progress_[ji].finished_tasks.count(d)) { ready = false; break; }
          if (!ready) continue;
          task_status_[ji][pos] = TaskStatus::kQueued;
          queues_[task.machine].push_back(
              {t, dag.id(), task.id, static_cast<int>(ji),
               static_cast<int>(pos)});
          changed = true;
        }
      }
      // Serial dispatch: lowest (ready, job, task) next on each free machine.
      for (int m = 0; m < fabric_.num_machines; ++m) {
        while (!running_[m].active && !queues_[m].empty()) {
          auto it = std::min_element(queues_[m].begin(), queues_[m].end(),
                                     queue_before);
          QueuedTask q = *it;
          queues_[m].erase(it);
          const ComputeTask& task = jobs_[q.job_index].tasks()[q.task_pos];
          if (task.load <= 0.0) {
            finish_task(q.job_index, q.task_pos, t);
            changed = true;
          } else {
            task_status_[q.job_index][q.task_pos] = TaskStatus::kRunning;
            running_[m] = {true, q.job_index, q.task_pos, t + task.load};
          }
        }
      }
    }
  }

  std::string stuck_diagnostic() const {
    std::string msg = "simulation stuck at t=" + std::to_string(now_) + ";";
    for (size_t ji = 0; ji < jobs_.size(); ++ji) {
      const JobDag& dag = jobs_[ji];
      std::string part;
      for (const Metaflow& mf : dag.metaflows())
        if (!progress_[ji].finished_metaflows.count(mf.id))
          part += " metaflow " + std::to_string(mf.id);
      for (size_t pos = 0; pos < dag.tasks().size(); ++pos)
        if (task_status_[ji][pos] != TaskStatus::kFinished)
          part += " task " + std::to_string(dag.tasks()[pos].id);
      if (!part.empty())
        msg += " job " + std::to_string(dag.id()) + " blocked on:" + part + ";";
    }
    return msg;
  }

  void finalize() {
    double cct_sum = 0.0, jct_sum = 0.0;
    for (size_t ji = 0; ji < jobs_.size(); ++ji) {
      report_.per_job.push_back({jobs_[ji].id(), jobs_[ji].release_time(),
                                 last_flow_end_[ji], last_task_end_[ji]});
      cct_sum += last_flow_end_[ji];
      jct_sum += last_task_end_[ji];
    }
    if (!jobs_.empty()) {
      report_.avg_cct = cct_sum / static_cast<double>(jobs_.size());
      report_.avg_jct = jct_sum / static_cast<double>(jobs_.size());
    }
  }

  std::vector<JobDag> jobs_;
  Fabric fabric_;
  RunOptions opts_;
  FlowIndex index_;

  double now_ = 0.0;
  std::vector<JobProgress> progress_;
  std::vector<std::vector<TaskStatus>> task_status_;
  std::vector<std::vector<QueuedTask>> queues_;
  std::vector<RunningTask> running_;
  RateAllocation alloc_;
  std::vector<double> delivered_;
  std::vector<char> flow_done_;
  std::vector<double> last_flow_end_;
  std::vector<double> last_task_end_;
  int unfinished_tasks_ = 0;
  SimReport report_;
};

}  // namespace

SimReport run(std::vector<JobDag> jobs, const Fabric& fabric,
              const RunOptions& opts) {
  Engine engine(std::move(jobs), fabric, opts);
  return engine.run();
}

}  // namespace mfsim
