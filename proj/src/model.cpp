#include "mfsim/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mfsim {

namespace {

std::string job_tag(int job_id) { return "job " + std::to_string(job_id) + ": "; }

template <typename T>
const T* find_by_id(const std::vector<T>& items, int id) {
  auto it = std::lower_bound(items.begin(), items.end(), id,
                             [](const T& a, int b) { return a.id < b; });
  if (it == items.end() || it->id != id) return nullptr;
  return &*it;
}

void normalize_deps(std::vector<int>& deps) {
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
}

}  // namespace

JobDag JobDag::build(int job_id, double release_time,
                     std::vector<ComputeTask> tasks,
                     std::vector<MetaflowSpec> metaflows,
                     std::vector<Flow> flows) {
  const std::string tag = job_tag(job_id);
  if (release_time < 0.0)
    throw std::invalid_argument(tag + "negative release time");

  JobDag dag;
  dag.job_ = job_id;
  dag.release_ = release_time;
  dag.tasks_ = std::move(tasks);
  dag.flows_ = std::move(flows);

  auto check_unique = [&tag](const auto& items, const char* what) {
    for (size_t i = 1; i < items.size(); ++i)
      if (items[i - 1].id == items[i].id)
        throw std::invalid_argument(tag + "duplicate " + what + " id " +
                                    std::to_string(items[i].id));
  };

  std::sort(dag.tasks_.begin(), dag.tasks_.end(),
            [](const ComputeTask& a, const ComputeTask& b) { return a.id < b.id; });
  check_unique(dag.tasks_, "task");

  std::sort(metaflows.begin(), metaflows.end(),
            [](const MetaflowSpec& a, const MetaflowSpec& b) { return a.id < b.id; });
  check_unique(metaflows, "metaflow");

  std::sort(dag.flows_.begin(), dag.flows_.end(),
            [](const Flow& a, const Flow& b) { return a.id < b.id; });
  check_unique(dag.flows_, "flow");

  dag.metaflows_.reserve(metaflows.size());
  for (const MetaflowSpec& spec : metaflows) {
    if (!dag.has_task(spec.consumer_task))
      throw std::invalid_argument(tag + "metaflow " + std::to_string(spec.id) +
                                  " consumed by unknown task " +
                                  std::to_string(spec.consumer_task));
    dag.metaflows_.push_back({spec.id, spec.consumer_task, {}});
  }

  for (Flow& f : dag.flows_) {
    if (!(f.size_total > 0.0))
      throw std::invalid_argument(tag + "flow " + std::to_string(f.id) +
                                  " has non-positive size");
    f.size_remaining = f.size_total;
    auto* mf = const_cast<Metaflow*>(find_by_id(dag.metaflows_, f.metaflow));
    if (!mf)
      throw std::invalid_argument(tag + "flow " + std::to_string(f.id) +
                                  " references unknown metaflow " +
                                  std::to_string(f.metaflow));
    mf->flows.push_back(f.id);
  }

  for (const Metaflow& mf : dag.metaflows_)
    if (mf.flows.empty())
      throw std::invalid_argument(tag + "metaflow " + std::to_string(mf.id) +
                                  " has no flows");

  for (ComputeTask& t : dag.tasks_) {
    if (t.load < 0.0)
      throw std::invalid_argument(tag + "task " + std::to_string(t.id) +
                                  " has negative load");
    normalize_deps(t.metaflow_deps);
    normalize_deps(t.task_deps);
    for (int m : t.metaflow_deps)
      if (!dag.has_metaflow(m))
        throw std::invalid_argument(tag + "task " + std::to_string(t.id) +
                                    " depends on unknown metaflow " +
                                    std::to_string(m));
    for (int d : t.task_deps) {
      if (!dag.has_task(d))
        throw std::invalid_argument(tag + "task " + std::to_string(t.id) +
                                    " depends on unknown task " +
                                    std::to_string(d));
      if (d == t.id)
        throw std::invalid_argument(tag + "task " + std::to_string(t.id) +
                                    " depends on itself");
    }
  }

  // A task consuming a metaflow cannot start before that metaflow is done.
  for (const Metaflow& mf : dag.metaflows_) {
    auto* t = const_cast<ComputeTask*>(find_by_id(dag.tasks_, mf.consumer_task));
    if (!std::binary_search(t->metaflow_deps.begin(), t->metaflow_deps.end(),
                            mf.id)) {
      t->metaflow_deps.push_back(mf.id);
      normalize_deps(t->metaflow_deps);
    }
  }

  // Cycle check over task_deps (Kahn's algorithm).
  {
    std::vector<int> indegree(dag.tasks_.size(), 0);
    auto pos_of = [&dag](int id) {
      return static_cast<size_t>(find_by_id(dag.tasks_, id) - dag.tasks_.data());
    };
    for (const ComputeTask& t : dag.tasks_)
      indegree[pos_of(t.id)] = static_cast<int>(t.task_deps.size());
    std::vector<size_t> ready;
    for (size_t i = 0; i < dag.tasks_.size(); ++i)
      if (indegree[i] == 0) ready.push_back(i);
    size_t seen = 0;
    while (!ready.empty()) {
      size_t i = ready.back();
      ready.pop_back();
      ++seen;
      for (const ComputeTask& t : dag.tasks_)
        if (std::binary_search(t.task_deps.begin(), t.task_deps.end(),
                               dag.tasks_[i].id))
          if (--indegree[pos_of(t.id)] == 0) ready.push_back(pos_of(t.id));
    }
    if (seen != dag.tasks_.size())
      throw std::invalid_argument(tag + "task dependencies contain a cycle");
  }

  return dag;
}

const ComputeTask& JobDag::task(int id) const {
  if (const ComputeTask* t = find_by_id(tasks_, id)) return *t;
  throw std::invalid_argument(job_tag(job_) + "unknown task " + std::to_string(id));
}

const Metaflow& JobDag::metaflow(int id) const {
  if (const Metaflow* m = find_by_id(metaflows_, id)) return *m;
  throw std::invalid_argument(job_tag(job_) + "unknown metaflow " +
                              std::to_string(id));
}

const Flow& JobDag::flow(int id) const {
  if (const Flow* f = find_by_id(flows_, id)) return *f;
  throw std::invalid_argument(job_tag(job_) + "unknown flow " + std::to_string(id));
}

Flow& JobDag::flow(int id) {
  return const_cast<Flow&>(static_cast<const JobDag*>(this)->flow(id));
}

bool JobDag::has_task(int id) const { return find_by_id(tasks_, id) != nullptr; }

bool JobDag::has_metaflow(int id) const {
  return find_by_id(metaflows_, id) != nullptr;
}

std::set<int> ancestor_metaflows(const JobDag& dag, int task_id) {
  std::set<int> result;
  std::vector<int> stack{dag.task(task_id).id};
  std::set<int> visited;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!visited.insert(id).second) continue;
    const ComputeTask& t = dag.task(id);
    result.insert(t.metaflow_deps.begin(), t.metaflow_deps.end());
    stack.insert(stack.end(), t.task_deps.begin(), t.task_deps.end());
  }
  return result;
}

std::set<int> unlockable_tasks(const JobDag& dag, int metaflow_id,
                               const std::set<int>& finished_metaflows,
                               const std::set<int>& finished_tasks) {
  dag.metaflow(metaflow_id);  // existence check
  std::set<int> have_metaflows = finished_metaflows;
  have_metaflows.insert(metaflow_id);

  std::set<int> unlocked;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const ComputeTask& t : dag.tasks()) {
      if (finished_tasks.count(t.id) || unlocked.count(t.id)) continue;
      bool ok = true;
      for (int m : t.metaflow_deps)
        if (!have_metaflows.count(m)) { ok = false; break; }
      if (ok)
        for (int d : t.task_deps)
          if (!finished_tasks.count(d) && !unlocked.count(d)) { ok = false; break; }
      if (ok) {
        unlocked.insert(t.id);
        changed = true;
      }
    }
  }
  return unlocked;
}

double remaining_size(const JobDag& dag, int metaflow_id) {
  double sum = 0.0;
  for (int f : dag.metaflow(metaflow_id).flows) sum += dag.flow(f).size_remaining;
  return sum;
}

bool metaflow_finished(const JobDag& dag, int metaflow_id) {
  return remaining_size(dag, metaflow_id) <= kEps;
}

FlowIndex::FlowIndex(std::span<const JobDag> jobs) {
  offsets_.reserve(jobs.size());
  for (const JobDag& dag : jobs) {
    offsets_.push_back(total_);
    total_ += static_cast<int>(dag.flows().size());
  }
}

FlowIndex::Ref FlowIndex::ref_of(int global) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  int job_index = static_cast<int>(it - offsets_.begin()) - 1;
  return {job_index, global - offsets_[job_index]};
}

std::vector<FlowPorts> snapshot_flows(std::span<const JobDag> jobs) {
  std::vector<FlowPorts> snap;
  for (const JobDag& dag : jobs)
    for (const Flow& f : dag.flows())
      snap.push_back({f.src, f.dst, f.size_remaining});
  return snap;
}

}  // namespace mfsim
