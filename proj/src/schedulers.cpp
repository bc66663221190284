#include "mfsim/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfsim {

Gain metaflow_gain(const JobDag& dag, int metaflow_id,
                   const JobProgress& progress) {
  if (progress.finished_metaflows.count(metaflow_id) ||
      metaflow_finished(dag, metaflow_id))
    throw std::invalid_argument("metaflow " + std::to_string(metaflow_id) +
                                " is finished and has no gain");

  std::set<int> unlocked = unlockable_tasks(
      dag, metaflow_id, progress.finished_metaflows, progress.finished_tasks);
  if (!unlocked.empty()) {
    double load = 0.0;
    for (int t : unlocked) load += dag.task(t).load;
    return {GainKind::kDirect, load / remaining_size(dag, metaflow_id)};
  }

  std::set<int> blocking =
      ancestor_metaflows(dag, dag.metaflow(metaflow_id).consumer_task);
  blocking.insert(metaflow_id);
  double bytes = 0.0;
  for (int m : blocking) bytes += remaining_size(dag, m);
  return {GainKind::kIndirect, bytes};
}

void sort_metaflows(std::vector<RankedMetaflow>& entries) {
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const RankedMetaflow& a, const RankedMetaflow& b) {
        bool da = a.gain.kind == GainKind::kDirect;
        bool db = b.gain.kind == GainKind::kDirect;
        if (da != db) return da;
        if (a.gain.value != b.gain.value)
          return da ? a.gain.value > b.gain.value : a.gain.value < b.gain.value;
        if (a.release_time != b.release_time)
          return a.release_time < b.release_time;
        if (a.job_id != b.job_id) return a.job_id < b.job_id;
        return a.metaflow_id < b.metaflow_id;
      });
}

MaddResult madd_rates(std::span<const FlowPorts> flows,
                      const PortTable& residual) {
  if (flows.empty())
    throw std::invalid_argument("madd_rates: empty flow group");
  const int machines = static_cast<int>(residual.ingress.size());
  std::vector<double> egress_demand(machines, 0.0);
  std::vector<double> ingress_demand(machines, 0.0);
  for (const FlowPorts& f : flows) {
    if (f.src < 0 || f.src >= machines || f.dst < 0 || f.dst >= machines)
      throw std::invalid_argument("madd_rates: endpoint outside fabric");
    if (!(f.remaining > 0.0))
      throw std::invalid_argument("madd_rates: flow with nothing to send");
    egress_demand[f.src] += f.remaining;
    ingress_demand[f.dst] += f.remaining;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int m = 0; m < machines; ++m) {
    if (egress_demand[m] > 0.0 && residual.egress[m] <= kEps)
      return {kInf, {}};
    if (ingress_demand[m] > 0.0 && residual.ingress[m] <= kEps)
      return {kInf, {}};
  }

  double gamma = 0.0;
  for (int m = 0; m < machines; ++m) {
    if (egress_demand[m] > 0.0)
      gamma = std::max(gamma, egress_demand[m] / residual.egress[m]);
    if (ingress_demand[m] > 0.0)
      gamma = std::max(gamma, ingress_demand[m] / residual.ingress[m]);
  }
  for (const FlowPorts& f : flows) {
    double cap = std::min(residual.egress[f.src], residual.ingress[f.dst]);
    gamma = std::max(gamma, f.remaining / cap);
  }

  MaddResult result;
  result.gamma = gamma;
  result.rates.reserve(flows.size());
  for (const FlowPorts& f : flows) result.rates.push_back(f.remaining / gamma);
  return result;
}

namespace {

// Writes one group's rates into the global allocation and takes the
// bandwidth out of the residual table (clamping float dust at zero).
void commit_group(const std::vector<int>& globals,
                  const std::vector<FlowPorts>& ports,
                  const std::vector<double>& rates, PortTable& residual,
                  RateAllocation& alloc) {
  for (size_t i = 0; i < globals.size(); ++i) {
    alloc.rates[globals[i]] = rates[i];
    double& eg = residual.egress[ports[i].src];
    double& in = residual.ingress[ports[i].dst];
    eg = std::max(0.0, eg - rates[i]);
    in = std::max(0.0, in - rates[i]);
  }
}

// Leftover bandwidth to active flows, earlier entries first.
void backfill(const std::vector<int>& order,
              const std::vector<FlowPorts>& snap, PortTable& residual,
              RateAllocation& alloc) {
  for (int g : order) {
    const FlowPorts& f = snap[g];
    if (f.remaining <= 0.0) continue;
    double extra = std::min(residual.egress[f.src], residual.ingress[f.dst]);
    if (extra > kEps) {
      alloc.rates[g] += extra;
      residual.egress[f.src] -= extra;
      residual.ingress[f.dst] -= extra;
    }
  }
}

}  // namespace

ScheduleDecision msa_schedule(const SchedulerState& state,
                              const ScheduleOptions& opts) {
  const std::vector<JobDag>& jobs = *state.jobs;
  const std::vector<JobProgress>& progress = *state.progress;
  FlowIndex index(jobs);

  ScheduleDecision decision;
  decision.allocation.rates.assign(index.total(), 0.0);

  std::vector<RankedMetaflow> ranked;
  for (size_t ji = 0; ji < jobs.size(); ++ji) {
    if (!progress[ji].released) continue;
    const JobDag& dag = jobs[ji];
    for (const Metaflow& mf : dag.metaflows()) {
      if (progress[ji].finished_metaflows.count(mf.id) ||
          metaflow_finished(dag, mf.id))
        continue;
      ranked.push_back({static_cast<int>(ji), dag.id(), mf.id,
                        dag.release_time(),
                        metaflow_gain(dag, mf.id, progress[ji])});
    }
  }
  sort_metaflows(ranked);

  PortTable residual = full_capacity(*state.fabric);
  std::vector<FlowPorts> snap = snapshot_flows(jobs);
  std::vector<int> priority_order;

  size_t i = 0;
  while (i < ranked.size()) {
    size_t j = i + 1;
    while (j < ranked.size() && ranked[j].job_index == ranked[i].job_index &&
           ranked[j].gain == ranked[i].gain)
      ++j;

    std::vector<int> globals;
    std::vector<FlowPorts> group;
    for (size_t k = i; k < j; ++k) {
      const JobDag& dag = jobs[ranked[k].job_index];
      for (size_t pos = 0; pos < dag.flows().size(); ++pos) {
        const Flow& f = dag.flows()[pos];
        if (f.metaflow != ranked[k].metaflow_id || f.size_remaining <= 0.0)
          continue;
        globals.push_back(index.global_of(ranked[k].job_index,
                                          static_cast<int>(pos)));
        group.push_back({f.src, f.dst, f.size_remaining});
      }
    }
    priority_order.insert(priority_order.end(), globals.begin(), globals.end());

    if (!group.empty()) {
      MaddResult res = madd_rates(group, residual);
      if (!res.blocked())
        commit_group(globals, group, res.rates, residual, decision.allocation);
    }
    i = j;
  }

  if (opts.work_conserving)
    backfill(priority_order, snap, residual, decision.allocation);

  decision.ordered = std::move(ranked);
  return decision;
}

ScheduleDecision varys_schedule(const SchedulerState& state,
                                const ScheduleOptions&) {
  const std::vector<JobDag>& jobs = *state.jobs;
  const std::vector<JobProgress>& progress = *state.progress;
  const Fabric& fabric = *state.fabric;
  FlowIndex index(jobs);

  ScheduleDecision decision;
  decision.allocation.rates.assign(index.total(), 0.0);

  std::vector<RankedMetaflow> order;
  for (size_t ji = 0; ji < jobs.size(); ++ji) {
    if (!progress[ji].released) continue;
    const JobDag& dag = jobs[ji];
    std::vector<double> eg(fabric.num_machines, 0.0);
    std::vector<double> in(fabric.num_machines, 0.0);
    bool any = false;
    for (const Flow& f : dag.flows()) {
      if (f.size_remaining <= 0.0) continue;
      eg[f.src] += f.size_remaining;
      in[f.dst] += f.size_remaining;
      any = true;
    }
    if (!any) continue;
    double bottleneck = 0.0;
    for (int m = 0; m < fabric.num_machines; ++m)
      bottleneck = std::max({bottleneck, eg[m] / fabric.port_capacity,
                             in[m] / fabric.port_capacity});
    order.push_back({static_cast<int>(ji), dag.id(), -1, dag.release_time(),
                     {GainKind::kIndirect, bottleneck}});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const RankedMetaflow& a, const RankedMetaflow& b) {
                     if (a.gain.value != b.gain.value)
                       return a.gain.value < b.gain.value;
                     if (a.release_time != b.release_time)
                       return a.release_time < b.release_time;
                     return a.job_id < b.job_id;
                   });

  PortTable residual = full_capacity(fabric);
  std::vector<FlowPorts> snap = snapshot_flows(jobs);
  std::vector<int> priority_order;

  for (const RankedMetaflow& e : order) {
    const JobDag& dag = jobs[e.job_index];
    std::vector<int> globals;
    std::vector<FlowPorts> group;
    for (size_t pos = 0; pos < dag.flows().size(); ++pos) {
      const Flow& f = dag.flows()[pos];
      if (f.size_remaining <= 0.0) continue;
      globals.push_back(index.global_of(e.job_index, static_cast<int>(pos)));
      group.push_back({f.src, f.dst, f.size_remaining});
    }
    priority_order.insert(priority_order.end(), globals.begin(), globals.end());
    MaddResult res = madd_rates(group, residual);
    if (!res.blocked())
      commit_group(globals, group, res.rates, residual, decision.allocation);
  }

  backfill(priority_order, snap, residual, decision.allocation);

  decision.ordered = std::move(order);
  return decision;
}

ScheduleDecision fair_schedule(const SchedulerState& state,
                               const ScheduleOptions&) {
  const std::vector<JobDag>& jobs = *state.jobs;
  const std::vector<JobProgress>& progress = *state.progress;
  const Fabric& fabric = *state.fabric;
  FlowIndex index(jobs);

  ScheduleDecision decision;
  decision.allocation.rates.assign(index.total(), 0.0);
  std::vector<FlowPorts> snap = snapshot_flows(jobs);

  std::vector<int> free;
  for (size_t ji = 0; ji < jobs.size(); ++ji) {
    if (!progress[ji].released) continue;
    for (size_t pos = 0; pos < jobs[ji].flows().size(); ++pos)
      if (jobs[ji].flows()[pos].size_remaining > 0.0)
        free.push_back(index.global_of(static_cast<int>(ji),
                                       static_cast<int>(pos)));
  }

  PortTable residual = full_capacity(fabric);
  while (!free.empty()) {
    std::vector<int> eg_count(fabric.num_machines, 0);
    std::vector<int> in_count(fabric.num_machines, 0);
    for (int g : free) {
      ++eg_count[snap[g].src];
      ++in_count[snap[g].dst];
    }
    double lambda = std::numeric_limits<double>::infinity();
    for (int m = 0; m < fabric.num_machines; ++m) {
      if (eg_count[m] > 0)
        lambda = std::min(lambda, residual.egress[m] / eg_count[m]);
      if (in_count[m] > 0)
        lambda = std::min(lambda, residual.ingress[m] / in_count[m]);
    }
    for (int g : free) decision.allocation.rates[g] += lambda;
    for (int m = 0; m < fabric.num_machines; ++m) {
      if (eg_count[m] > 0)
        residual.egress[m] =
            std::max(0.0, residual.egress[m] - lambda * eg_count[m]);
      if (in_count[m] > 0)
        residual.ingress[m] =
            std::max(0.0, residual.ingress[m] - lambda * in_count[m]);
    }
    std::vector<int> still_free;
    for (int g : free)
      if (residual.egress[snap[g].src] > kEps &&
          residual.ingress[snap[g].dst] > kEps)
        still_free.push_back(g);
    if (still_free.size() == free.size()) break;  // defensive; cannot happen
    free = std::move(still_free);
  }

  return decision;
}

SchedulerKind scheduler_from_name(std::string_view name) {
  if (name == "msa") return SchedulerKind::kMsa;
  if (name == "varys") return SchedulerKind::kVarys;
  if (name == "fair") return SchedulerKind::kFair;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) +
                              "' (expected msa, varys, or fair)");
}

std::string_view scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::kMsa: return "msa";
    case SchedulerKind::kVarys: return "varys";
    case SchedulerKind::kFair: return "fair";
  }
  return "?";
}

ScheduleDecision schedule(SchedulerKind kind, const SchedulerState& state,
                          const ScheduleOptions& opts) {
  switch (kind) {
    case SchedulerKind::kMsa: return msa_schedule(state, opts);
    case SchedulerKind::kVarys: return varys_schedule(state, opts);
    case SchedulerKind::kFair: return fair_schedule(state, opts);
  }
  throw std::invalid_argument("unknown scheduler kind");
}

}  // namespace mfsim
