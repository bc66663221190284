#include "mfsim/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mfsim {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void append_report(ExperimentResults& results, const std::string& scheduler,
                   const SimReport& report) {
  for (const JobRecord& j : report.per_job)
    results.rows.push_back({scheduler, j.job_id, j.release, j.cct, j.jct});
  results.aggregates.push_back({scheduler, report.avg_cct, report.avg_jct});
}

void add_speedup(ExperimentResults& results, const std::string& numerator,
                 const std::string& denominator) {
  const SchedulerAggregate* num = nullptr;
  const SchedulerAggregate* den = nullptr;
  for (const SchedulerAggregate& a : results.aggregates) {
    if (a.scheduler == numerator) num = &a;
    if (a.scheduler == denominator) den = &a;
  }
  if (!num || !den) return;
  if (den->avg_jct <= 0.0) return;
  results.speedups.emplace_back(numerator + "/" + denominator,
                                num->avg_jct / den->avg_jct);
}

std::string to_csv(const ExperimentResults& results) {
  std::ostringstream out;
  out << "scheduler,job_id,release,cct,jct\n";
  for (const ResultRow& r : results.rows)
    out << r.scheduler << ',' << r.job_id << ',' << fixed6(r.release) << ','
        << fixed6(r.cct) << ',' << fixed6(r.jct) << '\n';
  for (const SchedulerAggregate& a : results.aggregates)
    out << "#avg," << a.scheduler << ",," << fixed6(a.avg_cct) << ','
        << fixed6(a.avg_jct) << '\n';
  for (const auto& [label, value] : results.speedups)
    out << "#speedup," << label << ",,," << fixed6(value) << '\n';
  return out.str();
}

std::string to_text(const ExperimentResults& results,
                    const std::vector<std::pair<std::string, SimReport>>&
                        reports_by_scheduler) {
  std::ostringstream out;
  for (const auto& [name, report] : reports_by_scheduler) {
    out << "== " << name << " ==\n";
    for (const SimEvent& e : report.events)
      out << "  " << fixed6(e.time) << ' ' << event_kind_name(e.kind)
          << " job=" << e.job_id << " entity=" << e.entity_id << '\n';
    for (const JobRecord& j : report.per_job)
      out << "  job " << j.job_id << " release=" << fixed6(j.release)
          << " cct=" << fixed6(j.cct) << " jct=" << fixed6(j.jct) << '\n';
  }
  for (const SchedulerAggregate& a : results.aggregates)
    out << "avg " << a.scheduler << " cct=" << fixed6(a.avg_cct)
        << " jct=" << fixed6(a.avg_jct) << '\n';
  for (const auto& [label, value] : results.speedups)
    out << "speedup " << label << " = " << fixed6(value) << '\n';
  return out.str();
}

}  // namespace mfsim
