#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfsim/engine.hpp"

namespace mfsim {

// Per-job results of one experiment, possibly across several schedulers.
struct ResultRow {
  std::string scheduler;
  int job_id = 0;
  double release = 0.0;
  double cct = 0.0;
  double jct = 0.0;
};

struct SchedulerAggregate {
  std::string scheduler;
  double avg_cct = 0.0;
  double avg_jct = 0.0;
};

struct ExperimentResults {
  std::vector<ResultRow> rows;
  std::vector<SchedulerAggregate> aggregates;
  // (label, value), e.g. ("varys/msa", 1.42) for a JCT speedup.
  std::vector<std::pair<std::string, double>> speedups;
};

// Appends per-job rows and the aggregate for one scheduler's report.
void append_report(ExperimentResults& results, const std::string& scheduler,
                   const SimReport& report);

// Adds avg-JCT ratios between aggregates when both names are present.
void add_speedup(ExperimentResults& results, const std::string& numerator,
                 const std::string& denominator);

// CSV with a fixed header, one row per job, then '#'-prefixed aggregate and
// speedup rows. All numbers fixed six-decimal, so identical results render
// byte-identically.
//
//   scheduler,job_id,release,cct,jct
//   msa,3,0.000000,4.000000,7.000000
//   #avg,msa,,4.000000,7.000000
//   #speedup,varys/msa,,,1.140000
std::string to_csv(const ExperimentResults& results);

// Readable text form: events (when recorded), per-job lines, aggregates.
std::string to_text(const ExperimentResults& results,
                    const std::vector<std::pair<std::string, SimReport>>&
                        reports_by_scheduler);

}  // namespace mfsim
