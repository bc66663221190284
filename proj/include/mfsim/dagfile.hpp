#pragma once

#include <string>
#include <string_view>

#include "mfsim/model.hpp"

namespace mfsim {

// Plain-text form of one job DAG. '#' starts a comment, blank lines are
// ignored, machine and entity ids are written as stored (0-based machines).
//
//   JOB <id>
//   RELEASE <seconds>
//   TASKS <n>
//   <id> <machine> <load> <k> <metaflow_dep..k> <j> <task_dep..j>   (n rows)
//   METAFLOWS <n>
//   <id> <consumer_task>                                            (n rows)
//   FLOWS <n>
//   <id> <metaflow> <src> <dst> <size>                              (n rows)
std::string write_job_dag(const JobDag& dag);

// Inverse of write_job_dag; validates through JobDag::build. Throws
// std::runtime_error naming the offending line.
JobDag parse_job_dag(std::string_view text);

JobDag load_job_dag(const std::string& path);
void save_job_dag(const JobDag& dag, const std::string& path);

}  // namespace mfsim
