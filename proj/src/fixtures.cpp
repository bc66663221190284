#include "mfsim/fixtures.hpp"

namespace mfsim {

MotivationFixture motivation_fixture() {
  MotivationFixture fx;
  fx.fabric = make_fabric(3, 1.0);

  {
    std::vector<ComputeTask> tasks{{11, 0, 3.0, {1}, {}}};
    std::vector<MetaflowSpec> metaflows{{1, 11}};
    std::vector<Flow> flows{{1, 1, 1, 0, 3.0, 3.0}};
    fx.jobs.push_back(JobDag::build(1, 0.0, tasks, metaflows, flows));
  }
  {
    std::vector<ComputeTask> tasks{
        {21, 2, 3.0, {1}, {}},
        {22, 2, 3.0, {2}, {21}},
    };
    std::vector<MetaflowSpec> metaflows{{1, 21}, {2, 22}};
    std::vector<Flow> flows{
        {1, 1, 1, 2, 1.0, 1.0},
        {2, 2, 0, 2, 3.0, 3.0},
    };
    fx.jobs.push_back(JobDag::build(2, 0.0, tasks, metaflows, flows));
  }
  return fx;
}

StagedJobFixture staged_job_fixture() {
  StagedJobFixture fx;
  fx.fabric = make_fabric(6, 1.0);

  std::vector<ComputeTask> tasks{
      {1, 4, 5.0, {1}, {}},
      {2, 5, 4.0, {2}, {}},
      {3, 4, 6.0, {3}, {1}},
      {4, 5, 2.0, {4}, {2, 3}},
  };
  std::vector<MetaflowSpec> metaflows{{1, 1}, {2, 2}, {3, 3}, {4, 4}};
  std::vector<Flow> flows{
      {1, 1, 0, 4, 1.0, 1.0},
      {2, 1, 1, 4, 2.0, 2.0},
      {3, 2, 2, 5, 2.0, 2.0},
      {4, 2, 3, 5, 3.0, 3.0},
      {5, 3, 0, 4, 1.0, 1.0},
      {6, 3, 1, 4, 1.0, 1.0},
      {7, 4, 2, 5, 2.0, 2.0},
      {8, 4, 3, 5, 2.0, 2.0},
  };
  fx.job = JobDag::build(7, 0.0, tasks, metaflows, flows);
  return fx;
}

}  // namespace mfsim
