#include "mfsim/dagfile.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mfsim {

namespace {

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : in_(std::string(text)) {}

  // Next token, skipping blanks and '#' comments. Empty at end of input.
  std::string next() {
    while (true) {
      if (pos_ >= line_.size()) {
        if (!std::getline(in_, line_)) return {};
        ++line_no_;
        if (size_t hash = line_.find('#'); hash != std::string::npos)
          line_.resize(hash);
        pos_ = 0;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(line_[pos_]))) {
        ++pos_;
        continue;
      }
      size_t start = pos_;
      while (pos_ < line_.size() &&
             !std::isspace(static_cast<unsigned char>(line_[pos_])))
        ++pos_;
      return line_.substr(start, pos_ - start);
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("dag file line " + std::to_string(line_no_) +
                             ": " + what);
  }

  std::string expect(const char* what) {
    std::string tok = next();
    if (tok.empty()) fail(std::string("unexpected end of file, wanted ") + what);
    return tok;
  }

  long long expect_int(const char* what) {
    std::string tok = expect(what);
    try {
      size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(std::string("bad ") + what + " '" + tok + "'");
    }
  }

  double expect_num(const char* what) {
    std::string tok = expect(what);
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(std::string("bad ") + what + " '" + tok + "'");
    }
  }

  void expect_keyword(const char* kw) {
    std::string tok = expect(kw);
    if (tok != kw) fail("expected '" + std::string(kw) + "', got '" + tok + "'");
  }

 private:
  std::istringstream in_;
  std::string line_;
  size_t pos_ = 0;
  int line_no_ = 0;
};

}  // namespace

std::string write_job_dag(const JobDag& dag) {
  std::ostringstream out;
  out << "JOB " << dag.id() << '\n';
  out << "RELEASE " << fmt_num(dag.release_time()) << '\n';
  out << "TASKS " << dag.tasks().size() << '\n';
  if (!dag.tasks().empty())
    out << "# id machine load n_metaflow_deps... n_task_deps...\n";
  for (const ComputeTask& t : dag.tasks()) {
    out << t.id << ' ' << t.machine << ' ' << fmt_num(t.load) << ' '
        << t.metaflow_deps.size();
    for (int m : t.metaflow_deps) out << ' ' << m;
    out << ' ' << t.task_deps.size();
    for (int d : t.task_deps) out << ' ' << d;
    out << '\n';
  }
  out << "METAFLOWS " << dag.metaflows().size() << '\n';
  if (!dag.metaflows().empty()) out << "# id consumer_task\n";
  for (const Metaflow& mf : dag.metaflows())
    out << mf.id << ' ' << mf.consumer_task << '\n';
  out << "FLOWS " << dag.flows().size() << '\n';
  if (!dag.flows().empty()) out << "# id metaflow src dst size\n";
  for (const Flow& f : dag.flows())
    out << f.id << ' ' << f.metaflow << ' ' << f.src << ' ' << f.dst << ' '
        << fmt_num(f.size_total) << '\n';
  return out.str();
}

JobDag parse_job_dag(std::string_view text) {
  TokenReader r(text);
  r.expect_keyword("JOB");
  int job_id = static_cast<int>(r.expect_int("job id"));
  r.expect_keyword("RELEASE");
  double release = r.expect_num("release time");

  r.expect_keyword("TASKS");
  long long n_tasks = r.expect_int("task count");
  std::vector<ComputeTask> tasks;
  for (long long i = 0; i < n_tasks; ++i) {
    ComputeTask t;
    t.id = static_cast<int>(r.expect_int("task id"));
    t.machine = static_cast<int>(r.expect_int("task machine"));
    t.load = r.expect_num("task load");
    long long nm = r.expect_int("metaflow dep count");
    for (long long k = 0; k < nm; ++k)
      t.metaflow_deps.push_back(static_cast<int>(r.expect_int("metaflow dep")));
    long long nt = r.expect_int("task dep count");
    for (long long k = 0; k < nt; ++k)
      t.task_deps.push_back(static_cast<int>(r.expect_int("task dep")));
    tasks.push_back(std::move(t));
  }

  r.expect_keyword("METAFLOWS");
  long long n_mfs = r.expect_int("metaflow count");
  std::vector<MetaflowSpec> metaflows;
  for (long long i = 0; i < n_mfs; ++i) {
    MetaflowSpec mf;
    mf.id = static_cast<int>(r.expect_int("metaflow id"));
    mf.consumer_task = static_cast<int>(r.expect_int("consumer task"));
    metaflows.push_back(mf);
  }

  r.expect_keyword("FLOWS");
  long long n_flows = r.expect_int("flow count");
  std::vector<Flow> flows;
  for (long long i = 0; i < n_flows; ++i) {
    Flow f;
    f.id = static_cast<int>(r.expect_int("flow id"));
    f.metaflow = static_cast<int>(r.expect_int("flow metaflow"));
    f.src = static_cast<int>(r.expect_int("flow src"));
    f.dst = static_cast<int>(r.expect_int("flow dst"));
    f.size_total = r.expect_num("flow size");
    f.size_remaining = f.size_total;
    flows.push_back(f);
  }

  std::string extra = r.next();
  if (!extra.empty()) r.fail("trailing content '" + extra + "'");

  try {
    return JobDag::build(job_id, release, std::move(tasks),
                         std::move(metaflows), std::move(flows));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("dag file: ") + e.what());
  }
}

JobDag load_job_dag(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dag file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_dag(buf.str());
}

void save_job_dag(const JobDag& dag, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dag file " + path);
  out << write_job_dag(dag);
  if (!out) throw std::runtime_error("failed writing dag file " + path);
}

}  // namespace mfsim
