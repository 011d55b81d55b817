// rocover: generate instances, run the online algorithm, sweep grids of
// random instances, compute offline baselines and run the property suites.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rocover/baselines.h"
#include "rocover/errors.h"
#include "rocover/framework.h"
#include "rocover/harness.h"
#include "rocover/instances.h"
#include "rocover/verify.h"

namespace rocover {
namespace {

// Relative output paths resolve against $ROCOVER_OUT_DIR when it is set.
std::string OutputPath(const std::string& path) {
  const char* dir = std::getenv("ROCOVER_OUT_DIR");
  std::filesystem::path p(path);
  if (dir == nullptr || *dir == '\0' || p.is_absolute()) return path;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / p).string();
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  return out;
}

struct EstSpec {
  std::optional<EstMode> mode;  // nullopt: auto
  double fixed = 0.0;
};

EstSpec ParseEstMode(const std::string& text, bool allow_auto) {
  if (text == "integral") return {EstMode::kIntegral, 0.0};
  if (text == "lp") return {EstMode::kLp, 0.0};
  if (allow_auto && text == "auto") return {std::nullopt, 0.0};
  if (text.rfind("fixed:", 0) == 0) {
    const std::string value = text.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("--est-mode fixed:<value> needs a positive number");
    }
    return {EstMode::kFixed, v};
  }
  throw InvalidArgument("--est-mode must be integral, lp" +
                        std::string(allow_auto ? ", auto" : "") +
                        " or fixed:<value>");
}

std::vector<SweepCell> ParseGrid(const std::string& text) {
  std::vector<SweepCell> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto x = item.find('x');
    SweepCell cell;
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      cell.n = std::stoul(item.substr(0, x));
      cell.m = std::stoul(item.substr(x + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("--grid entries look like 20x20, got '" + item + "'");
    }
    if (cell.n == 0 || cell.m == 0) throw InvalidArgument("grid sizes must be >= 1");
    grid.push_back(cell);
  }
  if (grid.empty()) throw InvalidArgument("--grid is empty");
  return grid;
}

std::vector<ElementId> ParseSubset(const std::string& text, std::size_t n) {
  std::vector<ElementId> subset;
  if (text == "all") {
    subset.resize(n);
    std::iota(subset.begin(), subset.end(), ElementId{0});
    return subset;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    long long v = -1;
    try {
      v = std::stoll(item);
    } catch (const std::exception&) {
    }
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw InvalidArgument("--subset entry '" + item + "' is not an element id");
    }
    subset.push_back(static_cast<ElementId>(v));
  }
  return subset;
}

std::string MetaLine(const InstanceFile& file) {
  std::ostringstream out;
  out << "problem=" << ProblemKindName(file.kind())
      << " elements=" << file.num_elements()
      << " resources=" << file.num_resources();
  if (!file.meta.name.empty()) out << " name=" << file.meta.name;
  if (!file.meta.generator.empty()) out << " generator=" << file.meta.generator;
  if (file.meta.seed) out << " seed=" << *file.meta.seed;
  for (const auto& [k, v] : file.meta.params) out << ' ' << k << '=' << FormatReal(v);
  return out.str();
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string problem = "setcover";
  std::string family = "random";
  std::size_t n = 20;
  std::size_t m = 20;
  std::optional<double> density;
  double cost_lo = 1.0;
  double cost_hi = 10.0;
  double a_lo = 0.1;
  double a_hi = 1.0;
  double dist_lo = 0.0;
  double dist_hi = 10.0;
  int max_demand = 3;
  double big_cost = 0.0;
  double ratio = 64.0;
  std::size_t members = 2;
  std::uint64_t seed = 0;
  std::string out;
};

int CmdGen(const GenArgs& a) {
  const ProblemKind kind = ParseProblemKind(a.problem);
  InstanceFile file;
  if (a.family == "singletons-big") {
    if (kind != ProblemKind::kSetCover) {
      throw InvalidArgument("family singletons-big is a set cover family");
    }
    file = GenSingletonsPlusBig(a.n, a.big_cost > 0.0
                                         ? a.big_cost
                                         : std::sqrt(static_cast<double>(a.n)));
  } else if (a.family == "cost-gradient") {
    if (kind != ProblemKind::kSetCover) {
      throw InvalidArgument("family cost-gradient is a set cover family");
    }
    file = GenCostGradient(a.n, a.m, a.ratio, a.members, a.seed);
  } else if (a.family == "random") {
    switch (kind) {
      case ProblemKind::kSetCover:
        file = GenSetCover({a.n, a.m, a.density.value_or(0.1), a.cost_lo,
                            a.cost_hi, a.seed});
        break;
      case ProblemKind::kMulticover:
        file = GenMulticover({a.n, a.m, a.density.value_or(0.2), a.max_demand,
                              a.seed});
        break;
      case ProblemKind::kCip:
        file = GenCip({a.n, a.m, a.density.value_or(0.2), a.a_lo, a.a_hi,
                       a.cost_lo, a.cost_hi, a.seed});
        break;
      case ProblemKind::kNmfl:
        file = GenNmfl({a.n, a.m, a.cost_lo, a.cost_hi, a.dist_lo, a.dist_hi,
                        a.seed});
        break;
    }
  } else {
    throw InvalidArgument("unknown --family '" + a.family + "'");
  }
  std::string path = a.out;
  if (path.empty()) {
    path = (file.meta.name.empty() ? std::string(ProblemKindName(kind))
                                   : file.meta.name) +
           ".json";
  }
  path = OutputPath(path);
  SaveInstance(file, path);
  std::cout << path << '\n' << MetaLine(file) << '\n';
  return kExitOk;
}

struct RunArgs {
  std::string instance;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> order_seed;
  double eta = 0.5;
  std::string est_mode = "integral";
  std::string out;
  bool record_phi = false;
  std::string accounting = "realized";
  std::vector<long long> warm_start;
  std::string baseline = "auto";
  double eps = 0.01;
};

int CmdRun(const RunArgs& a) {
  const InstanceFile file = LoadInstance(a.instance);
  RunOptions ro;
  const EstSpec est = ParseEstMode(a.est_mode, false);
  ro.config.eta = a.eta;
  ro.config.seed = a.seed;
  ro.config.est_mode = *est.mode;
  ro.config.fixed_est = est.fixed;
  ro.config.record_potential = a.record_phi;
  for (long long r : a.warm_start) {
    if (r < 0 || static_cast<std::size_t>(r) >= file.num_resources()) {
      throw InvalidArgument("--warm-start id " + std::to_string(r) +
                            " is not a resource");
    }
    ro.config.warm_start.push_back(static_cast<ResourceId>(r));
  }
  ro.order_seed = a.order_seed.value_or(a.seed);
  if (a.accounting == "realized") {
    ro.accounting = Accounting::kRealized;
  } else if (a.accounting == "planned") {
    ro.accounting = Accounting::kPlanned;
  } else {
    throw InvalidArgument("--accounting must be realized or planned");
  }
  static const std::map<std::string, RatioBaseline> kBaselines = {
      {"auto", RatioBaseline::kAuto},     {"integral", RatioBaseline::kIntegral},
      {"lp", RatioBaseline::kLp},         {"greedy", RatioBaseline::kGreedy},
      {"none", RatioBaseline::kNone}};
  const auto it = kBaselines.find(a.baseline);
  if (it == kBaselines.end()) {
    throw InvalidArgument("--baseline must be auto, integral, lp, greedy or none");
  }
  ro.ratio_baseline = it->second;
  ro.lp_eps = a.eps;
  const RunReport report = RunInstance(file, ro);
  if (!a.out.empty()) {
    const std::string path = OutputPath(a.out);
    std::ofstream out = OpenOut(path);
    WriteTraceCsv(out, report.result.trace);
  }
  std::cout << SummaryLine(report) << '\n';
  return kExitOk;
}

struct SweepArgs {
  std::string problem = "setcover";
  std::string grid = "20x20";
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string est_mode = "auto";
  double eta = 0.5;
  bool record_phi = false;
  std::string baseline = "auto";
  double per_element = 3.0;
  std::size_t jobs = 1;
  std::string out = "sweep.csv";
};

int CmdSweep(const SweepArgs& a) {
  SweepSpec spec;
  spec.kind = ParseProblemKind(a.problem);
  spec.grid = ParseGrid(a.grid);
  if (a.trials == 0) throw InvalidArgument("--trials must be >= 1");
  spec.trials = a.trials;
  spec.seed = a.seed;
  const EstSpec est = ParseEstMode(a.est_mode, true);
  spec.est_mode = est.mode;
  spec.fixed_est = est.fixed;
  spec.eta = a.eta;
  spec.record_phi = a.record_phi;
  spec.per_element = a.per_element;
  spec.jobs = std::max<std::size_t>(1, a.jobs);
  if (a.baseline == "auto") {
    spec.ratio_baseline = RatioBaseline::kAuto;
  } else if (a.baseline == "integral") {
    spec.ratio_baseline = RatioBaseline::kIntegral;
  } else if (a.baseline == "lp") {
    spec.ratio_baseline = RatioBaseline::kLp;
  } else {
    throw InvalidArgument("--baseline must be auto, integral or lp for sweeps");
  }
  const SweepResult result = Sweep(spec);
  const std::string path = OutputPath(a.out);
  {
    std::ofstream out = OpenOut(path);
    WriteSweepCsv(out, result);
  }
  std::size_t failed = 0;
  for (const RatioRecord& r : result.records) failed += r.ok() ? 0 : 1;
  std::cout << path << '\n';
  for (const CellSummary& c : result.cells) {
    std::cout << c.cell.n << 'x' << c.cell.m << " ok=" << c.ok_trials
              << " mean_ratio=" << FormatReal(c.mean_ratio)
              << " mean_ratio_over_log_mn=" << FormatReal(c.mean_normalized)
              << " p90_ratio=" << FormatReal(c.p90_ratio) << '\n';
  }
  if (failed) std::cout << "failed_runs=" << failed << '\n';
  return kExitOk;
}

struct BaselineArgs {
  std::string instance;
  std::string which = "integral";
  double eps = 0.01;
  std::string subset = "all";
  std::string out;
};

int CmdBaseline(const BaselineArgs& a) {
  const InstanceFile file = LoadInstance(a.instance);
  BaselineKind kind;
  if (a.which == "integral") {
    kind = BaselineKind::kIntegral;
  } else if (a.which == "lp") {
    kind = BaselineKind::kLp;
  } else if (a.which == "greedy") {
    kind = BaselineKind::kGreedy;
  } else {
    throw InvalidArgument("--which must be integral, lp or greedy");
  }
  const std::vector<ElementId> subset = ParseSubset(a.subset, file.num_elements());
  const BaselineResult r = ComputeBaseline(file, kind, subset, a.eps);
  std::cout << "value=" << FormatReal(r.value) << " exact=" << (r.exact ? 1 : 0)
            << " eps=" << FormatReal(r.eps)
            << " lower_bound=" << FormatReal(r.lower_bound) << '\n';
  if (!a.out.empty()) {
    nlohmann::ordered_json doc;
    doc["kind"] = std::string(BaselineKindName(r.kind));
    doc["value"] = r.value;
    doc["exact"] = r.exact;
    doc["eps"] = r.eps;
    doc["lower_bound"] = r.lower_bound;
    doc["subset"] = subset;
    doc["witness"] = r.witness;
    const std::string path = OutputPath(a.out);
    std::ofstream out = OpenOut(path);
    out << doc.dump(1) << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  double budget = 1.0;
  std::uint64_t seed = 0;
};

int CmdVerify(const VerifyArgs& a) {
  if (!(a.budget > 0.0)) throw InvalidArgument("--budget must be positive");
  const std::vector<SuiteReport> reports =
      RunSuites(a.suite, VerifyOptions{a.budget, a.seed});
  bool ok = true;
  for (const SuiteReport& r : reports) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " ("
              << FormatReal(r.seconds) << " s)";
    for (const std::string& s : r.stats) std::cout << ' ' << s;
    std::cout << '\n';
    if (!r.passed) {
      ok = false;
      std::cout << "  property: " << r.failure << '\n'
                << "  reproduce: rocover verify --suite " << r.name
                << " --seed " << a.seed << " --budget " << FormatReal(a.budget);
      if (r.failing_case) std::cout << "  (case " << *r.failing_case << ')';
      std::cout << '\n';
    }
  }
  return ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace
}  // namespace rocover

int main(int argc, char** argv) {
  using namespace rocover;
  CLI::App app{"Random-order online covering: instances, runs, sweeps, baselines"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an instance document");
  g->add_option("--problem", gen.problem, "setcover, multicover, cip or nmfl");
  g->add_option("--family", gen.family, "random, singletons-big or cost-gradient");
  g->add_option("--n", gen.n, "Elements (clients for nmfl)");
  g->add_option("--m", gen.m, "Resources (facilities for nmfl)");
  g->add_option("--density", gen.density, "Membership probability");
  g->add_option("--cost-lo", gen.cost_lo);
  g->add_option("--cost-hi", gen.cost_hi);
  g->add_option("--a-lo", gen.a_lo, "cip: smallest positive entry");
  g->add_option("--a-hi", gen.a_hi, "cip: largest entry");
  g->add_option("--dist-lo", gen.dist_lo);
  g->add_option("--dist-hi", gen.dist_hi);
  g->add_option("--max-demand", gen.max_demand, "multicover demand cap");
  g->add_option("--big-cost", gen.big_cost, "singletons-big: cost of the big set");
  g->add_option("--ratio", gen.ratio, "cost-gradient: max/min cost ratio");
  g->add_option("--members", gen.members, "cost-gradient: sets per element");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "Output path");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run the online algorithm on an instance");
  r->add_option("instance", run.instance)->required();
  r->add_option("--seed", run.seed, "Sampling seed");
  r->add_option("--order-seed", run.order_seed, "Arrival order seed (default: --seed)");
  r->add_option("--eta", run.eta);
  r->add_option("--est-mode", run.est_mode, "integral, lp or fixed:<value>");
  r->add_option("--out", run.out, "Trace CSV path");
  r->add_flag("--record-phi", run.record_phi, "Record the potential in the trace");
  r->add_option("--accounting", run.accounting, "realized or planned backup cost");
  r->add_option("--warm-start", run.warm_start, "Resources held before arrivals")
      ->delimiter(',');
  r->add_option("--baseline", run.baseline, "auto, integral, lp, greedy or none");
  r->add_option("--eps", run.eps, "LP relative gap");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Run a grid of random instances");
  s->add_option("--problem", sweep.problem);
  s->add_option("--grid", sweep.grid, "Comma-separated n x m cells, e.g. 20x20,50x50");
  s->add_option("--trials", sweep.trials);
  s->add_option("--seed", sweep.seed);
  s->add_option("--est-mode", sweep.est_mode, "auto, integral, lp or fixed:<value>");
  s->add_option("--eta", sweep.eta);
  s->add_flag("--record-phi", sweep.record_phi);
  s->add_option("--baseline", sweep.baseline, "auto, integral or lp");
  s->add_option("--per-element", sweep.per_element, "Expected resources per element");
  s->add_option("--jobs", sweep.jobs, "Worker threads");
  s->add_option("--out", sweep.out, "Ratio CSV path");

  BaselineArgs base;
  auto* b = app.add_subcommand("baseline", "Compute an offline baseline");
  b->add_option("instance", base.instance)->required();
  b->add_option("--which", base.which, "integral, lp or greedy");
  b->add_option("--eps", base.eps, "LP relative gap");
  b->add_option("--subset", base.subset, "Element ids (comma-separated) or all");
  b->add_option("--out", base.out, "Witness JSON path");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run property suites");
  v->add_option("--suite", ver.suite, "Suite name or all");
  v->add_option("--budget", ver.budget, "Case count multiplier");
  v->add_option("--seed", ver.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*g) return CmdGen(gen);
    if (*r) return CmdRun(run);
    if (*s) return CmdSweep(sweep);
    if (*b) return CmdBaseline(base);
    if (*v) return CmdVerify(ver);
  } catch (const Error& e) {
    std::cerr << "rocover: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "rocover: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
