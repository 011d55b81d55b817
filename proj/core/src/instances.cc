#include "rocover/instances.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rocover/errors.h"
#include "rocover/rng.h"

namespace rocover {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t idx(std::int64_t v) { return static_cast<std::size_t>(v); }

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

void CheckKeys(const json& j, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) Fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

const json& Field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    Fail(path.empty() ? key : path + "." + key, "missing required field");
  }
  return *it;
}

std::string Sub(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}
std::string Sub(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::uint64_t AsIndex(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < 0 &&
                                 !j.is_number_unsigned())) {
    Fail(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

double AsReal(const json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  return j.get<double>();
}

double AsPositive(const json& j, const std::string& path) {
  const double v = AsReal(j, path);
  if (!(v > 0.0) || !std::isfinite(v)) Fail(path, "must be positive and finite");
  return v;
}

const json& AsArray(const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

std::size_t CheckedIndex(const json& j, const std::string& path,
                         std::size_t bound, const char* what) {
  const std::uint64_t v = AsIndex(j, path);
  if (v >= bound) {
    Fail(path, std::string(what) + " index " + std::to_string(v) +
                   " out of range [0, " + std::to_string(bound) + ")");
  }
  return static_cast<std::size_t>(v);
}

std::string LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  // nlohmann reports the byte after the offending token.
  if (col > 1) --col;
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

SetSystem ParseSets(const json& doc, std::size_t n, std::size_t m,
                    bool unit_costs) {
  const json& sets = AsArray(Field(doc, "", "sets"), "sets");
  if (sets.size() != m) {
    Fail("sets", "has " + std::to_string(sets.size()) + " entries but m = " +
                     std::to_string(m));
  }
  std::vector<std::vector<ElementId>> members(m);
  std::vector<double> costs(m);
  for (std::size_t s = 0; s < m; ++s) {
    const std::string path = Sub("sets", s);
    CheckKeys(sets[s], path, {"cost", "elements"});
    costs[s] = AsPositive(Field(sets[s], path, "cost"), Sub(path, "cost"));
    if (unit_costs && costs[s] != 1.0) {
      Fail(Sub(path, "cost"), "multicover sets must have unit cost");
    }
    const std::string epath = Sub(path, "elements");
    const json& elems = AsArray(Field(sets[s], path, "elements"), epath);
    std::vector<char> seen(n, 0);
    for (std::size_t k = 0; k < elems.size(); ++k) {
      const std::size_t e = CheckedIndex(elems[k], Sub(epath, k), n, "element");
      if (seen[e]) Fail(Sub(epath, k), "duplicate element");
      seen[e] = 1;
      members[s].push_back(static_cast<ElementId>(e));
    }
  }
  return MakeSetSystem(n, std::move(members), std::move(costs));
}

InstancePayload ParsePayload(const json& doc, ProblemKind kind, std::size_t n,
                             std::size_t m) {
  switch (kind) {
    case ProblemKind::kSetCover:
      CheckKeys(doc, "", {"kind", "n", "m", "sets", "meta"});
      return ParseSets(doc, n, m, false);
    case ProblemKind::kMulticover: {
      CheckKeys(doc, "", {"kind", "n", "m", "sets", "demands", "meta"});
      SetSystem sys = ParseSets(doc, n, m, true);
      const json& dem = AsArray(Field(doc, "", "demands"), "demands");
      if (dem.size() != n) Fail("demands", "must list one demand per element");
      std::vector<int> demands(n);
      for (std::size_t e = 0; e < n; ++e) {
        const std::uint64_t b = AsIndex(dem[e], Sub("demands", e));
        if (b < 1) Fail(Sub("demands", e), "demands must be positive");
        if (b > sys.sets_of[e].size()) {
          throw InfeasibleInstance(
              Sub("demands", e) + ": demand " + std::to_string(b) +
              " exceeds the " + std::to_string(sys.sets_of[e].size()) +
              " sets containing element " + std::to_string(e));
        }
        demands[e] = static_cast<int>(b);
      }
      return MakeMulticover(std::move(sys), std::move(demands));
    }
    case ProblemKind::kCip: {
      CheckKeys(doc, "", {"kind", "n", "m", "costs", "rows", "meta"});
      const json& cj = AsArray(Field(doc, "", "costs"), "costs");
      if (cj.size() != m) Fail("costs", "must list one cost per column");
      std::vector<double> costs(m);
      for (std::size_t j = 0; j < m; ++j) {
        costs[j] = AsPositive(cj[j], Sub("costs", j));
      }
      const json& rj = AsArray(Field(doc, "", "rows"), "rows");
      if (rj.size() != n) Fail("rows", "must list one row per element");
      std::vector<std::vector<CipEntry>> rows(n);
      for (std::size_t e = 0; e < n; ++e) {
        const std::string rpath = Sub("rows", e);
        const json& row = AsArray(rj[e], rpath);
        std::vector<char> seen(m, 0);
        for (std::size_t k = 0; k < row.size(); ++k) {
          const std::string path = Sub(rpath, k);
          CheckKeys(row[k], path, {"col", "value"});
          const std::size_t col =
              CheckedIndex(Field(row[k], path, "col"), Sub(path, "col"), m,
                           "column");
          if (seen[col]) Fail(Sub(path, "col"), "duplicate column");
          seen[col] = 1;
          const double a = AsReal(Field(row[k], path, "value"), Sub(path, "value"));
          if (!(a >= 0.0 && a <= 1.0)) {
            Fail(Sub(path, "value"), "A entries must lie in [0,1]");
          }
          rows[e].push_back({static_cast<ResourceId>(col), a});
        }
      }
      return MakeCip(m, std::move(costs), std::move(rows));
    }
    case ProblemKind::kNmfl: {
      CheckKeys(doc, "", {"kind", "n", "m", "open_costs", "distances", "meta"});
      const json& oj = AsArray(Field(doc, "", "open_costs"), "open_costs");
      if (oj.size() != m) Fail("open_costs", "must list one cost per facility");
      std::vector<double> open(m);
      for (std::size_t i = 0; i < m; ++i) {
        open[i] = AsPositive(oj[i], Sub("open_costs", i));
      }
      const json& dj = AsArray(Field(doc, "", "distances"), "distances");
      std::vector<double> dist(m * n, kInf);
      const bool sparse = !dj.empty() && dj.front().is_object();
      if (!sparse) {
        if (dj.size() != m) {
          Fail("distances", "dense form needs one row per facility");
        }
        for (std::size_t i = 0; i < m; ++i) {
          const std::string rpath = Sub("distances", i);
          const json& row = AsArray(dj[i], rpath);
          if (row.size() != n) Fail(rpath, "needs one distance per client");
          for (std::size_t e = 0; e < n; ++e) {
            const double d = AsReal(row[e], Sub(rpath, e));
            if (!(d >= 0.0)) Fail(Sub(rpath, e), "distances must be nonnegative");
            dist[i * n + e] = d;
          }
        }
      } else {
        std::vector<char> seen(m * n, 0);
        for (std::size_t k = 0; k < dj.size(); ++k) {
          const std::string path = Sub("distances", k);
          CheckKeys(dj[k], path, {"facility", "client", "d"});
          const std::size_t i = CheckedIndex(Field(dj[k], path, "facility"),
                                             Sub(path, "facility"), m, "facility");
          const std::size_t e = CheckedIndex(Field(dj[k], path, "client"),
                                             Sub(path, "client"), n, "client");
          const double d = AsReal(Field(dj[k], path, "d"), Sub(path, "d"));
          if (!(d >= 0.0)) Fail(Sub(path, "d"), "distances must be nonnegative");
          if (seen[i * n + e]) Fail(path, "duplicate (facility, client) pair");
          seen[i * n + e] = 1;
          dist[i * n + e] = d;
        }
      }
      return MakeFacility(n, std::move(open), std::move(dist));
    }
  }
  Fail("kind", "unknown kind");
}

InstanceMeta ParseMeta(const json& doc) {
  InstanceMeta meta;
  auto it = doc.find("meta");
  if (it == doc.end()) return meta;
  const json& mj = *it;
  CheckKeys(mj, "meta", {"name", "seed", "generator", "params"});
  if (auto f = mj.find("name"); f != mj.end()) {
    if (!f->is_string()) Fail("meta.name", "expected a string");
    meta.name = f->get<std::string>();
  }
  if (auto f = mj.find("seed"); f != mj.end()) {
    meta.seed = AsIndex(*f, "meta.seed");
  }
  if (auto f = mj.find("generator"); f != mj.end()) {
    if (!f->is_string()) Fail("meta.generator", "expected a string");
    meta.generator = f->get<std::string>();
  }
  if (auto f = mj.find("params"); f != mj.end()) {
    if (!f->is_object()) Fail("meta.params", "expected an object");
    for (const auto& [key, value] : f->items()) {
      meta.params[key] = AsReal(value, "meta.params." + key);
    }
  }
  return meta;
}

std::string Num(double v) { return json(v).dump(); }

template <typename T>
std::string List(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += Num(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out + "]";
}

// Writes `items` one per line inside a JSON array.
void Block(std::ostringstream& out, const char* key,
           const std::vector<std::string>& items, bool last) {
  out << "  \"" << key << "\": [";
  if (items.empty()) {
    out << "]";
  } else {
    out << "\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
      out << "    " << items[i] << (i + 1 < items.size() ? ",\n" : "\n");
    }
    out << "  ]";
  }
  out << (last ? "\n" : ",\n");
}

bool MetaEmpty(const InstanceMeta& meta) {
  return meta.name.empty() && !meta.seed && meta.generator.empty() &&
         meta.params.empty();
}

std::vector<std::string> SetLines(const SetSystem& sys) {
  std::vector<std::string> lines;
  for (std::size_t s = 0; s < sys.num_sets(); ++s) {
    lines.push_back("{\"cost\": " + Num(sys.costs[s]) +
                    ", \"elements\": " + List(sys.sets[s]) + "}");
  }
  return lines;
}

}  // namespace

std::string_view ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kSetCover:
      return "setcover";
    case ProblemKind::kMulticover:
      return "multicover";
    case ProblemKind::kCip:
      return "cip";
    case ProblemKind::kNmfl:
      return "nmfl";
  }
  return "setcover";
}

ProblemKind ParseProblemKind(std::string_view name) {
  for (auto kind : {ProblemKind::kSetCover, ProblemKind::kMulticover,
                    ProblemKind::kCip, ProblemKind::kNmfl}) {
    if (ProblemKindName(kind) == name) return kind;
  }
  throw InvalidArgument("unknown problem kind '" + std::string(name) +
                        "' (expected setcover, multicover, cip or nmfl)");
}

std::size_t InstanceFile::num_elements() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SetSystem>) return p.num_elements;
        if constexpr (std::is_same_v<T, MulticoverInstance>) {
          return p.system.num_elements;
        }
        if constexpr (std::is_same_v<T, CipInstance>) return p.num_rows;
        if constexpr (std::is_same_v<T, FacilityInstance>) return p.num_clients;
      },
      payload);
}

std::size_t InstanceFile::num_resources() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SetSystem>) return p.num_sets();
        if constexpr (std::is_same_v<T, MulticoverInstance>) {
          return p.system.num_sets();
        }
        if constexpr (std::is_same_v<T, CipInstance>) return p.num_cols();
        if constexpr (std::is_same_v<T, FacilityInstance>) {
          return p.num_facilities();
        }
      },
      payload);
}

InstanceFile ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    std::string what = err.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..."
    // prefix in favour of a line and column.
    if (auto pos = what.find(": syntax error"); pos != std::string::npos) {
      what = what.substr(pos + 2);
    }
    throw ParseError(LineColumn(text, err.byte) + ": " + what);
  }
  if (!doc.is_object()) Fail("(document)", "expected a JSON object");
  const json& kind_field = Field(doc, "", "kind");
  if (!kind_field.is_string()) Fail("kind", "expected a string");
  ProblemKind kind;
  try {
    kind = ParseProblemKind(kind_field.get<std::string>());
  } catch (const InvalidArgument& err) {
    Fail("kind", err.what());
  }
  const std::size_t n = AsIndex(Field(doc, "", "n"), "n");
  const std::size_t m = AsIndex(Field(doc, "", "m"), "m");
  InstanceFile file;
  try {
    file.payload = ParsePayload(doc, kind, n, m);
  } catch (const InfeasibleInstance&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& err) {
    throw ParseError(std::string("(instance): ") + err.what());
  }
  file.meta = ParseMeta(doc);
  return file;
}

InstanceFile LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

std::string SerializeInstance(const InstanceFile& file) {
  std::ostringstream out;
  const bool meta = !MetaEmpty(file.meta);
  out << "{\n  \"kind\": \"" << ProblemKindName(file.kind()) << "\",\n";
  out << "  \"n\": " << file.num_elements() << ",\n";
  out << "  \"m\": " << file.num_resources() << ",\n";
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SetSystem>) {
          Block(out, "sets", SetLines(p), !meta);
        } else if constexpr (std::is_same_v<T, MulticoverInstance>) {
          Block(out, "sets", SetLines(p.system), false);
          out << "  \"demands\": " << List(p.demands) << (meta ? ",\n" : "\n");
        } else if constexpr (std::is_same_v<T, CipInstance>) {
          out << "  \"costs\": " << List(p.costs) << ",\n";
          std::vector<std::string> rows;
          for (const auto& row : p.rows) {
            std::string line = "[";
            for (std::size_t k = 0; k < row.size(); ++k) {
              if (k) line += ", ";
              line += "{\"col\": " + std::to_string(row[k].col) +
                      ", \"value\": " + Num(row[k].value) + "}";
            }
            rows.push_back(line + "]");
          }
          Block(out, "rows", rows, !meta);
        } else {
          out << "  \"open_costs\": " << List(p.open_costs) << ",\n";
          const bool dense = std::all_of(p.distances.begin(), p.distances.end(),
                                         [](double d) { return std::isfinite(d); });
          std::vector<std::string> lines;
          for (std::size_t i = 0; i < p.num_facilities(); ++i) {
            if (dense) {
              std::vector<double> row(
                  p.distances.begin() + static_cast<std::ptrdiff_t>(i * p.num_clients),
                  p.distances.begin() +
                      static_cast<std::ptrdiff_t>((i + 1) * p.num_clients));
              lines.push_back(List(row));
              continue;
            }
            for (std::size_t e = 0; e < p.num_clients; ++e) {
              const double d = p.distances[i * p.num_clients + e];
              if (!std::isfinite(d)) continue;
              lines.push_back("{\"facility\": " + std::to_string(i) +
                              ", \"client\": " + std::to_string(e) +
                              ", \"d\": " + Num(d) + "}");
            }
          }
          Block(out, "distances", lines, !meta);
        }
      },
      file.payload);
  if (meta) {
    ordered_json mj = ordered_json::object();
    if (!file.meta.name.empty()) mj["name"] = file.meta.name;
    if (file.meta.seed) mj["seed"] = *file.meta.seed;
    if (!file.meta.generator.empty()) mj["generator"] = file.meta.generator;
    if (!file.meta.params.empty()) {
      ordered_json params = ordered_json::object();
      for (const auto& [k, v] : file.meta.params) params[k] = v;
      mj["params"] = params;
    }
    out << "  \"meta\": " << mj.dump() << "\n";
  }
  out << "}\n";
  return out.str();
}

void SaveInstance(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write instance file '" + path + "'");
  out << SerializeInstance(file);
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Generators.

namespace {

void CheckPositive(std::size_t v, const char* what) {
  if (v == 0) throw InvalidArgument(std::string(what) + " must be positive");
}

void CheckDensity(double density) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw InvalidArgument("density must lie in (0, 1]");
  }
}

void CheckRange(double lo, double hi, bool positive, const char* what) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) ||
      (positive ? !(lo > 0.0) : !(lo >= 0.0))) {
    throw InvalidArgument(std::string(what) + " range is invalid");
  }
}

double Draw(SplitMix64& rng, double lo, double hi) {
  return lo == hi ? lo : rng.Uniform(lo, hi);
}

// Random membership: each (set, element) pair w.p. density, then every
// element left out of all sets joins one uniformly chosen set.
std::vector<std::vector<ElementId>> Membership(std::size_t n, std::size_t m,
                                               double density,
                                               SplitMix64& rng) {
  std::vector<std::vector<ElementId>> sets(m);
  std::vector<char> covered(n, 0);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t e = 0; e < n; ++e) {
      if (rng.Bernoulli(density)) {
        sets[s].push_back(static_cast<ElementId>(e));
        covered[e] = 1;
      }
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (!covered[e]) sets[idx(static_cast<std::int64_t>(rng.Below(m)))].push_back(
        static_cast<ElementId>(e));
  }
  return sets;
}

std::string Label(const char* family, std::size_t n, std::size_t m,
                  std::uint64_t seed) {
  return std::string(family) + "-n" + std::to_string(n) + "-m" +
         std::to_string(m) + "-s" + std::to_string(seed);
}

}  // namespace

InstanceFile GenSetCover(const SetCoverParams& p) {
  CheckPositive(p.n, "n");
  CheckPositive(p.m, "m");
  CheckDensity(p.density);
  CheckRange(p.cost_lo, p.cost_hi, true, "cost");
  SplitMix64 rng = MakeStream(p.seed, StreamTag::kGenerator, 1);
  std::vector<double> costs(p.m);
  for (double& c : costs) c = Draw(rng, p.cost_lo, p.cost_hi);
  auto sets = Membership(p.n, p.m, p.density, rng);
  InstanceFile file{MakeSetSystem(p.n, std::move(sets), std::move(costs)), {}};
  file.meta = {Label("setcover", p.n, p.m, p.seed), p.seed, "setcover",
               {{"n", static_cast<double>(p.n)},
                {"m", static_cast<double>(p.m)},
                {"density", p.density},
                {"cost_lo", p.cost_lo},
                {"cost_hi", p.cost_hi}}};
  return file;
}

InstanceFile GenMulticover(const MulticoverParams& p) {
  CheckPositive(p.n, "n");
  CheckPositive(p.m, "m");
  CheckDensity(p.density);
  if (p.max_demand < 1) throw InvalidArgument("max_demand must be positive");
  SplitMix64 rng = MakeStream(p.seed, StreamTag::kGenerator, 2);
  auto sets = Membership(p.n, p.m, p.density, rng);
  SetSystem sys =
      MakeSetSystem(p.n, std::move(sets), std::vector<double>(p.m, 1.0));
  std::vector<int> demands(p.n);
  for (std::size_t e = 0; e < p.n; ++e) {
    const auto hi = std::min<std::int64_t>(
        p.max_demand, static_cast<std::int64_t>(sys.sets_of[e].size()));
    demands[e] = static_cast<int>(rng.UniformInt(1, hi));
  }
  InstanceFile file{MakeMulticover(std::move(sys), std::move(demands)), {}};
  file.meta = {Label("multicover", p.n, p.m, p.seed), p.seed, "multicover",
               {{"n", static_cast<double>(p.n)},
                {"m", static_cast<double>(p.m)},
                {"density", p.density},
                {"max_demand", static_cast<double>(p.max_demand)}}};
  return file;
}

InstanceFile GenCip(const CipParams& p) {
  CheckPositive(p.n, "n");
  CheckPositive(p.m, "m");
  CheckDensity(p.density);
  CheckRange(p.cost_lo, p.cost_hi, true, "cost");
  CheckRange(p.a_lo, p.a_hi, true, "A entry");
  if (p.a_hi > 1.0) throw InvalidArgument("A entries must lie in [0,1]");
  SplitMix64 rng = MakeStream(p.seed, StreamTag::kGenerator, 3);
  std::vector<double> costs(p.m);
  for (double& c : costs) c = Draw(rng, p.cost_lo, p.cost_hi);
  std::vector<std::vector<CipEntry>> rows(p.n);
  for (std::size_t e = 0; e < p.n; ++e) {
    for (std::size_t j = 0; j < p.m; ++j) {
      if (rng.Bernoulli(p.density)) {
        rows[e].push_back({static_cast<ResourceId>(j), Draw(rng, p.a_lo, p.a_hi)});
      }
    }
    if (rows[e].empty()) {
      rows[e].push_back({static_cast<ResourceId>(rng.Below(p.m)),
                         Draw(rng, p.a_lo, p.a_hi)});
    }
  }
  InstanceFile file{MakeCip(p.m, std::move(costs), std::move(rows)), {}};
  file.meta = {Label("cip", p.n, p.m, p.seed), p.seed, "cip",
               {{"n", static_cast<double>(p.n)},
                {"m", static_cast<double>(p.m)},
                {"density", p.density},
                {"a_lo", p.a_lo},
                {"a_hi", p.a_hi},
                {"cost_lo", p.cost_lo},
                {"cost_hi", p.cost_hi}}};
  return file;
}

InstanceFile GenNmfl(const NmflParams& p) {
  CheckPositive(p.n_clients, "n_clients");
  CheckPositive(p.n_facilities, "n_facilities");
  CheckRange(p.cost_lo, p.cost_hi, true, "open cost");
  CheckRange(p.dist_lo, p.dist_hi, false, "distance");
  SplitMix64 rng = MakeStream(p.seed, StreamTag::kGenerator, 4);
  std::vector<double> open(p.n_facilities);
  for (double& c : open) c = Draw(rng, p.cost_lo, p.cost_hi);
  std::vector<double> dist(p.n_facilities * p.n_clients);
  for (double& d : dist) d = Draw(rng, p.dist_lo, p.dist_hi);
  InstanceFile file{MakeFacility(p.n_clients, std::move(open), std::move(dist)),
                    {}};
  file.meta = {Label("nmfl", p.n_clients, p.n_facilities, p.seed), p.seed,
               "nmfl",
               {{"n_clients", static_cast<double>(p.n_clients)},
                {"n_facilities", static_cast<double>(p.n_facilities)},
                {"cost_lo", p.cost_lo},
                {"cost_hi", p.cost_hi},
                {"dist_lo", p.dist_lo},
                {"dist_hi", p.dist_hi}}};
  return file;
}

InstanceFile GenSingletonsPlusBig(std::size_t n, double big_cost) {
  CheckPositive(n, "n");
  if (!(big_cost > 0.0)) throw InvalidArgument("big_cost must be positive");
  std::vector<std::vector<ElementId>> sets(n + 1);
  for (std::size_t e = 0; e < n; ++e) {
    sets[e].push_back(static_cast<ElementId>(e));
    sets[n].push_back(static_cast<ElementId>(e));
  }
  std::vector<double> costs(n + 1, 1.0);
  costs[n] = big_cost;
  InstanceFile file{MakeSetSystem(n, std::move(sets), std::move(costs)), {}};
  file.meta = {"singletons-big-n" + std::to_string(n), std::nullopt,
               "singletons_big",
               {{"n", static_cast<double>(n)}, {"big_cost", big_cost}}};
  return file;
}

InstanceFile GenCostGradient(std::size_t n, std::size_t m, double ratio,
                             std::size_t per_element, std::uint64_t seed) {
  CheckPositive(n, "n");
  CheckPositive(m, "m");
  CheckPositive(per_element, "per_element");
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw InvalidArgument("ratio must be at least 1");
  }
  SplitMix64 rng = MakeStream(seed, StreamTag::kGenerator, 5);
  std::vector<double> costs(m);
  for (std::size_t s = 0; s < m; ++s) {
    costs[s] = m == 1 ? 1.0
                      : std::pow(ratio, static_cast<double>(s) /
                                            static_cast<double>(m - 1));
  }
  std::vector<std::vector<ElementId>> sets(m);
  std::vector<std::size_t> pool(m);
  for (std::size_t e = 0; e < n; ++e) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Shuffle(pool, rng);
    for (std::size_t k = 0; k < std::min(per_element, m); ++k) {
      sets[pool[k]].push_back(static_cast<ElementId>(e));
    }
  }
  InstanceFile file{MakeSetSystem(n, std::move(sets), std::move(costs)), {}};
  file.meta = {Label("costgrad", n, m, seed), seed, "cost_gradient",
               {{"n", static_cast<double>(n)},
                {"m", static_cast<double>(m)},
                {"ratio", ratio},
                {"per_element", static_cast<double>(per_element)}}};
  return file;
}

std::vector<ElementId> PermuteArrivals(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("permute_arrivals: n must be positive");
  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), ElementId{0});
  SplitMix64 rng = MakeStream(seed, StreamTag::kArrivals);
  Shuffle(order, rng);
  return order;
}

}  // namespace rocover
