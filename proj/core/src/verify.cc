#include "rocover/verify.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rocover/baselines.h"
#include "rocover/errors.h"
#include "rocover/framework.h"
#include "rocover/harness.h"
#include "rocover/instances.h"
#include "rocover/oco.h"
#include "rocover/rng.h"

namespace rocover {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::array<ProblemKind, 4> kKinds = {
    ProblemKind::kSetCover, ProblemKind::kMulticover, ProblemKind::kCip,
    ProblemKind::kNmfl};

std::size_t idx(std::int64_t v) { return static_cast<std::size_t>(v); }

std::size_t Scaled(double base, const VerifyOptions& opts) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(base * opts.budget)));
}

SplitMix64 CaseStream(const VerifyOptions& opts, std::uint64_t suite,
                      std::uint64_t c) {
  return MakeStream(opts.seed, StreamTag::kValidator, suite, c);
}

template <typename T>
void Stat(SuiteReport& r, const std::string& key, T value) {
  std::ostringstream out;
  if constexpr (std::is_floating_point_v<T>) {
    out << key << '=' << FormatReal(value);
  } else {
    out << key << '=' << value;
  }
  r.stats.push_back(out.str());
}

void Fail(SuiteReport& r, std::size_t c, const std::string& what) {
  if (r.passed) {
    r.failure = what;
    r.failing_case = c;
  }
  r.passed = false;
}

// Random instance of a kind: sizes in [lo, hi], randomized density and
// cost ranges.
InstanceFile FuzzInstance(ProblemKind kind, SplitMix64& rng, std::size_t lo,
                          std::size_t hi) {
  const auto n = static_cast<std::size_t>(rng.UniformInt(
      static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  const auto m = static_cast<std::size_t>(rng.UniformInt(
      static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  const double density =
      std::min(1.0, rng.Uniform(1.0, 5.0) / static_cast<double>(m));
  const std::uint64_t seed = rng();
  switch (kind) {
    case ProblemKind::kSetCover: {
      SetCoverParams p{n, m, density, 1.0, rng.Uniform(1.0, 20.0), seed};
      return GenSetCover(p);
    }
    case ProblemKind::kMulticover: {
      MulticoverParams p{n, m, density, static_cast<int>(rng.UniformInt(1, 4)),
                         seed};
      return GenMulticover(p);
    }
    case ProblemKind::kCip: {
      CipParams p{n, m, density, rng.Uniform(0.05, 0.5), 1.0, 1.0,
                  rng.Uniform(1.0, 20.0), seed};
      return GenCip(p);
    }
    case ProblemKind::kNmfl: {
      NmflParams p{n, m, 1.0, rng.Uniform(1.0, 20.0), 0.0,
                   rng.Uniform(0.0, 20.0), seed};
      return GenNmfl(p);
    }
  }
  throw InvalidArgument("unknown kind");
}

Holdings FuzzHoldings(const InstanceFile& file, SplitMix64& rng) {
  Holdings held(file.num_resources());
  const double q = rng.Uniform(0.0, 0.4);
  const bool copies = file.kind() == ProblemKind::kCip;
  for (std::size_t r = 0; r < held.size(); ++r) {
    if (rng.Bernoulli(q)) {
      held.add(static_cast<ResourceId>(r), copies ? rng.UniformInt(1, 2) : 1);
    }
  }
  return held;
}

// p in [0,1]^m with <c, p> <= est.
std::vector<double> FuzzPlay(std::span<const double> costs, double est,
                             SplitMix64& rng) {
  std::vector<double> p(costs.size());
  double spend = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = rng.Bernoulli(0.3) ? 0.0 : rng.Uniform();
    spend += costs[i] * p[i];
  }
  if (spend > est) {
    for (double& v : p) v *= est / spend;
  }
  return p;
}

template <typename Body>
SuiteReport Timed(std::string name, Body&& body) {
  SuiteReport r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  return r;
}

}  // namespace

const std::vector<std::string_view>& SuiteNames() {
  static const std::vector<std::string_view> names = {
      "regret",     "projection", "unbiasedness", "gradients",  "potential",
      "appendix-b", "roundtrip",  "feasibility",  "estimate"};
  return names;
}

// ---------------------------------------------------------------------------

SuiteReport VerifyRegret(const VerifyOptions& opts) {
  return Timed("regret", [&](SuiteReport& r) {
    const std::size_t sequences = Scaled(100, opts);
    constexpr std::size_t kT = 10000;
    constexpr double kEta = 0.5;
    double min_margin = kInf;
    for (std::size_t c = 0; c < sequences; ++c) {
      SplitMix64 rng = CaseStream(opts, 1, c);
      const auto d = static_cast<std::size_t>(rng.UniformInt(2, 64));
      std::vector<double> costs(d);
      for (double& v : costs) v = rng.Uniform(0.2, 5.0);
      const double total_cost = std::accumulate(costs.begin(), costs.end(), 0.0);
      const double scale = rng.Uniform(0.5, total_cost);
      oco::OcoState state = oco::InitState(d, costs, scale, kEta);
      std::vector<double> mu(d);
      for (double& v : mu) v = rng.Uniform();
      std::vector<double> cumulative(d, 0.0);
      double alg = 0.0;
      SparseVector grad;
      const int style = static_cast<int>(c % 3);
      for (std::size_t t = 0; t < kT; ++t) {
        if (style == 1 && t == kT / 2) Shuffle(mu, rng);
        grad.clear();
        if (style == 2) {
          const auto i = static_cast<ResourceId>(rng.Below(d));
          grad.push_back({i, costs[idx(i)] / scale});
        } else {
          for (std::size_t i = 0; i < d; ++i) {
            const double g = rng.Bernoulli(mu[i]) ? rng.Uniform(0.5, 1.0) : 0.0;
            if (g > 0.0) {
              grad.push_back({static_cast<ResourceId>(i), g * costs[i] / scale});
            }
          }
        }
        const std::vector<double> y = oco::Play(state);
        for (const SparseEntry& e : grad) {
          alg += e.value * y[idx(e.index)];
          cumulative[idx(e.index)] += e.value;
        }
        oco::StepInPlace(state, grad);
      }
      // Best fixed y: fractional knapsack in density order.
      std::vector<std::size_t> order(d);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cumulative[a] / costs[a] > cumulative[b] / costs[b];
      });
      double budget = scale, best = 0.0;
      for (std::size_t i : order) {
        const double y = std::min(1.0, budget / costs[i]);
        best += y * cumulative[i];
        budget -= y * costs[i];
        if (budget <= 0.0) break;
      }
      const double margin =
          alg - ((1.0 - kEta) * best - 40.0 * std::log(static_cast<double>(d)));
      min_margin = std::min(min_margin, margin);
      if (margin < 0.0) {
        Fail(r, c, "regret bound violated: d=" + std::to_string(d) +
                       " alg=" + FormatReal(alg) + " best=" + FormatReal(best));
      }
    }
    Stat(r, "sequences", sequences);
    Stat(r, "T", kT);
    Stat(r, "min_margin", min_margin);
  });
}

SuiteReport VerifyProjection(const VerifyOptions& opts) {
  return Timed("projection", [&](SuiteReport& r) {
    const std::size_t count = Scaled(1000, opts);
    double worst = kInf, worst_route = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
      SplitMix64 rng = CaseStream(opts, 2, c);
      const std::size_t d = 2 + c % 2;
      std::vector<double> point(d), caps(d);
      for (std::size_t i = 0; i < d; ++i) {
        point[i] = rng.Uniform(0.01, 1.5);
        caps[i] = rng.Uniform(0.05, 1.0);
      }
      const oco::CappedSimplexPoint proj = oco::BregmanProject(point, caps);
      const oco::CappedSimplexPoint bis =
          oco::BregmanProjectBisection(point, caps);
      for (std::size_t i = 0; i < d; ++i) {
        worst_route = std::max(worst_route,
                               std::abs(proj.coords[i] - bis.coords[i]));
      }
      const double obj = oco::UnnormalizedKl(proj.coords, point);
      // Per-coordinate term tables over the grid 0, 0.01, ..., cap.
      std::vector<std::vector<double>> table(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (int k = 0; k <= 100; ++k) {
          const double z = 0.01 * k;
          if (z > caps[i]) break;
          const double term =
              (z > 0.0 ? z * std::log(z / point[i]) : 0.0) - z + point[i];
          table[i].push_back(term);
        }
      }
      double best = kInf;
      for (std::size_t a = 0; a < table[0].size(); ++a) {
        for (std::size_t b = 0; b < table[1].size() && a + b <= 100; ++b) {
          const double ab = table[0][a] + table[1][b];
          if (d == 2) {
            best = std::min(best, ab);
            continue;
          }
          for (std::size_t k = 0; k < table[2].size() && a + b + k <= 100; ++k) {
            best = std::min(best, ab + table[2][k]);
          }
        }
      }
      worst = std::min(worst, best - obj);
      if (obj > best + 1e-6) {
        Fail(r, c, "projection beaten by a grid point by " +
                       FormatReal(obj - best));
      }
      if (!oco::IsFeasible(proj)) Fail(r, c, "projection infeasible");
    }
    if (worst_route > 1e-9) Fail(r, 0, "sort and bisection routes disagree");
    Stat(r, "instances", count);
    Stat(r, "min_grid_margin", worst);
    Stat(r, "max_route_gap", worst_route);
  });
}

SuiteReport VerifyUnbiasedness(const VerifyOptions& opts) {
  return Timed("unbiasedness", [&](SuiteReport& r) {
    const std::size_t states = Scaled(200, opts);
    constexpr std::size_t kSamples = 10000;
    for (std::size_t pk = 0; pk < kKinds.size(); ++pk) {
      std::size_t informative = 0, flakes = 0, exact_miss = 0;
      for (std::size_t c = 0; c < states; ++c) {
        SplitMix64 rng = CaseStream(opts, 3, pk * 100000 + c);
        const InstanceFile file = FuzzInstance(kKinds[pk], rng, 5, 30);
        const auto oracle = MakeOracle(file);
        const Holdings held = FuzzHoldings(file, rng);
        const auto costs = oracle->resource_costs();
        const double est = rng.Uniform(2.0, 40.0);
        const std::vector<double> p = FuzzPlay(costs, est, rng);
        std::vector<ElementId> future(file.num_elements());
        std::iota(future.begin(), future.end(), ElementId{0});
        Shuffle(future, rng);
        future.resize(static_cast<std::size_t>(
            rng.UniformInt(1, static_cast<std::int64_t>(future.size()))));
        const std::size_t m = costs.size();
        std::vector<double> analytic(m, 0.0);
        for (ElementId f : future) {
          for (const SparseEntry& e : oracle->GainSubgradient(f, held, p, est)) {
            analytic[idx(e.index)] += e.value / static_cast<double>(future.size());
          }
        }
        // Each sample queries the oracle afresh at a uniform future element.
        std::vector<double> sum(m, 0.0), sum_sq(m, 0.0);
        for (std::size_t s = 0; s < kSamples; ++s) {
          const ElementId f = future[rng.Below(future.size())];
          for (const SparseEntry& e : oracle->GainSubgradient(f, held, p, est)) {
            sum[idx(e.index)] += e.value;
            sum_sq[idx(e.index)] += e.value * e.value;
          }
        }
        const double n = static_cast<double>(kSamples);
        for (std::size_t i = 0; i < m; ++i) {
          const double mean = sum[i] / n;
          const double var =
              std::max(0.0, (sum_sq[i] - n * mean * mean) / (n - 1.0));
          const double se = std::sqrt(var / n);
          const double diff = std::abs(mean - analytic[i]);
          if (se == 0.0) {
            if (diff > 1e-12 * std::max(1.0, std::abs(analytic[i]))) ++exact_miss;
            continue;
          }
          ++informative;
          if (diff > 4.0 * se) ++flakes;
        }
      }
      const std::string kind(ProblemKindName(kKinds[pk]));
      const double rate = informative ? static_cast<double>(flakes) /
                                            static_cast<double>(informative)
                                      : 0.0;
      Stat(r, kind + ".coords", informative);
      Stat(r, kind + ".flake_rate", rate);
      if (rate > 0.01) Fail(r, 0, kind + ": flake rate above 1%");
      if (exact_miss > 0) Fail(r, 0, kind + ": deterministic coordinate off");
    }
    Stat(r, "states_per_problem", states);
    Stat(r, "samples", kSamples);
  });
}

SuiteReport VerifyGradients(const VerifyOptions& opts) {
  return Timed("gradients", [&](SuiteReport& r) {
    const std::size_t evals = Scaled(100000, opts);
    constexpr std::size_t kPerInstance = 100;
    for (std::size_t pk = 0; pk < kKinds.size(); ++pk) {
      const std::string kind(ProblemKindName(kKinds[pk]));
      std::size_t bound_bad = 0, sandwich_bad = 0, monotone_bad = 0, done = 0;
      for (std::size_t c = 0; done < evals; ++c) {
        SplitMix64 rng = CaseStream(opts, 4, pk * 1000000 + c);
        const InstanceFile file = FuzzInstance(kKinds[pk], rng, 2, 40);
        const auto oracle = MakeOracle(file);
        const auto costs = oracle->resource_costs();
        for (std::size_t k = 0; k < kPerInstance && done < evals; ++k, ++done) {
          Holdings held = FuzzHoldings(file, rng);
          const auto e = static_cast<ElementId>(rng.Below(file.num_elements()));
          const double est = std::exp(rng.Uniform(std::log(0.1), std::log(100.0)));
          const std::vector<double> p = FuzzPlay(costs, est, rng);
          SparseVector grad;
          try {
            grad = oracle->GainSubgradient(e, held, p, est);
          } catch (const ContractViolation&) {
            ++bound_bad;
            continue;
          }
          for (const SparseEntry& g : grad) {
            if (!(g.value >= 0.0) ||
                g.value > costs[idx(g.index)] / est + 1e-12) {
              ++bound_bad;
            }
          }
          const double kappa = oracle->Kappa(e, held);
          const Augmentation aug = oracle->Augment(e, held);
          const double slack = 1e-9 * std::max(1.0, kappa);
          if (aug.cost / oracle->alpha() > kappa + slack ||
              kappa > aug.cost + slack) {
            ++sandwich_bad;
          }
          const auto extra = static_cast<ResourceId>(rng.Below(costs.size()));
          if (oracle->CopiesAllowed() || !held.has(extra)) held.add(extra);
          if (oracle->Kappa(e, held) > kappa + slack) ++monotone_bad;
        }
      }
      Stat(r, kind + ".evaluations", done);
      Stat(r, kind + ".bound_violations", bound_bad);
      Stat(r, kind + ".sandwich_violations", sandwich_bad);
      Stat(r, kind + ".monotone_violations", monotone_bad);
      if (bound_bad) Fail(r, 0, kind + ": gradient entry out of [0, c/est]");
      if (sandwich_bad) Fail(r, 0, kind + ": aug/alpha <= kappa <= aug fails");
      if (monotone_bad) Fail(r, 0, kind + ": kappa increased with purchases");
    }
  });
}

SuiteReport VerifyPotential(const VerifyOptions& opts) {
  return Timed("potential", [&](SuiteReport& r) {
    const std::size_t runs = Scaled(100, opts);
    std::size_t kappa_bad = 0, phi_bad = 0, steps = 0;
    for (std::size_t c = 0; c < runs; ++c) {
      SplitMix64 rng = CaseStream(opts, 5, c);
      const InstanceFile file = FuzzInstance(kKinds[c % 4], rng, 5, 40);
      RunOptions ro;
      ro.config.seed = rng();
      ro.config.est_mode = EstMode::kLp;
      ro.config.record_kappa = true;
      ro.config.record_potential = true;
      ro.order_seed = rng();
      ro.ratio_baseline = RatioBaseline::kNone;
      const RunReport rep = RunInstance(file, ro);
      const auto& trace = rep.result.trace;
      for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
        const auto& now = trace[t].future_kappa;
        const auto& next = trace[t + 1].future_kappa;
        for (std::size_t f = 0; f < now.size(); ++f) {
          if (std::isnan(next[f])) continue;
          ++steps;
          if (next[f] > now[f] + 1e-12 * std::max(1.0, now[f])) ++kappa_bad;
        }
        if (*trace[t + 1].phi > *trace[t].phi * (1.0 + 1e-12) + 1e-12) ++phi_bad;
      }
      if (kappa_bad || phi_bad) {
        Fail(r, c, "kappa or potential increased along a run");
      }
    }
    Stat(r, "runs", runs);
    Stat(r, "kappa_checks", steps);
    Stat(r, "kappa_violations", kappa_bad);
    Stat(r, "phi_violations", phi_bad);

    // Trend datum (not gated): set cover with est fixed at OPT. Compares
    // the average drop of ln(Phi) over the first half of each run with half
    // the cumulative gain recorded over that stretch.
    const std::size_t trend_runs = Scaled(20, opts);
    double drop = 0.0, gain = 0.0;
    for (std::size_t c = 0; c < trend_runs; ++c) {
      SplitMix64 rng = CaseStream(opts, 5, 100000 + c);
      const InstanceFile file = FuzzInstance(ProblemKind::kSetCover, rng, 10, 20);
      std::vector<ElementId> all(file.num_elements());
      std::iota(all.begin(), all.end(), ElementId{0});
      RunOptions ro;
      ro.config.seed = rng();
      ro.config.est_mode = EstMode::kFixed;
      ro.config.fixed_est = ComputeBaseline(file, BaselineKind::kIntegral, all).value;
      ro.config.record_potential = true;
      ro.order_seed = rng();
      ro.ratio_baseline = RatioBaseline::kNone;
      const RunReport rep = RunInstance(file, ro);
      const auto& trace = rep.result.trace;
      const std::size_t half = trace.size() / 2;
      if (half == 0 || *trace[half].phi <= 0.0) continue;
      drop += std::log(*trace[0].phi) - std::log(*trace[half].phi);
      for (std::size_t t = 0; t < half; ++t) gain += 0.5 * trace[t].gain;
    }
    Stat(r, "trend_mean_ln_phi_drop", drop / static_cast<double>(trend_runs));
    Stat(r, "trend_mean_half_gain", gain / static_cast<double>(trend_runs));
  });
}

SuiteReport VerifyAppendixB(const VerifyOptions& opts) {
  return Timed("appendix-b", [&](SuiteReport& r) {
    SplitMix64 rng1 = CaseStream(opts, 6, 0);
    const ClaimB1Report b1 = ValidateClaimB1(Scaled(10000, opts), rng1);
    SplitMix64 rng2 = CaseStream(opts, 6, 1);
    const FactB2Report b2 = ValidateFactB2(Scaled(1000, opts), 100000, rng2);
    Stat(r, "b1.samples", b1.samples);
    Stat(r, "b1.violations", b1.violations);
    Stat(r, "b1.min_slack", b1.min_slack);
    Stat(r, "b2.configs", b2.configs);
    Stat(r, "b2.violations", b2.violations);
    Stat(r, "b2.min_ratio", b2.min_ratio);
    if (b1.violations) Fail(r, 0, "claim B.1 violated");
    if (b2.violations) Fail(r, 1, "fact B.2 Monte Carlo bound violated");
  });
}

SuiteReport VerifyRoundTrip(const VerifyOptions& opts) {
  return Timed("roundtrip", [&](SuiteReport& r) {
    const std::size_t per_kind = Scaled(25, opts);
    std::size_t checked = 0;
    const auto check = [&](const InstanceFile& file, std::size_t c) {
      const std::string text = SerializeInstance(file);
      const InstanceFile back = ParseInstance(text);
      if (!(back == file)) Fail(r, c, "parse(serialize(x)) != x");
      if (SerializeInstance(back) != text) Fail(r, c, "serialize not stable");
      ++checked;
    };
    for (std::size_t c = 0; c < per_kind; ++c) {
      for (std::size_t pk = 0; pk < kKinds.size(); ++pk) {
        SplitMix64 rng = CaseStream(opts, 7, pk * 100000 + c);
        InstanceFile file = FuzzInstance(kKinds[pk], rng, 1, 30);
        check(file, c);
        if (auto* fl = std::get_if<FacilityInstance>(&file.payload)) {
          // Sparse form: drop pairs while keeping each client reachable.
          for (std::size_t e = 0; e < fl->num_clients; ++e) {
            for (std::size_t i = 1; i < fl->num_facilities(); ++i) {
              if (rng.Bernoulli(0.5)) fl->distances[i * fl->num_clients + e] = kInf;
            }
          }
          check(file, c);
        }
      }
    }
    check(GenSingletonsPlusBig(10, 3.5), 0);
    check(GenCostGradient(12, 8, 64.0, 2, opts.seed), 0);
    Stat(r, "documents", checked);
  });
}

SuiteReport VerifyFeasibility(const VerifyOptions& opts) {
  return Timed("feasibility", [&](SuiteReport& r) {
    const std::size_t runs = Scaled(1000, opts);
    std::size_t failures = 0;
    for (std::size_t c = 0; c < runs; ++c) {
      SplitMix64 rng = CaseStream(opts, 8, c);
      try {
        InstanceFile file;
        if (c % 20 == 19) {
          file = GenSingletonsPlusBig(
              static_cast<std::size_t>(rng.UniformInt(2, 100)),
              rng.Uniform(1.0, 20.0));
        } else if (c % 20 == 18) {
          file = GenCostGradient(static_cast<std::size_t>(rng.UniformInt(2, 100)),
                                 static_cast<std::size_t>(rng.UniformInt(2, 100)),
                                 rng.Uniform(2.0, 200.0),
                                 static_cast<std::size_t>(rng.UniformInt(1, 3)),
                                 rng());
        } else {
          file = FuzzInstance(kKinds[c % 4], rng, 2, 100);
        }
        RunOptions ro;
        ro.config.seed = rng();
        ro.order_seed = rng();
        ro.ratio_baseline = RatioBaseline::kNone;
        switch ((c / 4) % 3) {
          case 0:
            ro.config.est_mode = EstMode::kLp;
            break;
          case 1:
            ro.config.est_mode = AutoEstMode(file, ro.limits);
            break;
          default:
            ro.config.est_mode = EstMode::kFixed;
            ro.config.fixed_est = rng.Uniform(0.5, 50.0);
        }
        RunInstance(file, ro);
      } catch (const std::exception& err) {
        ++failures;
        Fail(r, c, err.what());
      }
    }
    Stat(r, "runs", runs);
    Stat(r, "failures", failures);
  });
}

SuiteReport VerifyEstimate(const VerifyOptions& opts) {
  return Timed("estimate", [&](SuiteReport& r) {
    const std::size_t runs = Scaled(200, opts);
    std::size_t bad = 0;
    double max_ratio = 0.0;
    for (std::size_t c = 0; c < runs; ++c) {
      SplitMix64 rng = CaseStream(opts, 9, c);
      const InstanceFile file = FuzzInstance(kKinds[c % 4], rng, 3, 14);
      std::vector<ElementId> all(file.num_elements());
      std::iota(all.begin(), all.end(), ElementId{0});
      const double opt =
          ComputeBaseline(file, BaselineKind::kIntegral, all).value;
      RunOptions ro;
      ro.config.seed = rng();
      ro.config.est_mode = EstMode::kIntegral;
      ro.order_seed = rng();
      ro.ratio_baseline = RatioBaseline::kNone;
      const RunReport rep = RunInstance(file, ro);
      const double est = rep.result.final_state.est;
      max_ratio = std::max(max_ratio, est / opt);
      if (est < opt * (1.0 - 1e-12) || est > 2.0 * opt * (1.0 + 1e-12)) {
        ++bad;
        Fail(r, c, "final est " + FormatReal(est) + " outside [OPT, 2 OPT], OPT=" +
                       FormatReal(opt));
      }
    }
    Stat(r, "runs", runs);
    Stat(r, "violations", bad);
    Stat(r, "max_est_over_opt", max_ratio);
  });
}

std::vector<SuiteReport> RunSuites(std::string_view selector,
                                   const VerifyOptions& options) {
  using Fn = SuiteReport (*)(const VerifyOptions&);
  static const std::vector<std::pair<std::string_view, Fn>> table = {
      {"regret", VerifyRegret},         {"projection", VerifyProjection},
      {"unbiasedness", VerifyUnbiasedness}, {"gradients", VerifyGradients},
      {"potential", VerifyPotential},   {"appendix-b", VerifyAppendixB},
      {"roundtrip", VerifyRoundTrip},   {"feasibility", VerifyFeasibility},
      {"estimate", VerifyEstimate}};
  std::vector<SuiteReport> reports;
  for (const auto& [name, fn] : table) {
    if (selector == "all" || selector == name) reports.push_back(fn(options));
  }
  if (reports.empty()) {
    throw InvalidArgument("unknown suite '" + std::string(selector) + "'");
  }
  return reports;
}

}  // namespace rocover
