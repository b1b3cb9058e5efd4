#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "swref/harness.hpp"

namespace swref {

namespace {

NormTriple norms_of(const Field& e) {
  const double n = static_cast<double>(e.size());
  return {e.abs().sum() / n, std::sqrt(e.square().sum() / n), e.abs().maxCoeff()};
}

}  // namespace

ErrorNorms error_norms(const SolutionProfile& numerical, const SolutionProfile& exact,
                       double dry_tolerance) {
  const auto n = exact.size();
  if (numerical.size() != n || n == 0) throw ComparisonError("error_norms: grids differ in size");
  const double scale = std::max({1.0, std::abs(exact.x_begin), std::abs(exact.x_end())});
  if (std::abs(numerical.dx - exact.dx) > 1e-12 * scale ||
      std::abs(numerical.x_begin - exact.x_begin) > 1e-12 * scale)
    throw ComparisonError("error_norms: grids differ in spacing or origin");
  if (std::abs(numerical.time - exact.time) > 1e-9 * std::max(1.0, std::abs(exact.time)))
    throw ComparisonError("error_norms: profiles are at different times");
  Field eh = (numerical.h - exact.h).abs();
  Field eq = (numerical.q - exact.q).abs();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (numerical.h[i] <= dry_tolerance && exact.h[i] <= dry_tolerance) {
      eh[i] = 0.0;
      eq[i] = 0.0;
    }
  }
  return {norms_of(eh), norms_of(eq)};
}

std::vector<ConvergenceOrder> convergence_order(const std::vector<std::pair<int, double>>& errors) {
  if (errors.size() < 2) throw DomainError("convergence_order: need at least two grids");
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k].second >= 0.0)) throw DomainError("convergence_order: errors must be non-negative");
    if (k > 0 && !(errors[k].first > errors[k - 1].first))
      throw DomainError("convergence_order: grid sizes must increase strictly");
  }
  std::vector<ConvergenceOrder> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const auto [n0, e0] = errors[k];
    const auto [n1, e1] = errors[k + 1];
    if (e0 == 0.0 || e1 == 0.0) {
      out.push_back({std::nullopt, true});
      continue;
    }
    out.push_back({std::log(e0 / e1) / std::log(static_cast<double>(n1) / n0), false});
  }
  return out;
}

std::string_view to_string(BenchMode mode) {
  switch (mode) {
    case BenchMode::Equilibrium: return "equilibrium";
    case BenchMode::Steady: return "steady";
    case BenchMode::Transient: return "transient";
  }
  return "?";
}

bool BenchmarkReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

namespace {

GridResult run_grid(const BenchCase& bench, int cells, const SchemeConfig& scheme) {
  GridResult r;
  r.cells = cells;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto exact = bench.exact(cells);
    const auto initial = bench.initial ? bench.initial(cells) : exact;
    SolutionProfile numerical;
    switch (bench.mode) {
      case BenchMode::Equilibrium:
        numerical = run_steps(initial, bench.spec, scheme, bench.equilibrium_steps, &r.stats);
        break;
      case BenchMode::Steady:
        numerical = run_to_steady(initial, bench.spec, scheme, kSteadyUpdateTolerance,
                                  kSteadyStepCap, &r.stats);
        break;
      case BenchMode::Transient:
        numerical = run_solver(initial, bench.spec, scheme, bench.reference_time, &r.stats);
        break;
    }
    numerical.time = exact.time;
    r.norms = error_norms(numerical, exact, bench.spec.dry_tolerance);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string describe(double value) {
  std::ostringstream s;
  s.precision(3);
  s << value;
  return s.str();
}

}  // namespace

BenchmarkReport bench_case(const BenchCase& bench, const std::vector<int>& grids,
                           const SchemeConfig& scheme_in) {
  if (grids.empty()) throw DomainError("bench_case: no grid sizes given");
  for (int n : grids)
    if (n < 2) throw DomainError("bench_case: every grid needs at least two cells");
  if (!bench.exact) throw DomainError("bench_case: case has no exact solution");
  SchemeConfig scheme = scheme_in;
  scheme.left = bench.left;
  scheme.right = bench.right;
  scheme.validate();
  bench.spec.validate();

  BenchmarkReport report;
  report.case_id = bench.id;
  report.mode = bench.mode;
  report.spec = bench.spec;
  report.scheme = scheme;
  report.reference_time = bench.reference_time;

  std::vector<std::future<GridResult>> jobs;
  for (int n : grids)
    jobs.push_back(std::async(std::launch::async, run_grid, std::cref(bench), n, std::cref(scheme)));
  for (auto& j : jobs) report.grids.push_back(j.get());

  std::vector<const GridResult*> ok;
  for (const auto& g : report.grids)
    if (!g.error) ok.push_back(&g);

  {
    Verdict v{"solver", ok.size() == report.grids.size(), ""};
    for (const auto& g : report.grids)
      if (g.error) v.detail += "N=" + std::to_string(g.cells) + ": " + *g.error + "; ";
    report.verdicts.push_back(v);
  }
  {
    double worst = 0.0;
    for (const auto* g : ok) worst = std::min(worst, g->stats.min_depth);
    report.verdicts.push_back({"positivity", worst >= 0.0, "min depth " + describe(worst)});
  }
  if (bench.mode == BenchMode::Equilibrium) {
    double worst = 0.0;
    for (const auto* g : ok) worst = std::max({worst, g->norms->h.linf, g->norms->q.linf});
    report.verdicts.push_back({"well_balancing", !ok.empty() && worst < bench.well_balance_tolerance,
                               "max cell error " + describe(worst) + " (tolerance " +
                                   describe(bench.well_balance_tolerance) + ")"});
  }
  if (bench.mode == BenchMode::Steady) {
    const bool all = std::all_of(ok.begin(), ok.end(), [](auto* g) { return g->stats.reached_steady; });
    report.verdicts.push_back({"steady_state", !ok.empty() && all,
                               all ? "update norm below threshold on every grid"
                                   : "step cap reached before the update norm threshold"});
  }
  const auto closed = [](BoundaryKind k) {
    return k == BoundaryKind::Wall || k == BoundaryKind::Periodic;
  };
  if (closed(scheme.left.kind) && closed(scheme.right.kind) && bench.spec.rain_rate == 0.0) {
    double drift = 0.0;
    for (const auto* g : ok)
      if (g->stats.mass_initial > 0.0)
        drift = std::max(drift, std::abs(g->stats.mass_final - g->stats.mass_initial) /
                                    g->stats.mass_initial);
    report.verdicts.push_back({"mass_conservation", drift < 1e-12, "relative drift " + describe(drift)});
  }

  if (ok.size() >= 2) {
    auto series = [&](auto pick) {
      std::vector<std::pair<int, double>> e;
      for (const auto* g : ok) e.emplace_back(g->cells, pick(*g->norms));
      return convergence_order(e);
    };
    report.orders["h_l1"] = series([](const ErrorNorms& n) { return n.h.l1; });
    report.orders["h_l2"] = series([](const ErrorNorms& n) { return n.h.l2; });
    report.orders["h_linf"] = series([](const ErrorNorms& n) { return n.h.linf; });
    report.orders["q_l1"] = series([](const ErrorNorms& n) { return n.q.l1; });
    report.orders["q_l2"] = series([](const ErrorNorms& n) { return n.q.l2; });
    report.orders["q_linf"] = series([](const ErrorNorms& n) { return n.q.linf; });
    if (bench.order_band) {
      const auto [lo, hi] = *bench.order_band;
      bool pass = true;
      std::string detail;
      for (const auto& o : report.orders["h_l1"]) {
        if (o.exact) {
          detail += "exact ";
          continue;
        }
        pass = pass && *o.order >= lo && *o.order <= hi;
        detail += describe(*o.order) + " ";
      }
      report.verdicts.push_back({"convergence", pass,
                                 "L1(h) orders " + detail + "in [" + describe(lo) + ", " +
                                     describe(hi) + "]"});
    }
  }
  return report;
}

}  // namespace swref
