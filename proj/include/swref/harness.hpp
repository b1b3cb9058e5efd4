#pragma once

// Reference first-order finite-volume solver (Rusanov flux, hydrostatic
// reconstruction or a naive centred bed source, semi-implicit friction) and
// the benchmarking engine built on it.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swref/core.hpp"
#include "swref/profile.hpp"

namespace swref {

enum class TopographyTreatment { Hydrostatic, NaiveSource };

std::string_view to_string(TopographyTreatment treatment);
std::optional<TopographyTreatment> parse_topography(std::string_view name);

enum class BoundaryKind { Wall, Periodic, Free, Inflow, Outflow };

std::string_view to_string(BoundaryKind kind);

/// Ghost-cell boundary. Inflow imposes q, plus h when the imposed state is
/// supercritical; Outflow imposes h unless the adjacent cell is supercritical,
/// in which case it behaves as Free (copy).
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Free;
  std::optional<double> discharge;
  std::optional<double> depth;

  static BoundaryCondition wall() { return {BoundaryKind::Wall, {}, {}}; }
  static BoundaryCondition periodic() { return {BoundaryKind::Periodic, {}, {}}; }
  static BoundaryCondition free() { return {BoundaryKind::Free, {}, {}}; }
  static BoundaryCondition inflow(double q, std::optional<double> h = std::nullopt) {
    return {BoundaryKind::Inflow, q, h};
  }
  static BoundaryCondition outflow(double h) { return {BoundaryKind::Outflow, {}, h}; }

  void validate() const;
};

struct SchemeConfig {
  TopographyTreatment topography = TopographyTreatment::Hydrostatic;
  double cfl = 0.5;
  BoundaryCondition left{};
  BoundaryCondition right{};

  void validate() const;
};

struct RunStats {
  long steps = 0;
  double time = 0.0;
  /// max over cells of |W^{n+1} − W^n|/Δt for the last step.
  double update_norm = 0.0;
  bool reached_steady = false;
  /// Smallest depth seen after any step.
  double min_depth = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
};

inline constexpr double kSteadyUpdateTolerance = 1e-10;
inline constexpr long kSteadyStepCap = 1'000'000;

/// Advances `initial` to t_end.
SolutionProfile run_solver(const SolutionProfile& initial, const ChannelSpec& spec,
                           const SchemeConfig& scheme, double t_end, RunStats* stats = nullptr);
/// Advances `initial` by a fixed number of CFL steps.
SolutionProfile run_steps(const SolutionProfile& initial, const ChannelSpec& spec,
                          const SchemeConfig& scheme, long steps, RunStats* stats = nullptr);
/// Steps until the update norm drops below `tolerance` or `max_steps` is hit.
SolutionProfile run_to_steady(const SolutionProfile& initial, const ChannelSpec& spec,
                              const SchemeConfig& scheme,
                              double tolerance = kSteadyUpdateTolerance,
                              long max_steps = kSteadyStepCap, RunStats* stats = nullptr);

struct NormTriple {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

struct ErrorNorms {
  NormTriple h;
  NormTriple q;
};

/// Cell-averaged norms of the h and q errors; dry-dry pairs contribute zero.
ErrorNorms error_norms(const SolutionProfile& numerical, const SolutionProfile& exact,
                       double dry_tolerance = kDryTolerance);

/// Order between consecutive grids; `exact` marks a pair with a zero error,
/// where the order is undefined.
struct ConvergenceOrder {
  std::optional<double> order;
  bool exact = false;
};

std::vector<ConvergenceOrder> convergence_order(const std::vector<std::pair<int, double>>& errors);

enum class BenchMode {
  /// Equilibrium preserved from the exact state for a fixed number of steps.
  Equilibrium,
  /// Run to numerical steady state from a perturbed state.
  Steady,
  /// Run from the initial condition to the reference time.
  Transient,
};

std::string_view to_string(BenchMode mode);

/// A catalog solution packaged for the harness.
struct BenchCase {
  std::string id;
  ChannelSpec spec;
  BenchMode mode = BenchMode::Transient;
  std::function<SolutionProfile(int)> exact;
  std::function<SolutionProfile(int)> initial;
  double reference_time = 0.0;
  BoundaryCondition left{};
  BoundaryCondition right{};
  long equilibrium_steps = 10'000;
  double well_balance_tolerance = 1e-13;
  /// Accepted band for the L1(h) orders, if the case declares one.
  std::optional<std::pair<double, double>> order_band;
};

struct GridResult {
  int cells = 0;
  std::optional<ErrorNorms> norms;
  double wall_seconds = 0.0;
  RunStats stats;
  std::optional<std::string> error;
};

struct Verdict {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct BenchmarkReport {
  std::string case_id;
  BenchMode mode = BenchMode::Transient;
  ChannelSpec spec;
  SchemeConfig scheme;
  double reference_time = 0.0;
  std::vector<GridResult> grids;
  /// Keyed "h_l1", "h_l2", "h_linf", "q_l1", "q_l2", "q_linf".
  std::map<std::string, std::vector<ConvergenceOrder>> orders;
  std::vector<Verdict> verdicts;

  bool passed() const;
};

/// Runs every grid concurrently; a failing grid is recorded, not rethrown.
/// The case's boundary conditions override those of `scheme`.
BenchmarkReport bench_case(const BenchCase& bench, const std::vector<int>& grids,
                           const SchemeConfig& scheme);

}  // namespace swref
