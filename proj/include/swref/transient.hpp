#pragma once

// Time-dependent exact solutions: Ritter, Stoker and Dressler dam breaks and
// Thacker's oscillations in a parabolic basin, plus a finite-difference
// residual oracle for sampled space-time slabs.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "swref/core.hpp"
#include "swref/profile.hpp"

namespace swref {

struct PointState {
  double h = 0.0;
  double u = 0.0;
};

struct PointState2D {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct DamBreakSetup {
  double h_left = 1.0;
  double h_right = 0.0;
  double dam_position = 0.5;
  FrictionLaw friction{};
  double length = 1.0;
  int n_cells = 100;
  double gravity = kGravity;

  void validate() const;
};

/// Step initial condition (exact t = 0 state).
PointState dam_break_initial(const DamBreakSetup& setup, double x);

/// Dry-bed dam break: undisturbed state, parabolic rarefaction, dry bed.
PointState ritter(const DamBreakSetup& setup, double x, double t);

struct StokerState {
  double h_m = 0.0;
  double u_m = 0.0;
  double shock_speed = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Intermediate state of the wet-bed dam break: root of
/// 2(√(g h_l) − √(g h_m)) = (h_m − h_r)·√(g(h_m + h_r)/(2 h_m h_r)).
StokerState stoker_intermediate(double h_left, double h_right, double g = kGravity);

class StokerSolution {
 public:
  explicit StokerSolution(const DamBreakSetup& setup);
  PointState operator()(double x, double t) const;
  const StokerState& state() const { return state_; }
  double shock_position(double t) const;
  /// Positions of the fan head, fan tail and shock at time t.
  std::vector<double> fronts(double t) const;

 private:
  DamBreakSetup setup_;
  StokerState state_;
};

PointState stoker(const DamBreakSetup& setup, double x, double t);

/// Wave-tip region of the Dressler solution at a given time: the first-order
/// correction is used up to `start`, beyond which the velocity is held at its
/// maximum and the depth follows a resistance-dominated square-root profile
/// down to the front (never ahead of the frictionless front).
struct DresslerTip {
  double start = 0.0;
  double front = 0.0;
  double velocity = 0.0;
  double depth = 0.0;
};

class DresslerSolution {
 public:
  explicit DresslerSolution(const DamBreakSetup& setup);
  PointState operator()(double x, double t) const;
  PointState at(double x, double t, const DresslerTip& tip) const;
  /// Empty for a frictionless setup (pure Ritter).
  std::optional<DresslerTip> tip(double t) const;
  /// Corrected fields without any tip treatment.
  PointState corrected(double x, double t) const;

 private:
  DamBreakSetup setup_;
  double resistance_;  // g²·C_f
};

PointState dressler(const DamBreakSetup& setup, double x, double t);

enum class DamBreakKind { Ritter, Stoker, Dressler };

/// Cell-centre snapshot at time t (t = 0 returns the step initial condition).
SolutionProfile dam_break_snapshot(const DamBreakSetup& setup, DamBreakKind kind, double t);

enum class ThackerVariant { PlanarSurface, CurvedSurface };

/// Oscillation in the basin z = h0·(r/a)² − h0 centred in [0, L] (or [0, L]²).
/// `amplitude` is the orbit radius of the planar variant and the reference
/// radius r0 of the curved variant.
struct ThackerSetup {
  double a = 1.0;
  double h0 = 0.5;
  double amplitude = 0.5;
  ThackerVariant variant = ThackerVariant::PlanarSurface;
  int dimensions = 1;
  double length = 4.0;
  int nx = 100;
  int ny = 100;
  double gravity = kGravity;

  void validate() const;
  double frequency() const;
  double period() const;
  double center() const { return 0.5 * length; }
  /// Largest shoreline distance from the basin centre over a period.
  double max_shoreline_radius() const;
  /// Exact wet volume (length in 1D, volume in 2D).
  double volume() const;
};

double thacker_bed(const ThackerSetup& setup, double x, double y);
PointState thacker(const ThackerSetup& setup, double x, double t);
PointState2D thacker(const ThackerSetup& setup, double x, double y, double t);

/// Snapshots store exact cell averages of h (so Σh·Δx is the exact wet
/// volume) and velocities at cell centres.
SolutionProfile thacker_snapshot(const ThackerSetup& setup, double t);
SolutionProfile2D thacker_snapshot_2d(const ThackerSetup& setup, double t);

/// ∫∫ max(R² − s² − t², 0) over [s0, s1] × [t0, t1], in closed form.
double paraboloid_cap_integral(double radius, double s0, double s1, double t0, double t1);

/// Uniform space-time lattice; rows are time levels, columns are x.
struct SpaceTimeSlab {
  double x_begin = 0.0;
  double dx = 1.0;
  double t_begin = 0.0;
  double dt = 1.0;
  Field2D h;
  Field2D u;
  Field z;

  double x(Eigen::Index i) const { return x_begin + static_cast<double>(i) * dx; }
  double t(Eigen::Index n) const { return t_begin + static_cast<double>(n) * dt; }

  static SpaceTimeSlab sample(const std::function<PointState(double, double)>& field,
                              const std::function<double(double)>& bed, double x_begin,
                              double dx, Eigen::Index nx, double t_begin, double dt,
                              Eigen::Index nt);
};

/// 2D lattice; one (nx, ny) array per time level.
struct SpaceTimeSlab2D {
  double x_begin = 0.0;
  double y_begin = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  double t_begin = 0.0;
  double dt = 1.0;
  std::vector<Field2D> h;
  std::vector<Field2D> u;
  std::vector<Field2D> v;
  Field2D z;

  static SpaceTimeSlab2D sample(const std::function<PointState2D(double, double, double)>& field,
                                const std::function<double(double, double)>& bed,
                                double x_begin, double y_begin, double dx, double dy,
                                Eigen::Index nx, Eigen::Index ny, double t_begin, double dt,
                                Eigen::Index nt);
};

struct ResidualMask {
  /// Extra cells excluded on each side of fronts and dry cells.
  int buffer_cells = 2;
  /// Positions of non-smooth features (fan edges, shocks, fronts) at time t.
  std::function<std::vector<double>(double)> fronts;
  /// Tracked shock (position, speed) at time t, for the jump-condition check.
  std::function<std::optional<std::pair<double, double>>(double)> shock;
};

struct TransientResidual {
  double mass = 0.0;
  double momentum = 0.0;
  Eigen::Index evaluated_points = 0;
  std::optional<double> rankine_hugoniot;
};

/// L∞ defect of the 1D mass and momentum equations on the masked lattice,
/// with 4th-order central differences in x and t.
TransientResidual transient_residual(const SpaceTimeSlab& slab, const ChannelSpec& spec,
                                     const ResidualMask& mask = {});
/// 2D analogue; `momentum` is the larger of the x and y momentum defects.
TransientResidual transient_residual(const SpaceTimeSlab2D& slab, const ChannelSpec& spec,
                                     const ResidualMask& mask = {});

}  // namespace swref
