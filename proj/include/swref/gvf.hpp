#pragma once

// Gradually varied flow: dh/dx = (S₀ − S_f)/(1 − Fr²) at constant discharge,
// the 13 backwater profile types and a fixed-step RK4 integrator that marches
// upstream for subcritical controls and downstream for supercritical ones.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swref/core.hpp"
#include "swref/profile.hpp"

namespace swref {

inline constexpr double kGvfSingularityGuard = 1e-6;
inline constexpr double kZoneTieTolerance = 1e-6;

/// Backwater curve type: slope class plus zone (1 above both the normal- and
/// critical-depth lines, 2 between them, 3 below both).
class ProfileType {
 public:
  ProfileType(SlopeClass slope, int zone);

  static bool admissible(SlopeClass slope, int zone);
  /// The 13 admissible types in M, S, C, H, A order.
  static std::vector<ProfileType> all();

  SlopeClass slope() const { return slope_; }
  int zone() const { return zone_; }
  /// "M1", "S2", "C3", ...
  std::string name() const;
  /// Sign of dh/dx along x (positive downstream): +1 rising, -1 falling,
  /// 0 for the uniform C2 line.
  int trend() const;

  friend bool operator==(const ProfileType&, const ProfileType&) = default;

 private:
  SlopeClass slope_;
  int zone_;
};

struct GvfProblem {
  ChannelSpec spec;
  double discharge = 1.0;
  double bed_slope = 0.0;
  /// Depth at the control section: the downstream end for subcritical
  /// controls, the upstream end for supercritical ones.
  double boundary_depth = 1.0;
  double reach_length = 1.0;
  int n_cells = 2;
  /// x coordinate of the upstream end of the reach.
  double origin = 0.0;

  void validate() const;
  double critical_depth() const;
  std::optional<double> normal_depth() const;
};

/// dh/dx at depth h. Throws CriticalSingularity when |1 − Fr²| is below the
/// guard and DomainError on a dry depth.
double gvf_rhs(const GvfProblem& problem, double h);

/// Throws AmbiguousZone when the control depth sits on the h_n or h_c line
/// (except the C2 case, where both lines coincide and the depth is on them).
ProfileType classify_profile(const GvfProblem& problem);

/// Fixed-step RK4 march of the GVF equation from (x_start, h_start) to x_end.
/// Throws ProfileArrested if the critical depth is reached or crossed and
/// DryOut if the depth collapses.
double march_backwater(const GvfProblem& problem, double h_start, double x_start,
                       double x_end, int steps);

/// Water-surface profile sampled at the reach's cell centres. The bed is
/// z(x) = S₀·(x_end − x), i.e. z = 0 at the downstream end.
SolutionProfile integrate_backwater(const GvfProblem& problem);

/// Joins contiguous reaches of equal Δx and discharge into one profile, shifting
/// each reach's bed so the composite bed is continuous.
SolutionProfile concatenate_reaches(std::span<const SolutionProfile> reaches);

}  // namespace swref
