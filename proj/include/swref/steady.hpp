#pragma once

// Steady-state generators. MacDonald-type solutions prescribe a depth h(x)
// and recover the bed from the steady momentum balance; bump flows prescribe
// the bed and recover the depth from Bernoulli's relation.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swref/core.hpp"
#include "swref/profile.hpp"

namespace swref {

/// Smooth positive depth with analytic first and second derivatives.
struct DepthAnsatz {
  std::string name;
  std::function<double(double)> depth;
  std::function<double(double)> slope;
  std::function<double(double)> curvature;
  bool constant = false;

  static DepthAnsatz uniform(double h0);
  static DepthAnsatz linear(double h_up, double h_down, double length);
  /// h0·(1 + amplitude·exp(−((x − center)/width)²))
  static DepthAnsatz gaussian_bump(double h0, double amplitude, double center, double width);
  /// Smooth step from h_up to h_down: mean + half-difference·tanh((center − x)/width)
  static DepthAnsatz tanh_transition(double h_up, double h_down, double center, double width);
};

/// Spot-checks the analytic derivatives of `ansatz` against central
/// differences (step 1e-5·L) at `samples` random points of [0, L]; returns
/// the largest scaled error and throws DomainError above 1e-6.
double verify_ansatz_derivatives(const DepthAnsatz& ansatz, double length, std::uint64_t seed,
                                 int samples = 32);

/// Declared regime sequence along the channel, critical cells ignored.
enum class RegimeLabel { Subcritical, Supercritical, Transcritical, TranscriticalShock };

std::vector<FlowRegime> regime_sequence(RegimeLabel label);
/// Compressed regime sequence of a profile (consecutive duplicates merged,
/// Critical and Dry cells skipped).
std::vector<FlowRegime> observed_regimes(const SolutionProfile& profile, const ChannelSpec& spec);
/// Throws DomainError if the profile's regimes do not match the label.
void check_regime_label(const SolutionProfile& profile, const ChannelSpec& spec, RegimeLabel label);

struct SteadyCase {
  ChannelSpec spec;
  double inflow_discharge = 1.0;
  DepthAnsatz ansatz;
  RegimeLabel regime = RegimeLabel::Subcritical;
  int n_cells = 100;
  double depth_floor = 1e-3;
};

/// q(x) = R·x + q₀ for 0 <= x <= L.
double rain_discharge(const ChannelSpec& spec, double inflow, double x);

/// Lake at rest: h = max(η − z, 0), u = 0.
SolutionProfile lake_at_rest(double x_begin, double dx, const Field& z, double eta);

/// Bed slope z'(x) making the ansatz an exact steady state of the 1D system
/// with friction, rain (q = R·x + q₀) and viscosity.
double macdonald_bed_slope(const SteadyCase& steady, double x);

/// MacDonald-type steady state on [0, L]; the bed is anchored at z(L) = 0.
SolutionProfile macdonald_topography(const SteadyCase& steady);

/// Smooth bed with a single crest.
struct TopographyAnsatz {
  std::string name;
  std::function<double(double)> elevation;
  std::function<double(double)> slope;
  std::function<double(double)> curvature;
  double crest = 0.0;

  static TopographyAnsatz flat(double crest_position = 0.0);
  /// amplitude·exp(−((x − center)/width)²)
  static TopographyAnsatz gaussian(double amplitude, double center, double width);
};

enum class BumpRegime { Subcritical, Transcritical, TranscriticalShock };

struct BumpCase {
  ChannelSpec spec;
  double discharge = 1.0;
  TopographyAnsatz bed;
  BumpRegime regime = BumpRegime::Subcritical;
  /// Used by the subcritical and shock regimes (downstream control).
  double downstream_depth = 1.0;
  int n_cells = 100;
};

/// Frictionless flow over a bump from the Bernoulli cubic
/// h³ + (z − H)h² + q²/(2g) = 0.
class BumpFlow {
 public:
  explicit BumpFlow(const BumpCase& bump);

  double depth(double x) const;
  /// Depth and its first two x-derivatives (implicit differentiation of
  /// Bernoulli's relation); only valid away from the crest and the shock.
  std::array<double, 3> depth_derivatives(double x) const;
  std::optional<double> shock_position() const { return shock_; }
  double upstream_head() const { return head_up_; }
  double downstream_head() const { return head_down_; }
  double critical_depth() const { return hc_; }
  /// |h³ + (z − H)h² + q²/(2g)| at x, with the head of the branch in use.
  double cubic_residual(double x) const;

  SolutionProfile sample() const;

 private:
  double head_at(double x) const;
  bool supercritical_at(double x) const;

  BumpCase case_;
  double hc_;
  double head_up_;
  double head_down_;
  std::optional<double> shock_;
};

SolutionProfile bump_flow(const BumpCase& bump);

/// Depth ansatz reproducing a smooth (shock-free) bump flow.
DepthAnsatz bump_depth_ansatz(const BumpCase& bump);

/// Max defect of the steady balances on wet cells whose stencil is wet:
/// momentum ∂ₓ(q²/h + gh²/2) + gh∂ₓz + ghS_f − μ∂ₓ(h∂ₓ(q/h)), and mass
/// |q − (R·x + q₀)|.
struct SteadyResidual {
  double momentum = 0.0;
  double mass = 0.0;
  Eigen::Index evaluated_cells = 0;
};

SteadyResidual steady_residual(const SolutionProfile& profile, const ChannelSpec& spec,
                               double inflow);

}  // namespace swref
