#pragma once

// Pointwise hydraulic diagnostics for the 1D shallow-water system: wave
// speeds, Froude number, critical and normal depths, friction slopes and the
// regime / bed-slope taxonomies.
//
// The free functions are templated on the scalar type so the same code path
// can be re-evaluated in extended precision; `double` is the working type.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "swref/errors.hpp"
#include "swref/roots.hpp"

namespace swref {

inline constexpr double kGravity = 9.81;
inline constexpr double kDryTolerance = 1e-8;
inline constexpr double kCriticalFroudeBand = 1e-10;
inline constexpr double kSlopeTieTolerance = 1e-8;

enum class FrictionFamily { None, Manning, DarcyWeisbach, Chezy };

/// Friction law of the Manning (S_f = C_f q|q|/h^(10/3)) or the
/// Darcy-Weisbach / Chézy family (S_f = C_f q|q|/h^3).
struct FrictionLaw {
  FrictionFamily family = FrictionFamily::None;
  double coefficient = 0.0;

  static FrictionLaw none() { return {}; }
  static FrictionLaw manning(double n) { return checked({FrictionFamily::Manning, n}); }
  static FrictionLaw darcy_weisbach(double f) {
    return checked({FrictionFamily::DarcyWeisbach, f});
  }
  static FrictionLaw chezy(double c) { return checked({FrictionFamily::Chezy, c}); }

  bool is_none() const { return family == FrictionFamily::None; }
  bool is_manning() const { return family == FrictionFamily::Manning; }

  /// C_f: n² (Manning), f/(8g) (Darcy-Weisbach), 1/C² (Chézy), 0 (None).
  double cf(double g = kGravity) const {
    switch (family) {
      case FrictionFamily::None: return 0.0;
      case FrictionFamily::Manning: return coefficient * coefficient;
      case FrictionFamily::DarcyWeisbach: return coefficient / (8.0 * g);
      case FrictionFamily::Chezy: return 1.0 / (coefficient * coefficient);
    }
    return 0.0;
  }

  /// Exponent of h in the discharge form of the law.
  double depth_exponent() const { return is_manning() ? 10.0 / 3.0 : 3.0; }

  void validate() const {
    if (family != FrictionFamily::None && !(coefficient > 0.0 && std::isfinite(coefficient)))
      throw DomainError("friction coefficient must be positive");
  }

 private:
  static FrictionLaw checked(FrictionLaw law) {
    law.validate();
    return law;
  }
};

std::string_view to_string(FrictionFamily family);

/// Physical configuration shared by every generator and the solver.
struct ChannelSpec {
  double gravity = kGravity;
  double length = 1.0;
  double width = 0.0;  // 2D extent in y; 0 for 1D problems
  FrictionLaw friction{};
  double rain_rate = 0.0;
  double viscosity = 0.0;
  double dry_tolerance = kDryTolerance;

  void validate() const {
    if (!(gravity > 0.0)) throw DomainError("gravity must be positive");
    if (!(length > 0.0)) throw DomainError("length must be positive");
    if (!(width >= 0.0)) throw DomainError("width must be non-negative");
    if (!(rain_rate >= 0.0)) throw DomainError("rain rate must be non-negative");
    if (!(viscosity >= 0.0)) throw DomainError("viscosity must be non-negative");
    if (!(dry_tolerance > 0.0)) throw DomainError("dry tolerance must be positive");
    friction.validate();
  }
};

enum class FlowRegime { Subcritical, Supercritical, Critical, Dry };
enum class SlopeClass { Mild, Critical, Steep, Horizontal, Adverse };

std::string_view to_string(FlowRegime regime);
std::string_view to_string(SlopeClass slope);
/// Single-letter code used in profile names (M, C, S, H, A).
char slope_letter(SlopeClass slope);

template <typename Scalar>
struct WaveSpeeds {
  Scalar lambda1;
  Scalar lambda2;
};

/// Eigenvalues u ∓ √(gh) of the flux Jacobian.
template <typename Scalar>
WaveSpeeds<Scalar> wave_speeds(Scalar h, Scalar u, Scalar g = Scalar(kGravity)) {
  using std::sqrt;
  if (!(h >= Scalar(0))) throw DomainError("wave_speeds: negative depth");
  const Scalar c = sqrt(g * h);
  return {u - c, u + c};
}

/// Fr = |u|/√(gh); empty when the state is dry (h <= dry_tolerance).
template <typename Scalar>
std::optional<Scalar> froude(Scalar h, Scalar u, Scalar g = Scalar(kGravity),
                             Scalar dry_tolerance = Scalar(kDryTolerance)) {
  using std::abs;
  using std::sqrt;
  if (!(h > dry_tolerance)) return std::nullopt;
  return abs(u) / sqrt(g * h);
}

/// h_c = (|q|/√g)^(2/3), evaluated as cbrt(q²/g).
template <typename Scalar>
Scalar critical_height(Scalar q, Scalar g = Scalar(kGravity)) {
  using std::cbrt;
  return cbrt(q * q / g);
}

/// Friction slope in discharge form; empty when dry.
template <typename Scalar>
std::optional<Scalar> friction_slope(const FrictionLaw& law, Scalar h, Scalar q,
                                     Scalar g = Scalar(kGravity),
                                     Scalar dry_tolerance = Scalar(kDryTolerance)) {
  using std::abs;
  using std::pow;
  if (!(h > dry_tolerance)) return std::nullopt;
  if (law.is_none()) return Scalar(0);
  const Scalar cf = static_cast<Scalar>(law.cf(static_cast<double>(g)));
  if (law.is_manning()) return cf * q * abs(q) / pow(h, Scalar(10) / Scalar(3));
  return cf * q * abs(q) / (h * h * h);
}

/// Normal depth h_n solving S_f(h_n, q) = S₀; empty for S₀ <= 0 or law None.
template <typename Scalar>
std::optional<Scalar> normal_height(const FrictionLaw& law, Scalar q, Scalar slope,
                                    Scalar g = Scalar(kGravity)) {
  using std::abs;
  using std::pow;
  if (q == Scalar(0)) throw DomainError("normal_height: zero discharge");
  if (!(slope > Scalar(0)) || law.is_none()) return std::nullopt;

  const Scalar cf = static_cast<Scalar>(law.cf(static_cast<double>(g)));
  const Scalar k = cf * q * q;
  const Scalar p = law.is_manning() ? Scalar(10) / Scalar(3) : Scalar(3);
  const Scalar guess = pow(k / slope, Scalar(1) / p);

  // Polish: S_f(h) - S₀ is monotone decreasing in h.
  auto fdf = [&](Scalar h) {
    const Scalar sf = k / pow(h, p);
    return std::pair<Scalar, Scalar>{sf - slope, -p * sf / h};
  };
  const Scalar ftol = Scalar(1e-14) * slope;
  if (abs(fdf(guess).first) <= ftol) return guess;
  const auto res = bracketed_newton<Scalar>(fdf, guess * Scalar(0.5), guess * Scalar(2),
                                            ftol, Scalar(1e-15));
  if (!res.converged) throw SolverError("normal_height: root polish failed", static_cast<double>(res.residual));
  return res.root;
}

/// Regime from Fr: Dry below the dry tolerance, Critical within
/// kCriticalFroudeBand of Fr = 1.
template <typename Scalar>
FlowRegime classify_regime(Scalar h, Scalar q, const ChannelSpec& spec) {
  using std::abs;
  if (h < Scalar(spec.dry_tolerance)) return FlowRegime::Dry;
  const auto fr = froude<Scalar>(h, q / h, Scalar(spec.gravity), Scalar(spec.dry_tolerance));
  if (!fr) return FlowRegime::Dry;
  if (abs(*fr - Scalar(1)) <= Scalar(kCriticalFroudeBand)) return FlowRegime::Critical;
  return *fr < Scalar(1) ? FlowRegime::Subcritical : FlowRegime::Supercritical;
}

/// Bed-slope class: M/C/S from the ordering of h_n and h_c, H for S₀ = 0,
/// A for S₀ < 0. A frictionless positive slope has h_n -> 0 and is Steep.
template <typename Scalar>
SlopeClass classify_slope(const FrictionLaw& law, Scalar q, Scalar slope,
                          Scalar g = Scalar(kGravity)) {
  using std::abs;
  if (q == Scalar(0)) throw DomainError("classify_slope: zero discharge");
  if (slope == Scalar(0)) return SlopeClass::Horizontal;
  if (slope < Scalar(0)) return SlopeClass::Adverse;
  if (law.is_none()) return SlopeClass::Steep;
  const Scalar hn = *normal_height<Scalar>(law, q, slope, g);
  const Scalar hc = critical_height<Scalar>(q, g);
  if (abs(hn - hc) <= Scalar(kSlopeTieTolerance) * hc) return SlopeClass::Critical;
  return hn > hc ? SlopeClass::Mild : SlopeClass::Steep;
}

}  // namespace swref
