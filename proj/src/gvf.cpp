#include "swref/gvf.hpp"

#include <cmath>
#include <sstream>

namespace swref {

namespace {

bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

ProfileType::ProfileType(SlopeClass slope, int zone) : slope_(slope), zone_(zone) {
  if (!admissible(slope, zone)) {
    std::ostringstream msg;
    msg << "inadmissible profile type " << slope_letter(slope) << zone;
    throw DomainError(msg.str());
  }
}

bool ProfileType::admissible(SlopeClass slope, int zone) {
  switch (slope) {
    case SlopeClass::Mild:
    case SlopeClass::Steep:
    case SlopeClass::Critical:
      return zone >= 1 && zone <= 3;
    case SlopeClass::Horizontal:
    case SlopeClass::Adverse:
      return zone == 2 || zone == 3;
  }
  return false;
}

std::vector<ProfileType> ProfileType::all() {
  std::vector<ProfileType> out;
  for (auto slope : {SlopeClass::Mild, SlopeClass::Steep, SlopeClass::Critical,
                     SlopeClass::Horizontal, SlopeClass::Adverse}) {
    for (int zone = 1; zone <= 3; ++zone)
      if (admissible(slope, zone)) out.emplace_back(slope, zone);
  }
  return out;
}

std::string ProfileType::name() const {
  return std::string(1, slope_letter(slope_)) + std::to_string(zone_);
}

int ProfileType::trend() const {
  // sign((S₀ − S_f)/(1 − Fr²)): S_f decreases with h, Fr decreases with h.
  switch (slope_) {
    case SlopeClass::Mild:
    case SlopeClass::Steep:
      return zone_ == 2 ? -1 : 1;
    case SlopeClass::Critical:
      return zone_ == 2 ? 0 : 1;
    case SlopeClass::Horizontal:
    case SlopeClass::Adverse:
      return zone_ == 2 ? -1 : 1;
  }
  return 0;
}

void GvfProblem::validate() const {
  spec.validate();
  if (discharge == 0.0 || !std::isfinite(discharge))
    throw DomainError("GVF discharge must be non-zero");
  if (!(boundary_depth > spec.dry_tolerance))
    throw DomainError("GVF boundary depth must exceed the dry tolerance");
  if (!(reach_length > 0.0)) throw DomainError("GVF reach length must be positive");
  if (n_cells < 2) throw DomainError("GVF needs at least two cells");
  if (!std::isfinite(bed_slope)) throw DomainError("GVF bed slope must be finite");
}

double GvfProblem::critical_depth() const {
  return critical_height(discharge, spec.gravity);
}

std::optional<double> GvfProblem::normal_depth() const {
  return normal_height(spec.friction, discharge, bed_slope, spec.gravity);
}

double gvf_rhs(const GvfProblem& problem, double h) {
  const auto& spec = problem.spec;
  const auto sf = friction_slope(spec.friction, h, problem.discharge, spec.gravity,
                                 spec.dry_tolerance);
  if (!sf) throw DomainError("gvf_rhs: dry depth");
  const double fr = *froude(h, problem.discharge / h, spec.gravity, spec.dry_tolerance);
  const double denom = 1.0 - fr * fr;
  if (std::abs(denom) < kGvfSingularityGuard)
    throw CriticalSingularity("gvf_rhs: depth at the critical singularity", h, 0.0);
  return (problem.bed_slope - *sf) / denom;
}

ProfileType classify_profile(const GvfProblem& problem) {
  problem.validate();
  const auto& spec = problem.spec;
  const SlopeClass slope =
      classify_slope(spec.friction, problem.discharge, problem.bed_slope, spec.gravity);
  const double h = problem.boundary_depth;
  const double hc = problem.critical_depth();
  const auto hn = problem.normal_depth();

  if (slope == SlopeClass::Critical) {
    if (near(h, hc, kZoneTieTolerance)) return {slope, 2};
    return {slope, h > hc ? 1 : 3};
  }
  if (near(h, hc, kZoneTieTolerance))
    throw AmbiguousZone("control depth lies on the critical-depth line");
  if (hn && near(h, *hn, kZoneTieTolerance))
    throw AmbiguousZone("control depth lies on the normal-depth line");

  switch (slope) {
    case SlopeClass::Mild:
      return {slope, h > *hn ? 1 : (h > hc ? 2 : 3)};
    case SlopeClass::Steep:
      // Frictionless steep slopes have h_n -> 0: only zones 1 and 2 occur.
      if (!hn) return {slope, h > hc ? 1 : 2};
      return {slope, h > hc ? 1 : (h > *hn ? 2 : 3)};
    case SlopeClass::Horizontal:
    case SlopeClass::Adverse:
      return {slope, h > hc ? 2 : 3};
    case SlopeClass::Critical:
      break;
  }
  throw DomainError("classify_profile: unreachable slope class");
}

double march_backwater(const GvfProblem& problem, double h_start, double x_start,
                       double x_end, int steps) {
  if (steps < 1) throw DomainError("march_backwater: need at least one step");
  const double hc = problem.critical_depth();
  const double dry = problem.spec.dry_tolerance;
  const bool above = h_start > hc;
  const double step = (x_end - x_start) / steps;

  double h = h_start;
  double x = x_start;
  auto rhs = [&](double depth, double at) {
    if (!(depth > dry)) throw DryOut("backwater depth collapsed below the dry tolerance", at);
    try {
      return gvf_rhs(problem, depth);
    } catch (const CriticalSingularity&) {
      throw ProfileArrested("backwater profile reached critical depth", depth, at, 0);
    }
  };
  // A stage on the far side of h_c means the profile goes critical inside the step.
  auto stage = [&](double depth, double at) {
    if (depth > dry && (depth > hc) != above)
      throw ProfileArrested("backwater profile crossed critical depth", depth, at, 0);
    return rhs(depth, at);
  };
  for (int s = 0; s < steps; ++s) {
    const double k1 = rhs(h, x);
    const double k2 = stage(h + 0.5 * step * k1, x + 0.5 * step);
    const double k3 = stage(h + 0.5 * step * k2, x + 0.5 * step);
    const double k4 = stage(h + step * k3, x + step);
    const double next = h + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = x_start + (s + 1) * step;
    if (!(next > dry)) throw DryOut("backwater depth collapsed below the dry tolerance", x);
    if ((next > hc) != above)
      throw ProfileArrested("backwater profile crossed critical depth", next, x, 0);
    // dh/dx keeps its sign inside a zone; a reversal is the singularity leaking in.
    if ((next - h) * step * k1 < 0.0)
      throw ProfileArrested("backwater profile turned near critical depth", next, x, 0);
    h = next;
  }
  return h;
}

SolutionProfile integrate_backwater(const GvfProblem& problem) {
  problem.validate();
  const auto& spec = problem.spec;
  const int n = problem.n_cells;
  auto out = SolutionProfile::on_grid(problem.origin, problem.reach_length, n);
  const double x_end = out.x_end();
  const double hc = problem.critical_depth();
  const double h0 = problem.boundary_depth;

  out.metadata["discharge"] = problem.discharge;
  out.metadata["bed_slope"] = problem.bed_slope;
  out.metadata["control_depth"] = h0;

  const FlowRegime regime = classify_regime(h0, problem.discharge, spec);
  const SlopeClass slope =
      classify_slope(spec.friction, problem.discharge, problem.bed_slope, spec.gravity);
  if (slope == SlopeClass::Critical && near(h0, hc, kZoneTieTolerance)) {
    out.h.setConstant(h0);  // C2: uniform flow on the coincident lines
  } else if (regime == FlowRegime::Critical) {
    throw CriticalSingularity("integrate_backwater: control depth is critical", h0, x_end);
  } else {
    // Subcritical controls sit downstream and march upstream; supercritical
    // controls sit upstream and march downstream.
    const bool upstream = regime == FlowRegime::Subcritical;
    double h = h0;
    double x = upstream ? x_end : problem.origin;
    for (int k = 0; k < n; ++k) {
      const int i = upstream ? n - 1 - k : k;
      try {
        h = march_backwater(problem, h, x, out.x[i], 1);
      } catch (const ProfileArrested& e) {
        throw ProfileArrested("integrate_backwater: profile arrested at critical depth",
                              e.depth(), e.position(), static_cast<std::size_t>(k));
      }
      x = out.x[i];
      out.h[i] = h;
    }
  }
  out.q.setConstant(problem.discharge);
  out.u = out.q / out.h;
  out.z = problem.bed_slope * (x_end - out.x);
  return out;
}

SolutionProfile concatenate_reaches(std::span<const SolutionProfile> reaches) {
  if (reaches.empty()) throw CompositionError("no reaches to concatenate");
  if (reaches.size() == 1) return reaches.front();

  const auto& first = reaches.front();
  const double q0 = first.q.size() ? first.q[0] : 0.0;
  Eigen::Index total = 0;
  for (std::size_t k = 0; k < reaches.size(); ++k) {
    const auto& r = reaches[k];
    if (r.size() == 0) throw CompositionError("empty reach");
    if (!near(r.dx, first.dx, 1e-12)) throw CompositionError("reaches have different spacing");
    if (((r.q - q0).abs() > 1e-12 * std::abs(q0)).any())
      throw CompositionError("reaches carry different discharges");
    if (k > 0) {
      const double gap = r.x_begin - reaches[k - 1].x_end();
      if (std::abs(gap) > 1e-9 * std::max(1.0, std::abs(r.x_begin)))
        throw CompositionError("reaches are not contiguous");
    }
    total += r.size();
  }

  // Bed offsets, accumulated from the downstream-most reach.
  auto edge = [](const SolutionProfile& r, bool left) {
    const auto n = r.size();
    if (n < 2) return r.z[0];
    return left ? 1.5 * r.z[0] - 0.5 * r.z[1] : 1.5 * r.z[n - 1] - 0.5 * r.z[n - 2];
  };
  std::vector<double> offset(reaches.size(), 0.0);
  for (std::size_t k = reaches.size() - 1; k-- > 0;) {
    offset[k] = edge(reaches[k + 1], true) + offset[k + 1] - edge(reaches[k], false);
  }

  SolutionProfile out;
  out.x_begin = first.x_begin;
  out.dx = first.dx;
  out.time = first.time;
  out.metadata = first.metadata;
  out.x.resize(total);
  out.h.resize(total);
  out.u.resize(total);
  out.z.resize(total);
  out.q.resize(total);
  Eigen::Index at = 0;
  for (std::size_t k = 0; k < reaches.size(); ++k) {
    const auto& r = reaches[k];
    const auto n = r.size();
    out.x.segment(at, n) = first.x_begin + (Field::LinSpaced(n, at, at + n - 1) + 0.5) * first.dx;
    out.h.segment(at, n) = r.h;
    out.u.segment(at, n) = r.u;
    out.z.segment(at, n) = r.z + offset[k];
    out.q.segment(at, n) = r.q;
    at += n;
  }
  out.metadata.erase("control_depth");
  return out;
}

}  // namespace swref
