#include "swref/steady.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "swref/stencil.hpp"

namespace swref {

DepthAnsatz DepthAnsatz::uniform(double h0) {
  return {"uniform", [h0](double) { return h0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, true};
}

DepthAnsatz DepthAnsatz::linear(double h_up, double h_down, double length) {
  const double s = (h_down - h_up) / length;
  return {"linear", [=](double x) { return h_up + s * x; }, [s](double) { return s; },
          [](double) { return 0.0; }, false};
}

DepthAnsatz DepthAnsatz::gaussian_bump(double h0, double amplitude, double center,
                                       double width) {
  auto g = [=](double x) {
    const double r = (x - center) / width;
    return std::exp(-r * r);
  };
  return {"gaussian_bump",
          [=](double x) { return h0 * (1.0 + amplitude * g(x)); },
          [=](double x) {
            const double r = (x - center) / width;
            return -2.0 * h0 * amplitude * r / width * g(x);
          },
          [=](double x) {
            const double r = (x - center) / width;
            return h0 * amplitude * (4.0 * r * r - 2.0) / (width * width) * g(x);
          },
          false};
}

DepthAnsatz DepthAnsatz::tanh_transition(double h_up, double h_down, double center,
                                         double width) {
  const double mean = 0.5 * (h_up + h_down);
  const double half = 0.5 * (h_up - h_down);
  return {"tanh_transition",
          [=](double x) { return mean + half * std::tanh((center - x) / width); },
          [=](double x) {
            const double t = std::tanh((center - x) / width);
            return -half * (1.0 - t * t) / width;
          },
          [=](double x) {
            const double t = std::tanh((center - x) / width);
            return -2.0 * half * t * (1.0 - t * t) / (width * width);
          },
          false};
}

double verify_ansatz_derivatives(const DepthAnsatz& ansatz, double length, std::uint64_t seed,
                                 int samples) {
  std::mt19937_64 rng(seed);
  const double step = 1e-5 * length;
  std::uniform_real_distribution<double> pick(step, length - step);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = pick(rng);
    const double h = ansatz.depth(x);
    const double fd1 = (ansatz.depth(x + step) - ansatz.depth(x - step)) / (2.0 * step);
    const double fd2 = (ansatz.slope(x + step) - ansatz.slope(x - step)) / (2.0 * step);
    // Errors are scaled by the derivative magnitude plus the natural scale
    // h/L (resp. h/L²) so a vanishing derivative does not blow up the ratio.
    const double e1 = std::abs(fd1 - ansatz.slope(x)) / (std::abs(ansatz.slope(x)) + h / length);
    const double e2 = std::abs(fd2 - ansatz.curvature(x)) /
                      (std::abs(ansatz.curvature(x)) + h / (length * length));
    worst = std::max({worst, e1, e2});
  }
  if (worst > 1e-6) {
    std::ostringstream msg;
    msg << "depth ansatz '" << ansatz.name << "' derivatives inconsistent (scaled error "
        << worst << ")";
    throw DomainError(msg.str());
  }
  return worst;
}

std::vector<FlowRegime> regime_sequence(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Subcritical: return {FlowRegime::Subcritical};
    case RegimeLabel::Supercritical: return {FlowRegime::Supercritical};
    case RegimeLabel::Transcritical: return {FlowRegime::Subcritical, FlowRegime::Supercritical};
    case RegimeLabel::TranscriticalShock:
      return {FlowRegime::Subcritical, FlowRegime::Supercritical, FlowRegime::Subcritical};
  }
  return {};
}

std::vector<FlowRegime> observed_regimes(const SolutionProfile& profile, const ChannelSpec& spec) {
  std::vector<FlowRegime> seq;
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const auto r = classify_regime(profile.h[i], profile.q[i], spec);
    if (r == FlowRegime::Critical || r == FlowRegime::Dry) continue;
    if (seq.empty() || seq.back() != r) seq.push_back(r);
  }
  return seq;
}

void check_regime_label(const SolutionProfile& profile, const ChannelSpec& spec,
                        RegimeLabel label) {
  if (observed_regimes(profile, spec) != regime_sequence(label))
    throw DomainError("generated fields do not match the declared regime sequence");
}

double rain_discharge(const ChannelSpec& spec, double inflow, double x) {
  const double slack = 1e-12 * spec.length;
  if (x < -slack || x > spec.length + slack)
    throw DomainError("rain_discharge: position outside [0, L]");
  return spec.rain_rate * x + inflow;
}

SolutionProfile lake_at_rest(double x_begin, double dx, const Field& z, double eta) {
  auto p = SolutionProfile::on_grid(x_begin, dx * static_cast<double>(z.size()), z.size());
  p.z = z;
  p.h = (eta - z).max(0.0);
  p.metadata["eta"] = eta;
  return p;
}

double macdonald_bed_slope(const SteadyCase& steady, double x) {
  const auto& spec = steady.spec;
  const double g = spec.gravity;
  const double R = spec.rain_rate;
  const double h = steady.ansatz.depth(x);
  const double h1 = steady.ansatz.slope(x);
  const double q = rain_discharge(spec, steady.inflow_discharge, x);
  const double sf = *friction_slope(spec.friction, h, q, g, spec.dry_tolerance);

  // ∂ₓ(q²/h + gh²/2) + gh·z' + gh·S_f = μ∂ₓ(h∂ₓ(q/h)), solved for z'.
  double slope = (q * q / (g * h * h * h) - 1.0) * h1 - 2.0 * q * R / (g * h * h) - sf;
  if (spec.viscosity > 0.0) {
    const double h2 = steady.ansatz.curvature(x);
    // ∂ₓ(h∂ₓ(q/h)) = −R h'/h + q h'²/h² − q h''/h
    const double visc = -R * h1 / h + q * h1 * h1 / (h * h) - q * h2 / h;
    slope += spec.viscosity / (g * h) * visc;
  }
  return slope;
}

namespace {

struct Quadrature {
  double value;
  double error;
};

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double step = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * step);
  return acc * step / 3.0;
}

// Simpson on 4 panels with a Richardson correction against 2 panels; the
// segment is halved until the correction is below tol.
Quadrature integrate_segment(const std::function<double(double)>& f, double a, double b,
                             double tol, int depth = 0) {
  const double s2 = simpson(f, a, b, 2);
  const double s4 = simpson(f, a, b, 4);
  const double corr = (s4 - s2) / 15.0;
  if (std::abs(corr) <= tol || depth >= 24) return {s4 + corr, std::abs(corr)};
  const double mid = 0.5 * (a + b);
  const auto left = integrate_segment(f, a, mid, 0.5 * tol, depth + 1);
  const auto right = integrate_segment(f, mid, b, 0.5 * tol, depth + 1);
  return {left.value + right.value, left.error + right.error};
}

}  // namespace

SolutionProfile macdonald_topography(const SteadyCase& steady) {
  const auto& spec = steady.spec;
  spec.validate();
  if (steady.n_cells < 1) throw DomainError("macdonald_topography: need at least one cell");
  if (!steady.ansatz.depth) throw DomainError("macdonald_topography: empty depth ansatz");
  const double L = spec.length;
  auto p = SolutionProfile::on_grid(0.0, L, steady.n_cells);
  const auto n = p.size();

  // Depth floor on a grid four times finer than the cells, plus the ends.
  for (Eigen::Index k = 0; k <= 4 * n; ++k) {
    const double x = L * static_cast<double>(k) / static_cast<double>(4 * n);
    const double h = steady.ansatz.depth(x);
    if (!(h >= steady.depth_floor)) {
      std::ostringstream msg;
      msg << "depth ansatz falls below the floor " << steady.depth_floor << " at x = " << x;
      throw DomainError(msg.str());
    }
  }
  if (!std::isfinite(rain_discharge(spec, steady.inflow_discharge, L)))
    throw DomainError("macdonald_topography: discharge not finite");

  for (Eigen::Index i = 0; i < n; ++i) {
    p.h[i] = steady.ansatz.depth(p.x[i]);
    p.q[i] = rain_discharge(spec, steady.inflow_discharge, p.x[i]);
    p.u[i] = p.q[i] / p.h[i];
  }

  const bool closed_form = steady.ansatz.constant && spec.rain_rate == 0.0;
  double quad_error = 0.0;
  if (closed_form) {
    const double slope = macdonald_bed_slope(steady, 0.0);
    p.z = -slope * (L - p.x);
  } else {
    const std::function<double(double)> zp = [&](double x) { return macdonald_bed_slope(steady, x); };
    const double scale = std::abs(zp(0.0)) + std::abs(zp(L)) + std::abs(zp(0.5 * L)) + 1e-12;
    const double tol = 1e-13 * scale * p.dx;
    // z(x_i) = −∫_{x_i}^{L} z'; accumulate from the downstream edge.
    double acc = 0.0;
    double right = L;
    for (Eigen::Index i = n; i-- > 0;) {
      const auto seg = integrate_segment(zp, p.x[i], right, tol);
      acc += seg.value;
      quad_error += seg.error;
      p.z[i] = -acc;
      right = p.x[i];
    }
    const double zscale = std::max(1.0, p.z.abs().maxCoeff());
    if (!std::isfinite(acc) || quad_error > 1e-9 * zscale)
      throw IntegrationError("macdonald_topography: bed quadrature did not converge", quad_error);
  }
  p.metadata["inflow_discharge"] = steady.inflow_discharge;
  p.metadata["quadrature_error"] = quad_error;
  return p;
}

SteadyResidual steady_residual(const SolutionProfile& profile, const ChannelSpec& spec,
                               double inflow) {
  constexpr int points = 7;
  const auto n = profile.size();
  if (n < 8) throw StencilError("steady_residual: need at least 8 cells");
  const double g = spec.gravity;
  const double dry = spec.dry_tolerance;

  Field h = profile.h;
  Field q = profile.q;
  Field hs = h.max(dry);  // guards divisions on dry cells; those cells are skipped
  Field w = (h > dry).select(q / hs, 0.0);

  const Field flux = q * w + 0.5 * g * h * h;
  const Field dflux = differentiate(flux, profile.dx, points);
  const Field dz = differentiate(profile.z, profile.dx, points);
  Field visc = Field::Zero(n);
  if (spec.viscosity > 0.0) {
    const Field dw = differentiate(w, profile.dx, points);
    visc = spec.viscosity * differentiate(h * dw, profile.dx, points);
  }

  SteadyResidual out;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index s = stencil_start(i, n, points);
    // Viscous terms nest two stencils, so widen the wet check accordingly.
    const Eigen::Index lo = spec.viscosity > 0.0 ? std::max<Eigen::Index>(0, s - points) : s;
    const Eigen::Index hi = spec.viscosity > 0.0 ? std::min<Eigen::Index>(n, s + 2 * points) : s + points;
    if ((h.segment(lo, hi - lo) <= dry).any()) continue;
    const double sf = *friction_slope(spec.friction, h[i], q[i], g, dry);
    const double momentum = dflux[i] + g * h[i] * dz[i] + g * h[i] * sf - visc[i];
    const double mass = std::abs(q[i] - (spec.rain_rate * profile.x[i] + inflow));
    out.momentum = std::max(out.momentum, std::abs(momentum));
    out.mass = std::max(out.mass, mass);
    ++out.evaluated_cells;
  }
  return out;
}

}  // namespace swref
