#include <cmath>
#include <memory>
#include <sstream>

#include "swref/roots.hpp"
#include "swref/steady.hpp"

namespace swref {

TopographyAnsatz TopographyAnsatz::flat(double crest_position) {
  return {"flat", [](double) { return 0.0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, crest_position};
}

TopographyAnsatz TopographyAnsatz::gaussian(double amplitude, double center, double width) {
  auto g = [=](double x) {
    const double r = (x - center) / width;
    return std::exp(-r * r);
  };
  return {"gaussian",
          [=](double x) { return amplitude * g(x); },
          [=](double x) { return -2.0 * amplitude * (x - center) / (width * width) * g(x); },
          [=](double x) {
            const double r = (x - center) / width;
            return amplitude * (4.0 * r * r - 2.0) / (width * width) * g(x);
          },
          center};
}

namespace {

// Root of the specific energy relation E(h) = h + q²/(2gh²) = e on the
// requested branch. Returns h_c when e sits within rounding of E(h_c).
double energy_root(double q, double g, double e, bool supercritical, double x) {
  const double hc = critical_height(q, g);
  const double ec = 1.5 * hc;
  const double k = q * q / (2.0 * g);
  if (e < ec) {
    if (ec - e <= 1e-12 * ec) return hc;
    std::ostringstream msg;
    msg << "bump flow is choked at x = " << x << " (head deficit " << ec - e << ")";
    throw ChokedFlow(msg.str(), x);
  }
  if (e - ec <= 1e-15 * ec) return hc;
  auto fdf = [&](double h) {
    return std::pair<double, double>{h + k / (h * h) - e, 1.0 - 2.0 * k / (h * h * h)};
  };
  const double lo = supercritical ? std::abs(q) / std::sqrt(2.0 * g * e) : hc;
  const double hi = supercritical ? hc : e;
  const auto res = bracketed_newton<double>(fdf, lo, hi, 1e-15 * e, 1e-16);
  if (!res.converged) throw SolverError("bump flow: Bernoulli root did not converge", res.residual);
  return res.root;
}

}  // namespace

BumpFlow::BumpFlow(const BumpCase& bump) : case_(bump) {
  const auto& spec = bump.spec;
  spec.validate();
  if (!spec.friction.is_none() || spec.rain_rate != 0.0 || spec.viscosity != 0.0)
    throw DomainError("bump flow requires a frictionless, rainless, inviscid channel");
  if (bump.discharge == 0.0) throw DomainError("bump flow requires a non-zero discharge");
  if (!bump.bed.elevation) throw DomainError("bump flow requires a bed");
  const double g = spec.gravity;
  const double q = bump.discharge;
  const double L = spec.length;
  hc_ = critical_height(q, g);
  const double k = q * q / (2.0 * g);

  const double hd = bump.downstream_depth;
  head_down_ = hd + k / (hd * hd) + bump.bed.elevation(L);
  head_up_ = bump.bed.elevation(bump.bed.crest) + 1.5 * hc_;

  switch (bump.regime) {
    case BumpRegime::Subcritical:
      if (!(hd > hc_)) throw DomainError("subcritical bump flow needs a subcritical downstream depth");
      head_up_ = head_down_;
      break;
    case BumpRegime::Transcritical:
      head_down_ = head_up_;
      break;
    case BumpRegime::TranscriticalShock: {
      if (!(hd > hc_)) throw DomainError("bump shock needs a subcritical downstream depth");
      // Stationary jump: the momentum function q²/h + gh²/2 is continuous.
      auto jump = [&](double x) {
        const double e_sub = head_down_ - bump.bed.elevation(x);
        // Subcritical branch choked here: the jump lies further downstream.
        if (e_sub < 1.5 * hc_) return 1.0;
        const double h1 = energy_root(q, g, head_up_ - bump.bed.elevation(x), true, x);
        const double h2 = energy_root(q, g, e_sub, false, x);
        return (q * q / h1 + 0.5 * g * h1 * h1) - (q * q / h2 + 0.5 * g * h2 * h2);
      };
      const double a = bump.bed.crest;
      // M(h₁) − M(h₂) is positive upstream of the jump and negative downstream.
      if (!(jump(a) > 0.0) || !(jump(L) < 0.0))
        throw DomainError("no admissible hydraulic jump between the crest and the outlet");
      shock_ = bisect<double>(jump, a, L, 1e-10 * L);
      break;
    }
  }
}

bool BumpFlow::supercritical_at(double x) const {
  if (case_.regime == BumpRegime::Subcritical) return false;
  if (x <= case_.bed.crest) return false;
  return !(shock_ && x > *shock_);
}

double BumpFlow::head_at(double x) const {
  if (case_.regime == BumpRegime::TranscriticalShock && x > *shock_) return head_down_;
  return head_up_;
}

double BumpFlow::depth(double x) const {
  if (case_.regime != BumpRegime::Subcritical && x == case_.bed.crest) return hc_;
  const double e = head_at(x) - case_.bed.elevation(x);
  return energy_root(case_.discharge, case_.spec.gravity, e, supercritical_at(x), x);
}

std::array<double, 3> BumpFlow::depth_derivatives(double x) const {
  const double g = case_.spec.gravity;
  const double q = case_.discharge;
  const double h = depth(x);
  const double e1 = 1.0 - q * q / (g * h * h * h);
  const double e2 = 3.0 * q * q / (g * h * h * h * h);
  const double h1 = -case_.bed.slope(x) / e1;
  const double h2 = -(case_.bed.curvature(x) + e2 * h1 * h1) / e1;
  return {h, h1, h2};
}

double BumpFlow::cubic_residual(double x) const {
  const double h = depth(x);
  const double k = case_.discharge * case_.discharge / (2.0 * case_.spec.gravity);
  return std::abs(h * h * h + (case_.bed.elevation(x) - head_at(x)) * h * h + k);
}

SolutionProfile BumpFlow::sample() const {
  auto p = SolutionProfile::on_grid(0.0, case_.spec.length, case_.n_cells);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    p.z[i] = case_.bed.elevation(p.x[i]);
    p.h[i] = depth(p.x[i]);
  }
  p.q.setConstant(case_.discharge);
  p.u = p.q / p.h;
  p.metadata["crest_position"] = case_.bed.crest;
  p.metadata["upstream_head"] = head_up_;
  p.metadata["downstream_head"] = head_down_;
  if (shock_) p.metadata["shock_position"] = *shock_;
  return p;
}

SolutionProfile bump_flow(const BumpCase& bump) { return BumpFlow(bump).sample(); }

DepthAnsatz bump_depth_ansatz(const BumpCase& bump) {
  if (bump.regime == BumpRegime::TranscriticalShock)
    throw DomainError("bump_depth_ansatz: shocked flows have no smooth depth");
  auto flow = std::make_shared<BumpFlow>(bump);
  return {"bump_" + bump.bed.name,
          [flow](double x) { return flow->depth(x); },
          [flow](double x) { return flow->depth_derivatives(x)[1]; },
          [flow](double x) { return flow->depth_derivatives(x)[2]; },
          false};
}

}  // namespace swref
