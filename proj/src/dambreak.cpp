#include <algorithm>
#include <cmath>
#include <sstream>

#include "swref/roots.hpp"
#include "swref/transient.hpp"

namespace swref {

void DamBreakSetup::validate() const {
  if (!(h_left > 0.0)) throw DomainError("dam break: h_left must be positive");
  if (!(h_right >= 0.0)) throw DomainError("dam break: h_right must be non-negative");
  if (!(h_left > h_right)) throw DomainError("dam break: h_left must exceed h_right");
  if (!(length > 0.0)) throw DomainError("dam break: length must be positive");
  if (!(dam_position > 0.0 && dam_position < length))
    throw DomainError("dam break: dam position must lie inside the domain");
  if (n_cells < 1) throw DomainError("dam break: need at least one cell");
  if (!(gravity > 0.0)) throw DomainError("dam break: gravity must be positive");
  friction.validate();
}

PointState dam_break_initial(const DamBreakSetup& setup, double x) {
  setup.validate();
  return {x <= setup.dam_position ? setup.h_left : setup.h_right, 0.0};
}

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0)) throw DomainError("dam break: t must be positive (use the initial-condition accessor at t = 0)");
}

// Ritter fields without validation; shared by all three dam breaks.
PointState ritter_fields(double h_left, double g, double xi, double t) {
  const double c = std::sqrt(g * h_left);
  if (xi <= -c * t) return {h_left, 0.0};
  if (xi >= 2.0 * c * t) return {0.0, 0.0};
  const double s = 2.0 * c - xi / t;
  return {s * s / (9.0 * g), 2.0 / 3.0 * (xi / t + c)};
}

}  // namespace

PointState ritter(const DamBreakSetup& setup, double x, double t) {
  setup.validate();
  require_positive_time(t);
  if (setup.h_right != 0.0) throw DomainError("ritter: requires a dry downstream bed (h_right = 0)");
  if (!setup.friction.is_none()) throw DomainError("ritter: requires a frictionless channel");
  return ritter_fields(setup.h_left, setup.gravity, x - setup.dam_position, t);
}

StokerState stoker_intermediate(double h_left, double h_right, double g) {
  if (!(h_left > h_right && h_right > 0.0))
    throw DomainError("stoker: requires h_left > h_right > 0");
  const double cl = std::sqrt(g * h_left);
  // f(h) = 2(c_l − c_m) − (h − h_r)·√(g(h + h_r)/(2 h h_r)); f(h_r) > 0, f(h_l) < 0.
  auto fdf = [&](double h) {
    const double cm = std::sqrt(g * h);
    const double w = std::sqrt(g * (h + h_right) / (2.0 * h * h_right));
    const double dw = -g / (4.0 * h * h * w);  // d/dh of g(h + h_r)/(2 h h_r) is −g/(2h²)
    const double f = 2.0 * (cl - cm) - (h - h_right) * w;
    const double df = -g / cm - w - (h - h_right) * dw;
    return std::pair<double, double>{f, df};
  };
  const auto res = bracketed_newton<double>(fdf, h_right, h_left, 1e-13 * cl, 0.0, 400);
  if (!res.converged || !(res.residual < 1e-12)) {
    std::ostringstream msg;
    msg << "stoker: compatibility root did not converge (residual " << res.residual << " after "
        << res.iterations << " iterations)";
    throw SolverError(msg.str(), res.residual);
  }
  StokerState s;
  s.h_m = res.root;
  s.u_m = 2.0 * (cl - std::sqrt(g * s.h_m));
  s.shock_speed = s.h_m * s.u_m / (s.h_m - h_right);
  s.residual = res.residual;
  s.iterations = res.iterations;
  return s;
}

StokerSolution::StokerSolution(const DamBreakSetup& setup) : setup_(setup) {
  setup_.validate();
  if (!(setup_.h_right > 0.0)) throw DomainError("stoker: requires a wet downstream bed (h_right > 0)");
  if (!setup_.friction.is_none()) throw DomainError("stoker: requires a frictionless channel");
  state_ = stoker_intermediate(setup_.h_left, setup_.h_right, setup_.gravity);
}

PointState StokerSolution::operator()(double x, double t) const {
  require_positive_time(t);
  const double g = setup_.gravity;
  const double xi = x - setup_.dam_position;
  const double c = std::sqrt(g * setup_.h_left);
  const double cm = std::sqrt(g * state_.h_m);
  if (xi <= -c * t) return {setup_.h_left, 0.0};
  if (xi <= (state_.u_m - cm) * t) return ritter_fields(setup_.h_left, g, xi, t);
  if (xi <= state_.shock_speed * t) return {state_.h_m, state_.u_m};
  return {setup_.h_right, 0.0};
}

double StokerSolution::shock_position(double t) const {
  return setup_.dam_position + state_.shock_speed * t;
}

std::vector<double> StokerSolution::fronts(double t) const {
  const double g = setup_.gravity;
  const double x0 = setup_.dam_position;
  return {x0 - std::sqrt(g * setup_.h_left) * t,
          x0 + (state_.u_m - std::sqrt(g * state_.h_m)) * t, x0 + state_.shock_speed * t};
}

PointState stoker(const DamBreakSetup& setup, double x, double t) {
  return StokerSolution(setup)(x, t);
}

namespace {

// First-order resistance corrections in s = 2 − ξ/(c t); both vanish at s = 3.
double alpha1(double s) {
  return 6.0 / (5.0 * s) - 2.0 / 3.0 + 4.0 * std::sqrt(3.0) / 135.0 * std::pow(s, 1.5);
}

double alpha2(double s) {
  return 12.0 / s - 8.0 / 3.0 + 8.0 * std::sqrt(3.0) / 189.0 * std::pow(s, 1.5) -
         108.0 / (7.0 * s * s);
}

double alpha2_prime(double s) {
  return -12.0 / (s * s) + 12.0 * std::sqrt(3.0) / 189.0 * std::sqrt(s) + 216.0 / (7.0 * s * s * s);
}

}  // namespace

DresslerSolution::DresslerSolution(const DamBreakSetup& setup) : setup_(setup) {
  setup_.validate();
  if (setup_.h_right != 0.0) throw DomainError("dressler: requires a dry downstream bed (h_right = 0)");
  if (setup_.friction.is_manning())
    throw DomainError("dressler: requires Chezy-family (Chezy or Darcy-Weisbach) friction");
  resistance_ = setup_.gravity * setup_.gravity * setup_.friction.cf(setup_.gravity);
}

PointState DresslerSolution::corrected(double x, double t) const {
  require_positive_time(t);
  const double g = setup_.gravity;
  const double c = std::sqrt(g * setup_.h_left);
  const double xi = x - setup_.dam_position;
  if (xi <= -c * t) return {setup_.h_left, 0.0};
  if (xi >= 2.0 * c * t) return {0.0, 0.0};
  const double s = 2.0 - xi / (c * t);
  const double kt = resistance_ * t;
  const double root = c * s / 3.0 + kt * alpha1(s);
  return {root * root / g, 2.0 * c - 2.0 * c * s / 3.0 + kt * alpha2(s)};
}

std::optional<DresslerTip> DresslerSolution::tip(double t) const {
  require_positive_time(t);
  if (resistance_ == 0.0) return std::nullopt;
  const double g = setup_.gravity;
  const double c = std::sqrt(g * setup_.h_left);
  const double kt = resistance_ * t;
  // du/ds = −2c/3 + kt·α₂'(s) is negative near s = 3; the tip starts at the
  // first sign change met scanning towards the front (s → 0).
  auto dud = [&](double s) { return -2.0 * c / 3.0 + kt * alpha2_prime(s); };
  constexpr int kScan = 4000;
  const double s_min = 1e-9;
  double prev = 3.0;
  double s_tip = s_min;
  for (int j = 1; j <= kScan; ++j) {
    const double s = 3.0 * std::pow(s_min / 3.0, static_cast<double>(j) / kScan);
    if (dud(s) >= 0.0) {
      s_tip = bisect<double>(dud, s, prev, 1e-14);
      break;
    }
    prev = s;
  }
  DresslerTip tip;
  tip.start = setup_.dam_position + (2.0 - s_tip) * c * t;
  const auto at_start = corrected(tip.start, t);
  tip.velocity = at_start.u;
  tip.depth = at_start.h;
  const double ritter_front = setup_.dam_position + 2.0 * c * t;
  const double cf = setup_.friction.cf(g);
  const double resistance_front =
      tip.start + tip.depth * tip.depth / (2.0 * cf * tip.velocity * tip.velocity);
  tip.front = std::min(resistance_front, ritter_front);
  return tip;
}

PointState DresslerSolution::at(double x, double t, const DresslerTip& tip) const {
  if (x <= tip.start) return corrected(x, t);
  if (x >= tip.front) return {0.0, 0.0};
  return {tip.depth * std::sqrt((tip.front - x) / (tip.front - tip.start)), tip.velocity};
}

PointState DresslerSolution::operator()(double x, double t) const {
  const auto tp = tip(t);
  if (!tp) return ritter_fields(setup_.h_left, setup_.gravity, x - setup_.dam_position, t);
  return at(x, t, *tp);
}

PointState dressler(const DamBreakSetup& setup, double x, double t) {
  return DresslerSolution(setup)(x, t);
}

SolutionProfile dam_break_snapshot(const DamBreakSetup& setup, DamBreakKind kind, double t) {
  setup.validate();
  auto p = SolutionProfile::on_grid(0.0, setup.length, setup.n_cells);
  p.time = t;
  p.metadata["dam_position"] = setup.dam_position;
  if (!(t >= 0.0)) throw DomainError("dam break: t must be non-negative");

  std::function<PointState(double)> eval;
  std::optional<StokerSolution> stoker_sol;
  std::optional<DresslerSolution> dressler_sol;
  std::optional<DresslerTip> tip;
  switch (kind) {
    case DamBreakKind::Ritter:
      if (setup.h_right != 0.0) throw DomainError("ritter: requires h_right = 0");
      if (!setup.friction.is_none()) throw DomainError("ritter: requires a frictionless channel");
      eval = [&](double x) { return ritter_fields(setup.h_left, setup.gravity, x - setup.dam_position, t); };
      break;
    case DamBreakKind::Stoker:
      stoker_sol.emplace(setup);
      p.metadata["h_m"] = stoker_sol->state().h_m;
      p.metadata["u_m"] = stoker_sol->state().u_m;
      p.metadata["shock_speed"] = stoker_sol->state().shock_speed;
      p.metadata["shock_position"] = stoker_sol->shock_position(t);
      eval = [&](double x) { return (*stoker_sol)(x, t); };
      break;
    case DamBreakKind::Dressler:
      dressler_sol.emplace(setup);
      if (t > 0.0) tip = dressler_sol->tip(t);
      if (tip) {
        p.metadata["tip_start"] = tip->start;
        p.metadata["tip_front"] = tip->front;
      }
      eval = [&](double x) {
        return tip ? dressler_sol->at(x, t, *tip)
                   : ritter_fields(setup.h_left, setup.gravity, x - setup.dam_position, t);
      };
      break;
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const auto s = t == 0.0 ? dam_break_initial(setup, p.x[i]) : eval(p.x[i]);
    p.h[i] = s.h;
    p.u[i] = s.h > kDryTolerance ? s.u : 0.0;
    p.q[i] = p.h[i] * p.u[i];
  }
  return p;
}

}  // namespace swref
