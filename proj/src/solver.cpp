#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "swref/harness.hpp"

namespace swref {

std::string_view to_string(TopographyTreatment treatment) {
  switch (treatment) {
    case TopographyTreatment::Hydrostatic: return "hydrostatic";
    case TopographyTreatment::NaiveSource: return "naive";
  }
  return "?";
}

std::optional<TopographyTreatment> parse_topography(std::string_view name) {
  if (name == "hydrostatic") return TopographyTreatment::Hydrostatic;
  if (name == "naive") return TopographyTreatment::NaiveSource;
  return std::nullopt;
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Wall: return "wall";
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Free: return "free";
    case BoundaryKind::Inflow: return "inflow";
    case BoundaryKind::Outflow: return "outflow";
  }
  return "?";
}

void BoundaryCondition::validate() const {
  if (kind == BoundaryKind::Inflow && !discharge)
    throw DomainError("inflow boundary needs a discharge");
  if (kind == BoundaryKind::Outflow && !depth) throw DomainError("outflow boundary needs a depth");
  if (depth && !(*depth > 0.0)) throw DomainError("boundary depth must be positive");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  left.validate();
  right.validate();
  if ((left.kind == BoundaryKind::Periodic) != (right.kind == BoundaryKind::Periodic))
    throw DomainError("periodic boundaries must be set on both ends");
}

namespace {

struct Ghost {
  double h;
  double q;
  double z;
};

class Solver {
 public:
  Solver(const SolutionProfile& initial, const ChannelSpec& spec, const SchemeConfig& scheme)
      : spec_(spec), scheme_(scheme), profile_(initial) {
    spec_.validate();
    scheme_.validate();
    initial.check_invariants(spec_.dry_tolerance);
    n_ = initial.size();
    if (n_ < 2) throw DomainError("run_solver: need at least two cells");
    h_ = initial.h;
    q_ = initial.q;
    for (Eigen::Index i = 0; i < n_; ++i)
      if (!(h_[i] > spec_.dry_tolerance)) q_[i] = 0.0;
    he_.resize(n_ + 2);
    qe_.resize(n_ + 2);
    ze_.resize(n_ + 2);
    ze_.segment(1, n_) = initial.z;
    fm_.resize(n_ + 1);
    fq_.resize(n_ + 1);
    left_corr_.resize(n_ + 1);
    right_corr_.resize(n_ + 1);
    stats_.mass_initial = mass();
    stats_.min_depth = h_.minCoeff();
    stats_.time = initial.time;
  }

  double mass() const { return h_.sum() * profile_.dx; }

  // One CFL step, truncated to `dt_max`; returns the step taken.
  double step(double dt_max) {
    fill_ghosts();
    const double g = spec_.gravity;
    const double dx = profile_.dx;
    double speed = 0.0;
    for (Eigen::Index e = 0; e < n_ + 2; ++e) speed = std::max(speed, wave_speed(he_[e], qe_[e]));
    speed = std::max(speed, std::sqrt(g * spec_.dry_tolerance));
    const double dt = std::min(scheme_.cfl * dx / speed, dt_max);

    double iface_speed = 0.0;
    const bool hydro = scheme_.topography == TopographyTreatment::Hydrostatic;
    for (Eigen::Index k = 0; k <= n_; ++k) {
      double hl = he_[k], hr = he_[k + 1];
      const double ul = velocity(he_[k], qe_[k]);
      const double ur = velocity(he_[k + 1], qe_[k + 1]);
      if (hydro) {
        const double zs = std::max(ze_[k], ze_[k + 1]);
        hl = std::max(0.0, (he_[k] + ze_[k]) - zs);
        hr = std::max(0.0, (he_[k + 1] + ze_[k + 1]) - zs);
      }
      const double ql = hl * ul, qr = hr * ur;
      const double a = std::max(std::abs(ul) + std::sqrt(g * hl), std::abs(ur) + std::sqrt(g * hr));
      iface_speed = std::max(iface_speed, a);
      fm_[k] = 0.5 * (ql + qr) - 0.5 * a * (hr - hl);
      const double fq = 0.5 * ((ql * ul + pressure(hl)) + (qr * ur + pressure(hr))) - 0.5 * a * (qr - ql);
      if (hydro) {
        // Interface pressure corrections; the cell's own g h²/2 cancels between faces.
        left_corr_[k] = fq - pressure(hl);
        right_corr_[k] = fq - pressure(hr);
      }
      fq_[k] = fq;
    }
    if (iface_speed * dt > dx * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "CFL violated: interface speed " << iface_speed << " with dt " << dt;
      throw StabilityError(msg.str(), static_cast<std::size_t>(stats_.steps + 1));
    }

    const double r = dt / dx;
    Field h_new(n_), q_new(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      const Eigen::Index e = i + 1;
      h_new[i] = h_[i] - r * (fm_[i + 1] - fm_[i]);
      if (hydro) {
        q_new[i] = q_[i] - r * (left_corr_[i + 1] - right_corr_[i]);
      } else {
        q_new[i] = q_[i] - r * (fq_[i + 1] - fq_[i]) -
                   dt * g * h_[i] * (ze_[e + 1] - ze_[e - 1]) / (2.0 * dx);
      }
    }
    if (spec_.rain_rate > 0.0) h_new += spec_.rain_rate * dt;

    const double cf = spec_.friction.cf(g);
    const double p = spec_.friction.is_manning() ? 7.0 / 3.0 : 2.0;
    const double floor = -1e-12 * std::max(1.0, h_.maxCoeff());
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (!std::isfinite(h_new[i]) || !std::isfinite(q_new[i])) {
        std::ostringstream msg;
        msg << "non-finite state in cell " << i << " at step " << stats_.steps + 1;
        throw NumericalFailure(msg.str(), static_cast<std::size_t>(i), static_cast<std::size_t>(stats_.steps + 1));
      }
      if (h_new[i] < floor) {
        std::ostringstream msg;
        msg << "negative depth " << h_new[i] << " in cell " << i << " (flux overrun)";
        throw StabilityError(msg.str(), static_cast<std::size_t>(stats_.steps + 1));
      }
      if (h_new[i] <= spec_.dry_tolerance) {
        h_new[i] = std::max(h_new[i], 0.0);
        q_new[i] = 0.0;
      } else if (cf > 0.0) {
        q_new[i] /= 1.0 + dt * g * cf * std::abs(q_new[i]) / std::pow(h_new[i], p);
      }
    }

    stats_.update_norm = std::max((h_new - h_).abs().maxCoeff(), (q_new - q_).abs().maxCoeff()) / dt;
    h_.swap(h_new);
    q_.swap(q_new);
    ++stats_.steps;
    stats_.time += dt;
    stats_.min_depth = std::min(stats_.min_depth, h_.minCoeff());
    return dt;
  }

  double time() const { return stats_.time; }
  RunStats& stats() { return stats_; }

  SolutionProfile result() {
    stats_.mass_final = mass();
    SolutionProfile out = profile_;
    out.h = h_;
    out.q = q_;
    out.time = stats_.time;
    out.normalize_dry(spec_.dry_tolerance);
    return out;
  }

 private:
  double velocity(double h, double q) const { return h > spec_.dry_tolerance ? q / h : 0.0; }
  double wave_speed(double h, double q) const {
    return h > spec_.dry_tolerance ? std::abs(q / h) + std::sqrt(spec_.gravity * h) : 0.0;
  }
  double pressure(double h) const { return 0.5 * spec_.gravity * h * h; }

  Ghost ghost(const BoundaryCondition& bc, Eigen::Index inner, Eigen::Index opposite) const {
    const double hi = h_[inner], qi = q_[inner], zi = profile_.z[inner];
    const double g = spec_.gravity;
    switch (bc.kind) {
      case BoundaryKind::Wall: return {hi, -qi, zi};
      case BoundaryKind::Periodic: return {h_[opposite], q_[opposite], profile_.z[opposite]};
      case BoundaryKind::Free: return {hi, qi, zi};
      case BoundaryKind::Inflow: {
        const double q = *bc.discharge;
        if (bc.depth && std::abs(q) / *bc.depth > std::sqrt(g * *bc.depth)) return {*bc.depth, q, zi};
        return {hi, q, zi};
      }
      case BoundaryKind::Outflow:
        if (hi > spec_.dry_tolerance && std::abs(qi / hi) > std::sqrt(g * hi)) return {hi, qi, zi};
        return {*bc.depth, qi, zi};
    }
    return {hi, qi, zi};
  }

  void fill_ghosts() {
    he_.segment(1, n_) = h_;
    qe_.segment(1, n_) = q_;
    const auto l = ghost(scheme_.left, 0, n_ - 1);
    const auto r = ghost(scheme_.right, n_ - 1, 0);
    he_[0] = l.h;
    qe_[0] = l.q;
    ze_[0] = l.z;
    he_[n_ + 1] = r.h;
    qe_[n_ + 1] = r.q;
    ze_[n_ + 1] = r.z;
  }

  ChannelSpec spec_;
  SchemeConfig scheme_;
  SolutionProfile profile_;
  Eigen::Index n_ = 0;
  Field h_, q_;
  Field he_, qe_, ze_;
  Field fm_, fq_, left_corr_, right_corr_;
  RunStats stats_;
};

void publish(Solver& solver, RunStats* stats) {
  if (stats) *stats = solver.stats();
}

}  // namespace

SolutionProfile run_solver(const SolutionProfile& initial, const ChannelSpec& spec,
                           const SchemeConfig& scheme, double t_end, RunStats* stats) {
  if (!(t_end >= initial.time)) throw DomainError("run_solver: t_end precedes the initial time");
  Solver solver(initial, spec, scheme);
  while (solver.time() < t_end) {
    const double remaining = t_end - solver.time();
    if (remaining <= 1e-14 * std::max(1.0, t_end)) break;
    solver.step(remaining);
  }
  auto out = solver.result();
  out.time = t_end;
  solver.stats().time = t_end;
  publish(solver, stats);
  return out;
}

SolutionProfile run_steps(const SolutionProfile& initial, const ChannelSpec& spec,
                          const SchemeConfig& scheme, long steps, RunStats* stats) {
  if (steps < 0) throw DomainError("run_steps: negative step count");
  Solver solver(initial, spec, scheme);
  for (long k = 0; k < steps; ++k) solver.step(std::numeric_limits<double>::infinity());
  auto out = solver.result();
  publish(solver, stats);
  return out;
}

SolutionProfile run_to_steady(const SolutionProfile& initial, const ChannelSpec& spec,
                              const SchemeConfig& scheme, double tolerance, long max_steps,
                              RunStats* stats) {
  Solver solver(initial, spec, scheme);
  for (long k = 0; k < max_steps; ++k) {
    solver.step(std::numeric_limits<double>::infinity());
    if (solver.stats().update_norm < tolerance) {
      solver.stats().reached_steady = true;
      break;
    }
  }
  auto out = solver.result();
  publish(solver, stats);
  return out;
}

}  // namespace swref
