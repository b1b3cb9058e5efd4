#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "swref/transient.hpp"

namespace swref {

namespace {

// Instantaneous free surface written as h = Q·max(R² − |r − c|², 0).
struct Cap {
  double q;       // Q
  double radius;  // R
  double cx;      // centre offset from the basin centre
  double cy;
};

double curved_a(const ThackerSetup& s) {
  const double r0 = s.amplitude;
  return (s.a * s.a - r0 * r0) / (s.a * s.a + r0 * r0);
}

Cap cap_at(const ThackerSetup& s, double t) {
  const double w = s.frequency();
  if (s.variant == ThackerVariant::PlanarSurface) {
    const double cx = s.amplitude * std::cos(w * t);
    const double cy = s.dimensions == 2 ? s.amplitude * std::sin(w * t) : 0.0;
    return {s.h0 / (s.a * s.a), s.a, cx, cy};
  }
  const double A = curved_a(s);
  const double D = 1.0 - A * std::cos(w * t);
  const double k = 1.0 - A * A;
  const double q = s.h0 * k / (s.a * s.a * D * D);
  const double peak = s.h0 * std::sqrt(k) / D;
  return {q, std::sqrt(peak / q), 0.0, 0.0};
}

// ∫ (R² − s²)^{3/2} ds
double cap_primitive(double R, double s) {
  const double w = std::sqrt(std::max(R * R - s * s, 0.0));
  const double ratio = std::clamp(s / R, -1.0, 1.0);
  return s / 8.0 * (5.0 * R * R - 2.0 * s * s) * w + 3.0 * R * R * R * R / 8.0 * std::asin(ratio);
}

// ∫ (R² − s²)·c − c³/3 ds for constant c
double flat_primitive(double R, double c, double s) {
  return c * (R * R * s - s * s * s / 3.0) - c * c * c * s / 3.0;
}

// ∫ max(α − β(s − c)², 0) ds over [p, r], with α = Q·R², β = Q.
double segment_integral(const Cap& cap, double center, double p, double r) {
  const double lo = std::max(p, center - cap.radius);
  const double hi = std::min(r, center + cap.radius);
  if (!(hi > lo)) return 0.0;
  const double a = lo - center;
  const double b = hi - center;
  return cap.q * (cap.radius * cap.radius * (b - a) - (b * b * b - a * a * a) / 3.0);
}

}  // namespace

double paraboloid_cap_integral(double R, double s0, double s1, double t0, double t1) {
  if (!(R > 0.0)) return 0.0;
  const double lo = std::max(s0, -R);
  const double hi = std::min(s1, R);
  if (!(hi > lo) || !(t1 > t0)) return 0.0;
  std::vector<double> cuts{lo, hi};
  for (double t : {t0, t1}) {
    if (std::abs(t) < R) {
      const double w = std::sqrt(R * R - t * t);
      for (double c : {-w, w})
        if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double rho = std::sqrt(std::max(R * R - mid * mid, 0.0));
    const bool lower_curved = -rho > t0;
    const bool upper_curved = rho < t1;
    const double lower = lower_curved ? -rho : t0;
    const double upper = upper_curved ? rho : t1;
    if (!(upper > lower)) continue;
    // Inner integral F(upper) − F(lower) with F(c) = (R² − s²)c − c³/3; on a
    // curved limit ±ρ this is ±(2/3)ρ³.
    double piece = 0.0;
    piece += upper_curved ? 2.0 / 3.0 * (cap_primitive(R, b) - cap_primitive(R, a))
                          : flat_primitive(R, t1, b) - flat_primitive(R, t1, a);
    piece -= lower_curved ? -2.0 / 3.0 * (cap_primitive(R, b) - cap_primitive(R, a))
                          : flat_primitive(R, t0, b) - flat_primitive(R, t0, a);
    total += piece;
  }
  return total;
}

double ThackerSetup::frequency() const {
  const double base = variant == ThackerVariant::PlanarSurface ? 2.0 : 8.0;
  return std::sqrt(base * gravity * h0) / a;
}

double ThackerSetup::period() const { return 2.0 * std::numbers::pi / frequency(); }

double ThackerSetup::max_shoreline_radius() const {
  if (variant == ThackerVariant::PlanarSurface) return a + amplitude;
  const double A = curved_a(*this);
  return a * std::pow((1.0 + A) / (1.0 - A), 0.25);
}

double ThackerSetup::volume() const {
  if (dimensions == 1) return 4.0 / 3.0 * h0 * a;
  return std::numbers::pi * h0 * a * a / 2.0;
}

void ThackerSetup::validate() const {
  if (!(a > 0.0)) throw DomainError("thacker: a must be positive");
  if (!(h0 > 0.0)) throw DomainError("thacker: h0 must be positive");
  if (!(gravity > 0.0)) throw DomainError("thacker: gravity must be positive");
  if (dimensions != 1 && dimensions != 2) throw DomainError("thacker: dimensions must be 1 or 2");
  if (nx < 1 || (dimensions == 2 && ny < 1)) throw DomainError("thacker: need at least one cell");
  if (variant == ThackerVariant::CurvedSurface) {
    if (dimensions == 1)
      throw DomainError("thacker: the curved-surface variant has no 1D closed form");
    if (!(amplitude > 0.0 && amplitude < a))
      throw DomainError("thacker: curved variant needs 0 < r0 < a");
  } else if (!(amplitude >= 0.0)) {
    throw DomainError("thacker: amplitude must be non-negative");
  }
  if (!(max_shoreline_radius() < center()))
    throw DomainError("thacker: amplitude too large, the shoreline leaves the domain");
}

double thacker_bed(const ThackerSetup& setup, double x, double y) {
  const double dx = x - setup.center();
  const double dy = setup.dimensions == 2 ? y - setup.center() : 0.0;
  return setup.h0 * ((dx * dx + dy * dy) / (setup.a * setup.a) - 1.0);
}

namespace {

// Velocity field of the variant; defined everywhere, zeroed on dry points by callers.
std::pair<double, double> velocity(const ThackerSetup& s, double rx, double ry, double t) {
  const double w = s.frequency();
  if (s.variant == ThackerVariant::PlanarSurface) {
    const double u = -s.amplitude * w * std::sin(w * t);
    const double v = s.dimensions == 2 ? s.amplitude * w * std::cos(w * t) : 0.0;
    return {u, v};
  }
  const double A = curved_a(s);
  const double D = 1.0 - A * std::cos(w * t);
  const double f = w * A * std::sin(w * t) / (2.0 * D);
  return {f * rx, f * ry};
}

PointState2D evaluate(const ThackerSetup& s, double x, double y, double t) {
  const Cap cap = cap_at(s, t);
  const double rx = x - s.center();
  const double ry = s.dimensions == 2 ? y - s.center() : 0.0;
  const double ex = rx - cap.cx;
  const double ey = ry - cap.cy;
  const double h = cap.q * (cap.radius * cap.radius - ex * ex - ey * ey);
  if (!(h > 0.0)) return {};
  const auto [u, v] = velocity(s, rx, ry, t);
  return {h, u, v};
}

}  // namespace

PointState thacker(const ThackerSetup& setup, double x, double t) {
  setup.validate();
  if (setup.dimensions != 1) throw DomainError("thacker: 1D evaluation of a 2D setup");
  const auto s = evaluate(setup, x, 0.0, t);
  return {s.h, s.u};
}

PointState2D thacker(const ThackerSetup& setup, double x, double y, double t) {
  setup.validate();
  if (setup.dimensions != 2) throw DomainError("thacker: 2D evaluation of a 1D setup");
  return evaluate(setup, x, y, t);
}

SolutionProfile thacker_snapshot(const ThackerSetup& setup, double t) {
  setup.validate();
  if (setup.dimensions != 1) throw DomainError("thacker: 1D snapshot of a 2D setup");
  auto p = SolutionProfile::on_grid(0.0, setup.length, setup.nx);
  p.time = t;
  const Cap cap = cap_at(setup, t);
  const double c = setup.center() + cap.cx;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double left = p.x[i] - 0.5 * p.dx;
    p.h[i] = segment_integral(cap, c, left, left + p.dx) / p.dx;
    p.z[i] = thacker_bed(setup, p.x[i], 0.0);
    p.u[i] = p.h[i] > kDryTolerance ? velocity(setup, p.x[i] - setup.center(), 0.0, t).first : 0.0;
    p.q[i] = p.h[i] * p.u[i];
  }
  p.metadata["frequency"] = setup.frequency();
  p.metadata["period"] = setup.period();
  p.metadata["volume"] = setup.volume();
  return p;
}

SolutionProfile2D thacker_snapshot_2d(const ThackerSetup& setup, double t) {
  setup.validate();
  if (setup.dimensions != 2) throw DomainError("thacker: 2D snapshot of a 1D setup");
  auto p = SolutionProfile2D::on_grid(0.0, 0.0, setup.length, setup.length, setup.nx, setup.ny);
  p.time = t;
  const Cap cap = cap_at(setup, t);
  const double cx = setup.center() + cap.cx;
  const double cy = setup.center() + cap.cy;
  const double area = p.dx * p.dy;
  for (Eigen::Index j = 0; j < p.ny(); ++j) {
    const double y0 = p.y[j] - 0.5 * p.dy - cy;
    for (Eigen::Index i = 0; i < p.nx(); ++i) {
      const double x0 = p.x[i] - 0.5 * p.dx - cx;
      p.h(i, j) = cap.q * paraboloid_cap_integral(cap.radius, x0, x0 + p.dx, y0, y0 + p.dy) / area;
      p.z(i, j) = thacker_bed(setup, p.x[i], p.y[j]);
      if (p.h(i, j) > kDryTolerance) {
        const auto [u, v] = velocity(setup, p.x[i] - setup.center(), p.y[j] - setup.center(), t);
        p.u(i, j) = u;
        p.v(i, j) = v;
      }
    }
  }
  p.metadata["frequency"] = setup.frequency();
  p.metadata["period"] = setup.period();
  p.metadata["volume"] = setup.volume();
  return p;
}

}  // namespace swref
