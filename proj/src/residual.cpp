#include <algorithm>
#include <cmath>

#include "swref/transient.hpp"

namespace swref {

SpaceTimeSlab SpaceTimeSlab::sample(const std::function<PointState(double, double)>& field,
                                    const std::function<double(double)>& bed, double x_begin,
                                    double dx, Eigen::Index nx, double t_begin, double dt,
                                    Eigen::Index nt) {
  SpaceTimeSlab s;
  s.x_begin = x_begin;
  s.dx = dx;
  s.t_begin = t_begin;
  s.dt = dt;
  s.h.resize(nt, nx);
  s.u.resize(nt, nx);
  s.z.resize(nx);
  for (Eigen::Index i = 0; i < nx; ++i) s.z[i] = bed ? bed(s.x(i)) : 0.0;
  for (Eigen::Index n = 0; n < nt; ++n) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const auto p = field(s.x(i), s.t(n));
      s.h(n, i) = p.h;
      s.u(n, i) = p.u;
    }
  }
  return s;
}

SpaceTimeSlab2D SpaceTimeSlab2D::sample(
    const std::function<PointState2D(double, double, double)>& field,
    const std::function<double(double, double)>& bed, double x_begin, double y_begin, double dx,
    double dy, Eigen::Index nx, Eigen::Index ny, double t_begin, double dt, Eigen::Index nt) {
  SpaceTimeSlab2D s;
  s.x_begin = x_begin;
  s.y_begin = y_begin;
  s.dx = dx;
  s.dy = dy;
  s.t_begin = t_begin;
  s.dt = dt;
  s.z.resize(nx, ny);
  for (Eigen::Index j = 0; j < ny; ++j)
    for (Eigen::Index i = 0; i < nx; ++i)
      s.z(i, j) = bed ? bed(x_begin + static_cast<double>(i) * dx, y_begin + static_cast<double>(j) * dy) : 0.0;
  for (Eigen::Index n = 0; n < nt; ++n) {
    const double t = t_begin + static_cast<double>(n) * dt;
    Field2D h(nx, ny), u(nx, ny), v(nx, ny);
    for (Eigen::Index j = 0; j < ny; ++j) {
      const double y = y_begin + static_cast<double>(j) * dy;
      for (Eigen::Index i = 0; i < nx; ++i) {
        const auto p = field(x_begin + static_cast<double>(i) * dx, y, t);
        h(i, j) = p.h;
        u(i, j) = p.u;
        v(i, j) = p.v;
      }
    }
    s.h.push_back(std::move(h));
    s.u.push_back(std::move(u));
    s.v.push_back(std::move(v));
  }
  return s;
}

namespace {

constexpr int kHalf = 2;  // half-width of the 5-point central stencil

// (f₋₂ − 8f₋₁ + 8f₁ − f₂)/(12Δ), accessor-based so rows, columns and time
// levels share one implementation.
template <typename F>
double d4(F&& f, double step) {
  return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * step);
}

double friction_term(const ChannelSpec& spec, double h, double q) {
  return spec.gravity * h * *friction_slope(spec.friction, h, q, spec.gravity, spec.dry_tolerance);
}

}  // namespace

TransientResidual transient_residual(const SpaceTimeSlab& slab, const ChannelSpec& spec,
                                     const ResidualMask& mask) {
  const Eigen::Index nt = slab.h.rows();
  const Eigen::Index nx = slab.h.cols();
  if (slab.u.rows() != nt || slab.u.cols() != nx || slab.z.size() != nx)
    throw StencilError("transient_residual: slab fields have mismatched shapes");
  const bool viscous = spec.viscosity > 0.0;
  const Eigen::Index reach = viscous ? 2 * kHalf : kHalf;
  if (nt < 2 * kHalf + 1 || nx < 2 * reach + 1)
    throw StencilError("transient_residual: slab too small for the 5-point stencils");
  const double g = spec.gravity;
  const double dry = spec.dry_tolerance;
  const int buffer = std::max(0, mask.buffer_cells);

  const Field2D q = slab.h * slab.u;
  const Field2D flux = q * slab.u + 0.5 * g * slab.h * slab.h;
  Field dz(nx);
  dz.setZero();
  for (Eigen::Index i = kHalf; i < nx - kHalf; ++i)
    dz[i] = d4([&](int k) { return slab.z[i + k]; }, slab.dx);

  TransientResidual out;
  for (Eigen::Index n = kHalf; n < nt - kHalf; ++n) {
    std::vector<double> fronts;
    for (Eigen::Index m = n - kHalf; m <= n + kHalf; ++m) {
      if (!mask.fronts) break;
      const auto f = mask.fronts(slab.t(m));
      fronts.insert(fronts.end(), f.begin(), f.end());
    }
    for (Eigen::Index i = reach; i < nx - reach; ++i) {
      const Eigen::Index lo = std::max<Eigen::Index>(0, i - reach - buffer);
      const Eigen::Index hi = std::min<Eigen::Index>(nx - 1, i + reach + buffer);
      if ((slab.h.block(n - kHalf, lo, 2 * kHalf + 1, hi - lo + 1) <= dry).any()) continue;
      const double xi = slab.x(i);
      const double guard = static_cast<double>(reach + buffer) * slab.dx;
      if (std::any_of(fronts.begin(), fronts.end(),
                      [&](double p) { return std::abs(xi - p) <= guard; }))
        continue;

      const double h = slab.h(n, i);
      const double ht = d4([&](int k) { return slab.h(n + k, i); }, slab.dt);
      const double qx = d4([&](int k) { return q(n, i + k); }, slab.dx);
      const double qt = d4([&](int k) { return q(n + k, i); }, slab.dt);
      const double fx = d4([&](int k) { return flux(n, i + k); }, slab.dx);
      double momentum = qt + fx + g * h * dz[i] + friction_term(spec, h, q(n, i));
      if (viscous) {
        // μ∂ₓ(h∂ₓu) with nested stencils
        auto hux = [&](Eigen::Index j) {
          return slab.h(n, j) * d4([&](int k) { return slab.u(n, j + k); }, slab.dx);
        };
        momentum -= spec.viscosity * d4([&](int k) { return hux(i + k); }, slab.dx);
      }
      const double mass = ht + qx - spec.rain_rate;
      out.mass = std::max(out.mass, std::abs(mass));
      out.momentum = std::max(out.momentum, std::abs(momentum));
      ++out.evaluated_points;
    }
  }

  if (mask.shock) {
    double worst = 0.0;
    bool any = false;
    for (Eigen::Index n = 0; n < nt; ++n) {
      const auto shock = mask.shock(slab.t(n));
      if (!shock) continue;
      const auto [pos, speed] = *shock;
      const double gap = static_cast<double>(buffer) * slab.dx;
      // Nearest lattice points outside the buffered shock on each side.
      const auto left = static_cast<Eigen::Index>(std::floor((pos - gap - slab.x_begin) / slab.dx));
      const auto right = static_cast<Eigen::Index>(std::ceil((pos + gap - slab.x_begin) / slab.dx));
      if (left < 0 || right >= nx || left >= right) continue;
      const double hl = slab.h(n, left), ul = slab.u(n, left);
      const double hr = slab.h(n, right), ur = slab.u(n, right);
      const double mass = speed * (hl - hr) - (hl * ul - hr * ur);
      const double mom = speed * (hl * ul - hr * ur) -
                         (hl * ul * ul + 0.5 * g * hl * hl - hr * ur * ur - 0.5 * g * hr * hr);
      worst = std::max({worst, std::abs(mass), std::abs(mom)});
      any = true;
    }
    if (any) out.rankine_hugoniot = worst;
  }
  return out;
}

TransientResidual transient_residual(const SpaceTimeSlab2D& slab, const ChannelSpec& spec,
                                     const ResidualMask& mask) {
  const auto nt = static_cast<Eigen::Index>(slab.h.size());
  if (nt < 2 * kHalf + 1 || static_cast<Eigen::Index>(slab.u.size()) != nt ||
      static_cast<Eigen::Index>(slab.v.size()) != nt)
    throw StencilError("transient_residual: 2D slab needs at least 5 time levels");
  const Eigen::Index nx = slab.z.rows();
  const Eigen::Index ny = slab.z.cols();
  if (nx < 2 * kHalf + 1 || ny < 2 * kHalf + 1)
    throw StencilError("transient_residual: 2D slab too small for the 5-point stencils");
  for (Eigen::Index n = 0; n < nt; ++n)
    if (slab.h[n].rows() != nx || slab.h[n].cols() != ny || slab.u[n].rows() != nx ||
        slab.u[n].cols() != ny || slab.v[n].rows() != nx || slab.v[n].cols() != ny)
      throw StencilError("transient_residual: 2D slab fields have mismatched shapes");

  const double g = spec.gravity;
  const double dry = spec.dry_tolerance;
  const int buffer = std::max(0, mask.buffer_cells);
  std::vector<Field2D> qx(nt), qy(nt), fxx(nt), fxy(nt), fyy(nt);
  for (Eigen::Index n = 0; n < nt; ++n) {
    qx[n] = slab.h[n] * slab.u[n];
    qy[n] = slab.h[n] * slab.v[n];
    const Field2D p = 0.5 * g * slab.h[n] * slab.h[n];
    fxx[n] = qx[n] * slab.u[n] + p;
    fxy[n] = qx[n] * slab.v[n];
    fyy[n] = qy[n] * slab.v[n] + p;
  }

  TransientResidual out;
  const Eigen::Index reach = kHalf + buffer;
  for (Eigen::Index n = kHalf; n < nt - kHalf; ++n) {
    for (Eigen::Index j = kHalf; j < ny - kHalf; ++j) {
      for (Eigen::Index i = kHalf; i < nx - kHalf; ++i) {
        const Eigen::Index i0 = std::max<Eigen::Index>(0, i - reach);
        const Eigen::Index i1 = std::min<Eigen::Index>(nx - 1, i + reach);
        const Eigen::Index j0 = std::max<Eigen::Index>(0, j - reach);
        const Eigen::Index j1 = std::min<Eigen::Index>(ny - 1, j + reach);
        bool wet = true;
        for (Eigen::Index m = n - kHalf; m <= n + kHalf && wet; ++m)
          wet = !(slab.h[m].block(i0, j0, i1 - i0 + 1, j1 - j0 + 1) <= dry).any();
        if (!wet) continue;

        const double h = slab.h[n](i, j);
        auto dx = [&](const Field2D& f) { return d4([&](int k) { return f(i + k, j); }, slab.dx); };
        auto dy = [&](const Field2D& f) { return d4([&](int k) { return f(i, j + k); }, slab.dy); };
        auto dt = [&](const std::vector<Field2D>& f) {
          return d4([&](int k) { return f[n + k](i, j); }, slab.dt);
        };
        const double speed = std::hypot(qx[n](i, j), qy[n](i, j));
        double sf_scale = 0.0;
        if (!spec.friction.is_none()) {
          // Vector friction g·h·C_f·q|q|/h^p, applied per component.
          const double sf = *friction_slope(spec.friction, h, speed, g, dry);
          sf_scale = speed > 0.0 ? g * h * sf / speed : 0.0;
        }
        const double mass = dt(slab.h) + dx(qx[n]) + dy(qy[n]) - spec.rain_rate;
        const double mx = dt(qx) + dx(fxx[n]) + dy(fxy[n]) + g * h * dx(slab.z) +
                          sf_scale * qx[n](i, j);
        const double my = dt(qy) + dx(fxy[n]) + dy(fyy[n]) + g * h * dy(slab.z) +
                          sf_scale * qy[n](i, j);
        out.mass = std::max(out.mass, std::abs(mass));
        out.momentum = std::max({out.momentum, std::abs(mx), std::abs(my)});
        ++out.evaluated_points;
      }
    }
  }
  return out;
}

}  // namespace swref
