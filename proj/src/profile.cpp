#include "swref/profile.hpp"

#include <cmath>

namespace swref {

SolutionProfile SolutionProfile::on_grid(double x_begin, double length, Eigen::Index cells) {
  if (cells < 1) throw DomainError("grid needs at least one cell");
  if (!(length > 0.0)) throw DomainError("grid length must be positive");
  SolutionProfile p;
  p.x_begin = x_begin;
  p.dx = length / static_cast<double>(cells);
  p.x = x_begin + (Field::LinSpaced(cells, 0.0, static_cast<double>(cells - 1)) + 0.5) * p.dx;
  p.h = Field::Zero(cells);
  p.u = Field::Zero(cells);
  p.z = Field::Zero(cells);
  p.q = Field::Zero(cells);
  return p;
}

void SolutionProfile::normalize_dry(double dry_tolerance) {
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (h[i] <= dry_tolerance) {
      u[i] = 0.0;
      q[i] = 0.0;
    } else {
      u[i] = q[i] / h[i];
    }
  }
}

void SolutionProfile::check_invariants(double dry_tolerance) const {
  const auto n = size();
  if (h.size() != n || u.size() != n || z.size() != n || q.size() != n)
    throw DomainError("profile fields have mismatched lengths");
  if (!(dx > 0.0)) throw DomainError("profile grid spacing must be positive");
  for (Eigen::Index i = 0; i < n; ++i) {
    const double expected = x_begin + (static_cast<double>(i) + 0.5) * dx;
    if (std::abs(x[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw DomainError("profile grid is not uniform");
    if (!(h[i] >= 0.0)) throw DomainError("profile has a negative depth");
    if (h[i] < dry_tolerance && u[i] != 0.0)
      throw DomainError("profile has a non-zero velocity on a dry cell");
  }
}

SolutionProfile2D SolutionProfile2D::on_grid(double x_begin, double y_begin, double length_x,
                                             double length_y, Eigen::Index nx, Eigen::Index ny) {
  if (nx < 1 || ny < 1) throw DomainError("grid needs at least one cell per axis");
  SolutionProfile2D p;
  p.x_begin = x_begin;
  p.y_begin = y_begin;
  p.dx = length_x / static_cast<double>(nx);
  p.dy = length_y / static_cast<double>(ny);
  p.x = x_begin + (Field::LinSpaced(nx, 0.0, static_cast<double>(nx - 1)) + 0.5) * p.dx;
  p.y = y_begin + (Field::LinSpaced(ny, 0.0, static_cast<double>(ny - 1)) + 0.5) * p.dy;
  p.h = Field2D::Zero(nx, ny);
  p.u = Field2D::Zero(nx, ny);
  p.v = Field2D::Zero(nx, ny);
  p.z = Field2D::Zero(nx, ny);
  return p;
}

void SolutionProfile2D::check_invariants(double dry_tolerance) const {
  if (h.rows() != nx() || h.cols() != ny() || u.rows() != nx() || u.cols() != ny() ||
      v.rows() != nx() || v.cols() != ny() || z.rows() != nx() || z.cols() != ny())
    throw DomainError("2D profile fields have mismatched shapes");
  for (Eigen::Index j = 0; j < ny(); ++j) {
    for (Eigen::Index i = 0; i < nx(); ++i) {
      if (!(h(i, j) >= 0.0)) throw DomainError("2D profile has a negative depth");
      if (h(i, j) < dry_tolerance && (u(i, j) != 0.0 || v(i, j) != 0.0))
        throw DomainError("2D profile has a non-zero velocity on a dry cell");
    }
  }
}

}  // namespace swref
