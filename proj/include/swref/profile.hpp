#pragma once

#include <map>
#include <string>

#include <Eigen/Core>

#include "swref/core.hpp"

namespace swref {

using Field = Eigen::ArrayXd;
using Field2D = Eigen::ArrayXXd;

/// Discretized 1D fields on a uniform cell-centred grid,
/// x_i = x_begin + (i + 1/2)·dx.
struct SolutionProfile {
  double x_begin = 0.0;
  double dx = 0.0;
  double time = 0.0;
  Field x;
  Field h;
  Field u;
  Field z;
  Field q;
  /// Scalar annotations (shock position, masked tip interval, ...).
  std::map<std::string, double> metadata;

  static SolutionProfile on_grid(double x_begin, double length, Eigen::Index cells);

  Eigen::Index size() const { return x.size(); }
  double x_end() const { return x_begin + dx * static_cast<double>(size()); }

  /// Recomputes u = q/h on wet cells and zeroes u and q on dry cells.
  void normalize_dry(double dry_tolerance);

  /// Throws DomainError if any invariant fails (h >= 0, u = 0 on dry cells,
  /// equal field lengths, uniform grid).
  void check_invariants(double dry_tolerance) const;
};

/// Discretized 2D fields; arrays are indexed (i, j) with x varying along i.
struct SolutionProfile2D {
  double x_begin = 0.0;
  double y_begin = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double time = 0.0;
  Field x;
  Field y;
  Field2D h;
  Field2D u;
  Field2D v;
  Field2D z;
  std::map<std::string, double> metadata;

  static SolutionProfile2D on_grid(double x_begin, double y_begin, double length_x,
                                   double length_y, Eigen::Index nx, Eigen::Index ny);

  Eigen::Index nx() const { return x.size(); }
  Eigen::Index ny() const { return y.size(); }
  void check_invariants(double dry_tolerance) const;
};

}  // namespace swref
