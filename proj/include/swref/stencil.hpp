#pragma once

#include <span>
#include <vector>

#include "swref/profile.hpp"

namespace swref {

/// Finite-difference weights (Fornberg's recursion) approximating the m-th
/// derivative at `at` from values on `nodes`.
std::vector<double> fornberg_weights(double at, std::span<const double> nodes, int m);

/// First index of the `points`-wide window used for cell i: centred in the
/// interior, shifted inward near the ends.
Eigen::Index stencil_start(Eigen::Index i, Eigen::Index n, int points);

/// First derivative of uniformly spaced samples. Interior cells use the
/// centred `points`-wide stencil, boundary cells the one-sided stencil of the
/// same width, so the order (points − 1) holds everywhere.
Field differentiate(const Field& f, double dx, int points = 7);

}  // namespace swref
