#include "swref/stencil.hpp"

#include <algorithm>

#include "swref/errors.hpp"

namespace swref {

std::vector<double> fornberg_weights(double at, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  if (n <= m) throw StencilError("fornberg_weights: not enough nodes for the derivative order");
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - at;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - at;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

Eigen::Index stencil_start(Eigen::Index i, Eigen::Index n, int points) {
  const Eigen::Index half = points / 2;
  return std::clamp<Eigen::Index>(i - half, 0, n - points);
}

Field differentiate(const Field& f, double dx, int points) {
  const Eigen::Index n = f.size();
  if (n < points) throw StencilError("differentiate: grid too coarse for the stencil");
  // Weights depend only on the offset of the evaluation point in its window.
  std::vector<std::vector<double>> table(points);
  std::vector<double> nodes(points);
  for (int k = 0; k < points; ++k) nodes[k] = k;
  for (int off = 0; off < points; ++off) table[off] = fornberg_weights(off, nodes, 1);

  Field out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index s = stencil_start(i, n, points);
    const auto& w = table[i - s];
    double acc = 0.0;
    for (int k = 0; k < points; ++k) acc += w[k] * f[s + k];
    out[i] = acc / dx;
  }
  return out;
}

}  // namespace swref
