#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace swref {

template <typename Scalar>
struct RootResult {
  Scalar root;
  Scalar residual;
  int iterations;
  bool converged;
};

/// Safeguarded Newton iteration on a sign-changing bracket [lo, hi].
///
/// `fdf(x)` returns the pair (f(x), f'(x)). A Newton step that leaves the
/// current bracket, or fails to halve it, is replaced by a bisection step, so
/// the method converges for any continuous f with f(lo)·f(hi) <= 0. Iteration
/// stops when |f| <= ftol or the bracket width falls below xtol·|x|.
template <typename Scalar, typename FdF>
RootResult<Scalar> bracketed_newton(FdF&& fdf, Scalar lo, Scalar hi, Scalar ftol,
                                    Scalar xtol, int max_iter = 200) {
  using std::abs;
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == Scalar(0)) return {lo, Scalar(0), 0, true};
  if (fhi == Scalar(0)) return {hi, Scalar(0), 0, true};
  if ((flo > 0) == (fhi > 0)) {
    return {Scalar(0.5) * (lo + hi), std::numeric_limits<Scalar>::quiet_NaN(), 0,
            false};
  }
  // Orient so that f(lo) < 0 < f(hi).
  if (flo > 0) std::swap(lo, hi);

  Scalar x = Scalar(0.5) * (lo + hi);
  Scalar width_prev = abs(hi - lo);
  for (int it = 1; it <= max_iter; ++it) {
    auto [f, df] = fdf(x);
    if (abs(f) <= ftol) return {x, f, it, true};
    if (f < 0) lo = x; else hi = x;

    Scalar next = x;
    bool newton_ok = false;
    if (df != Scalar(0) && std::isfinite(static_cast<double>(df))) {
      next = x - f / df;
      const Scalar a = lo < hi ? lo : hi;
      const Scalar b = lo < hi ? hi : lo;
      newton_ok = next > a && next < b &&
                  abs(next - x) < Scalar(0.5) * width_prev;
    }
    width_prev = abs(hi - lo);
    if (!newton_ok) next = Scalar(0.5) * (lo + hi);
    if (abs(hi - lo) <= xtol * abs(next)) {
      auto [fn, dn] = fdf(next);
      (void)dn;
      return {next, fn, it, true};
    }
    x = next;
  }
  auto [f, df] = fdf(x);
  (void)df;
  return {x, f, max_iter, abs(f) <= ftol};
}

/// Plain bisection on [lo, hi] for a sign-changing f; returns the midpoint of
/// the final bracket once it is narrower than `tol`.
template <typename Scalar, typename F>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar tol, int max_iter = 400) {
  Scalar flo = f(lo);
  for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    const Scalar fm = f(mid);
    if (fm == Scalar(0)) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return Scalar(0.5) * (lo + hi);
}

}  // namespace swref
