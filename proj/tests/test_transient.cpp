#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swref/transient.hpp"

using namespace swref;

namespace {

constexpr double g = kGravity;

// Stoker intermediate state by plain bisection on the same relation.
double stoker_oracle(double hl, double hr) {
  auto f = [&](double h) {
    return 2 * (std::sqrt(g * hl) - std::sqrt(g * h)) -
           (h - hr) * std::sqrt(g * (h + hr) / (2 * h * hr));
  };
  double lo = hr, hi = hl;
  for (int k = 0; k < 200; ++k) {
    const double m = 0.5 * (lo + hi);
    (f(m) > 0 ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

DamBreakSetup setup(double hl, double hr) {
  DamBreakSetup s;
  s.h_left = hl;
  s.h_right = hr;
  s.dam_position = 5.0;
  s.length = 10.0;
  return s;
}

}  // namespace

TEST_CASE("Ritter fan") {
  const auto s = setup(1.0, 0.0);
  const double c = std::sqrt(g);
  const double t = 0.5;
  CHECK(ritter(s, 5.0 - 1.01 * c * t, t).h == 1.0);
  CHECK(ritter(s, 5.0 + 2.01 * c * t, t).h == 0.0);
  CHECK(ritter(s, 5.0, t).h == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(ritter(s, 5.0, t).u == doctest::Approx(2.0 / 3.0 * c).epsilon(1e-15));
  const auto st = ritter(s, 5.0 + 0.7 * c * t, t);
  CHECK(st.h == doctest::Approx(std::pow(2 * c - 0.7 * c, 2) / (9 * g)));
  CHECK(dam_break_initial(s, 4.0).h == 1.0);
  CHECK(dam_break_initial(s, 6.0).h == 0.0);
}

TEST_CASE("Stoker intermediate state") {
  // 30-digit values from an independent root solve.
  const auto a = stoker_intermediate(1.0, 0.1);
  CHECK(a.h_m == doctest::Approx(0.3961748167994429).epsilon(1e-13));
  CHECK(a.u_m == doctest::Approx(2.321354995640744).epsilon(1e-13));
  CHECK(a.shock_speed == doctest::Approx(3.105133650668213).epsilon(1e-13));
  const auto b = stoker_intermediate(0.005, 0.001);
  CHECK(b.h_m == doctest::Approx(0.002539357172283335).epsilon(1e-13));
  CHECK_THROWS_AS(stoker_intermediate(1.0, 2.0), DomainError);
}

TEST_CASE("property: Stoker agrees with a bisection oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double hl = 0.01 + 10 * u(rng);
    const double hr = hl * (0.001 + 0.9 * u(rng));
    CHECK(stoker_intermediate(hl, hr).h_m == doctest::Approx(stoker_oracle(hl, hr)).epsilon(1e-12));
  }
}

TEST_CASE("Stoker zones") {
  const auto s = setup(1.0, 0.1);
  const StokerSolution sol(s);
  const double t = 0.3;
  const auto fr = sol.fronts(t);
  REQUIRE(fr.size() == 3);
  CHECK(fr[0] < fr[1]);
  CHECK(fr[1] < fr[2]);
  CHECK(sol(fr[2] + 1e-9, t).h == 0.1);
  CHECK(sol(fr[2] - 1e-9, t).h == doctest::Approx(sol.state().h_m));
  CHECK(sol(fr[0] - 1e-9, t).h == 1.0);
  CHECK(sol.shock_position(t) == doctest::Approx(5.0 + sol.state().shock_speed * t));
}

TEST_CASE("Dressler") {
  auto s = setup(6.0, 0.0);
  s.length = 2000;
  s.dam_position = 1000;
  s.friction = FrictionLaw::chezy(40.0);
  const DresslerSolution sol(s);
  const auto tip = sol.tip(40.0);
  REQUIRE(tip);
  CHECK(tip->start < tip->front);
  const double c = std::sqrt(g * 6.0);
  CHECK(tip->front <= 1000 + 2 * c * 40 + 1e-9);
  CHECK(sol(tip->front + 1.0, 40.0).h == 0.0);
  // Friction slows the front relative to Ritter.
  CHECK(tip->front < 1000 + 2 * c * 40);
  s.friction = FrictionLaw::none();
  const DresslerSolution frictionless(s);
  CHECK_FALSE(frictionless.tip(40.0));
  CHECK(frictionless(1100.0, 40.0).h == doctest::Approx(ritter(s, 1100.0, 40.0).h));
  s.friction = FrictionLaw::manning(0.03);
  CHECK_THROWS_AS(DresslerSolution{s}, DomainError);
}

TEST_CASE("dam-break snapshots") {
  auto s = setup(1.0, 0.1);
  s.n_cells = 64;
  const auto p0 = dam_break_snapshot(s, DamBreakKind::Stoker, 0.0);
  CHECK(p0.h[0] == 1.0);
  CHECK(p0.h[63] == 0.1);
  const auto p = dam_break_snapshot(s, DamBreakKind::Stoker, 0.2);
  CHECK(p.metadata.count("shock_position"));
  CHECK(p.size() == 64);
  CHECK_NOTHROW(p.check_invariants(kDryTolerance));
  s.h_left = -1.0;
  CHECK_THROWS_AS(dam_break_snapshot(s, DamBreakKind::Ritter, 0.1), DomainError);
}

TEST_CASE("Thacker volume and period") {
  ThackerSetup s;
  CHECK(s.period() == doctest::Approx(2.006066680710647).epsilon(1e-14));
  CHECK(s.volume() == doctest::Approx(4.0 / 3.0 * 0.5));
  const auto p = thacker_snapshot(s, 0.37);
  CHECK(p.h.sum() * p.dx == doctest::Approx(s.volume()).epsilon(1e-12));
  s.dimensions = 2;
  s.h0 = 0.1;
  s.nx = s.ny = 64;
  const auto q = thacker_snapshot_2d(s, 0.9);
  CHECK(q.h.sum() * q.dx * q.dy == doctest::Approx(s.volume()).epsilon(1e-12));
  s.variant = ThackerVariant::CurvedSurface;
  s.amplitude = 0.8;
  const auto r = thacker_snapshot_2d(s, 0.4);
  CHECK(r.h.sum() * r.dx * r.dy == doctest::Approx(s.volume()).epsilon(1e-12));
}

TEST_CASE("Thacker planar motion") {
  ThackerSetup s;
  const double w = s.frequency();
  // The lake surface stays planar with slope tracking the orbit.
  const double t = 0.3;
  const auto a = thacker(s, 2.0, t), b = thacker(s, 2.2, t);
  const double eta_slope = ((a.h + thacker_bed(s, 2.0, 0)) - (b.h + thacker_bed(s, 2.2, 0))) / -0.2;
  CHECK(eta_slope == doctest::Approx(2 * s.h0 * s.amplitude * std::cos(w * t) / (s.a * s.a)));
  CHECK(a.u == doctest::Approx(-s.amplitude * w * std::sin(w * t)));
  CHECK(thacker(s, 0.1, t).h == 0.0);
}

TEST_CASE("Thacker validation") {
  ThackerSetup s;
  s.amplitude = 1.5;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.variant = ThackerVariant::CurvedSurface;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.dimensions = 2;
  s.amplitude = 0.8;
  s.h0 = 0.1;
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("paraboloid cap integral against quadrature") {
  const double R = 1.0;
  auto midpoint = [&](double s0, double s1, double t0, double t1) {
    const int n = 800;
    double acc = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double s = s0 + (i + 0.5) * (s1 - s0) / n, t = t0 + (j + 0.5) * (t1 - t0) / n;
        acc += std::max(R * R - s * s - t * t, 0.0);
      }
    return acc * (s1 - s0) * (t1 - t0) / (n * n);
  };
  CHECK(paraboloid_cap_integral(R, -2, 2, -2, 2) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
  CHECK(paraboloid_cap_integral(R, 0.3, 0.9, -0.2, 0.5) ==
        doctest::Approx(midpoint(0.3, 0.9, -0.2, 0.5)).epsilon(1e-5));
  CHECK(paraboloid_cap_integral(R, 1.1, 2, 0, 1) == 0.0);
}

TEST_CASE("transient residual on Ritter with a tracked mask") {
  const auto s = setup(1.0, 0.0);
  const double c = std::sqrt(g);
  ResidualMask mask;
  mask.fronts = [&](double t) { return std::vector<double>{5.0 - c * t, 5.0 + 2 * c * t}; };
  const auto slab = SpaceTimeSlab::sample([&](double x, double t) { return ritter(s, x, t); },
                                          [](double) { return 0.0; }, 0.0, 0.01, 1000, 0.2,
                                          0.001, 40);
  ChannelSpec spec;
  const auto r = transient_residual(slab, spec, mask);
  CHECK(r.evaluated_points > 1000);
  CHECK(r.mass < 1e-6);
  CHECK(r.momentum < 1e-6);
  // Without the mask the fan edges dominate.
  const auto raw = transient_residual(slab, spec, ResidualMask{0, {}, {}});
  CHECK(raw.momentum > 100 * r.momentum);
}

TEST_CASE("transient residual checks the shock jump") {
  const auto s = setup(1.0, 0.1);
  const StokerSolution sol(s);
  ResidualMask mask;
  mask.fronts = [&](double t) { return sol.fronts(t); };
  mask.shock = [&](double t) {
    return std::optional{std::pair{sol.shock_position(t), sol.state().shock_speed}};
  };
  const auto slab = SpaceTimeSlab::sample([&](double x, double t) { return sol(x, t); },
                                          [](double) { return 0.0; }, 0.0, 0.01, 1000, 0.2,
                                          0.001, 20);
  const auto r = transient_residual(slab, ChannelSpec{}, mask);
  REQUIRE(r.rankine_hugoniot);
  CHECK(*r.rankine_hugoniot < 1e-10);
  CHECK(r.momentum < 1e-6);
}
