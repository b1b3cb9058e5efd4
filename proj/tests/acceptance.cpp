// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "swref/catalog.hpp"
#include "swref/cli.hpp"
#include "swref/core.hpp"
#include "swref/gvf.hpp"
#include "swref/harness.hpp"
#include "swref/io.hpp"
#include "swref/steady.hpp"
#include "swref/transient.hpp"

using namespace swref;

namespace {

constexpr double g = kGravity;

struct Outcome {
  bool passed = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---------------------------------------------------------------- 1

Outcome diagnostics_closure() {
  constexpr int kSamples = 1000;
  constexpr double kFroudeTol = 1e-12;
  constexpr double kSlopeTol = 1e-10;
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto logu = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };

  double worst_fr = 0.0, worst_sf = 0.0;
  int sign_mismatch = 0, classified = 0;
  ChannelSpec spec;
  for (int k = 0; k < kSamples; ++k) {
    const double q = (unit(rng) < 0.5 ? -1.0 : 1.0) * logu(1e-3, 1e2);
    const double h = logu(1e-3, 1e2);

    const double hc = critical_height(q);
    worst_fr = std::max(worst_fr, std::abs(*froude(hc, q / hc) - 1.0));

    const FrictionLaw laws[] = {FrictionLaw::manning(logu(0.01, 0.1)),
                                FrictionLaw::darcy_weisbach(logu(0.01, 0.2)),
                                FrictionLaw::chezy(logu(10.0, 100.0))};
    const double s0 = logu(1e-5, 1e-1);
    for (const auto& law : laws) {
      const auto hn = normal_height(law, q, s0);
      // S_f carries the sign of q; the balance is on its magnitude.
      worst_sf = std::max(worst_sf, rel(std::abs(*friction_slope(law, *hn, q)), s0));
    }

    // Sign pattern of (λ1, λ2) against the regime, computed from h and u directly.
    const double u = q / h;
    const auto regime = classify_regime(h, q, spec);
    const auto ws = wave_speeds(h, u);
    const double fr = std::abs(u) / std::sqrt(g * h);
    if (regime == FlowRegime::Critical) continue;
    ++classified;
    bool ok = false;
    if (fr < 1.0)
      ok = regime == FlowRegime::Subcritical && ws.lambda1 < 0.0 && ws.lambda2 > 0.0;
    else
      ok = regime == FlowRegime::Supercritical &&
           ((u > 0.0 && ws.lambda1 > 0.0) || (u < 0.0 && ws.lambda2 < 0.0));
    if (!ok) ++sign_mismatch;
  }
  o.require(worst_fr <= kFroudeTol, "Fr(h_c) off by " + sci(worst_fr));
  o.require(worst_sf <= kSlopeTol, "S_f(h_n) off by " + sci(worst_sf));
  o.require(sign_mismatch == 0, std::to_string(sign_mismatch) + " wave-speed sign mismatches");
  o.require(classified > 900, "too few classified states");
  o.note("max |Fr-1| " + sci(worst_fr) + ", max rel S_f " + sci(worst_sf) + ", " +
         std::to_string(classified) + " regimes matched");
  return o;
}

// ---------------------------------------------------------------- 2

int expected_sign(const GvfProblem& p, double h) {
  // dh/dx = (S0 - S_f)/(1 - Fr²), evaluated from scratch.
  const double n2 = p.spec.friction.cf(p.spec.gravity);
  const double sf = n2 * p.discharge * std::abs(p.discharge) / std::pow(h, 10.0 / 3.0);
  const double fr2 = p.discharge * p.discharge / (p.spec.gravity * h * h * h);
  const double num = p.bed_slope - sf;
  const double den = 1.0 - fr2;
  return (num > 0) == (den > 0) ? 1 : -1;
}

// Independent RK4 of the backwater ODE, from x_from to x_to in `steps` steps.
double rk4_march(const GvfProblem& p, double h, double x_from, double x_to, int steps) {
  const double n2 = p.spec.friction.cf(p.spec.gravity);
  auto f = [&](double d) {
    const double sf = n2 * p.discharge * p.discharge / std::pow(d, 10.0 / 3.0);
    const double fr2 = p.discharge * p.discharge / (p.spec.gravity * d * d * d);
    return (p.bed_slope - sf) / (1.0 - fr2);
  };
  const double dx = (x_to - x_from) / steps;
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(h);
    const double k2 = f(h + 0.5 * dx * k1);
    const double k3 = f(h + 0.5 * dx * k2);
    const double k4 = f(h + dx * k3);
    h += dx / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return h;
}

Outcome gvf_taxonomy() {
  constexpr double kNormalDepth = 0.9689;
  constexpr double kNormalTol = 1e-3;
  constexpr double kOracleTol = 1e-9;
  constexpr int kInstances = 20;
  Outcome o;

  const auto types = ProfileType::all();
  int admissible = 0;
  for (auto sc : {SlopeClass::Mild, SlopeClass::Critical, SlopeClass::Steep,
                  SlopeClass::Horizontal, SlopeClass::Adverse})
    for (int z = 1; z <= 3; ++z) admissible += ProfileType::admissible(sc, z) ? 1 : 0;
  o.require(types.size() == 13 && admissible == 13, "type count is not 13");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  int checked_cells = 0;
  for (const auto& type : types) {
    for (int inst = 0; inst < kInstances; ++inst) {
      GvfProblem p;
      p.spec.friction = FrictionLaw::manning(uni(0.015, 0.05));
      p.discharge = uni(0.5, 5.0);
      const double hc = critical_height(p.discharge);
      const double s_crit = *friction_slope(p.spec.friction, hc, p.discharge);
      switch (type.slope()) {
        case SlopeClass::Mild: p.bed_slope = s_crit * uni(0.05, 0.5); break;
        case SlopeClass::Steep: p.bed_slope = s_crit * uni(2.0, 20.0); break;
        case SlopeClass::Critical: p.bed_slope = s_crit; break;
        case SlopeClass::Horizontal: p.bed_slope = 0.0; break;
        case SlopeClass::Adverse: p.bed_slope = -s_crit * uni(0.05, 1.0); break;
      }
      const auto hn = p.normal_depth();
      const double lo = hn ? std::min(*hn, hc) : 0.0;
      const double hi = hn ? std::max(*hn, hc) : hc;
      if (type.slope() == SlopeClass::Critical && type.zone() == 2) {
        p.boundary_depth = hc;
      } else if (!hn) {
        p.boundary_depth = type.zone() == 2 ? hc * uni(1.1, 2.0) : hc * uni(0.4, 0.9);
      } else {
        switch (type.zone()) {
          case 1: p.boundary_depth = hi * uni(1.05, 1.6); break;
          case 2: p.boundary_depth = lo + (hi - lo) * uni(0.2, 0.8); break;
          default: p.boundary_depth = lo * uni(0.4, 0.95); break;
        }
      }
      p.n_cells = 100;
      p.reach_length = 200.0 * hc * uni(0.5, 1.0);
      p.spec.length = p.reach_length;

      if (!(classify_profile(p) == type)) {
        o.require(false, type.name() + " misclassified");
        continue;
      }
      std::optional<SolutionProfile> prof;
      for (int tries = 0; tries < 30 && !prof; ++tries) {
        try {
          prof = integrate_backwater(p);
        } catch (const ProfileArrested&) {
          p.reach_length *= 0.5;
          p.spec.length = p.reach_length;
        } catch (const DryOut&) {
          p.reach_length *= 0.5;
          p.spec.length = p.reach_length;
        }
      }
      if (!prof) {
        o.require(false, type.name() + " never integrated");
        continue;
      }
      const auto& h = prof->h;
      for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (type.trend() == 0) {
          if (std::abs(h[i] - hc) > 1e-9 * hc) o.require(false, type.name() + " not uniform");
          continue;
        }
        ++checked_cells;
        if (expected_sign(p, h[i]) != type.trend())
          o.require(false, type.name() + " slope sign disagrees with the sign analysis");
        if (i > 0) {
          const double d = h[i] - h[i - 1];
          if (std::abs(d) > 1e-12 * h[i] && (d > 0 ? 1 : -1) != type.trend())
            o.require(false, type.name() + " sampled depth not monotone");
        }
      }
    }
  }

  // M1 approach to normal depth.
  GvfProblem m1;
  m1.spec.friction = FrictionLaw::manning(0.03);
  m1.spec.length = 1000.0;
  m1.discharge = 1.0;
  m1.bed_slope = 0.001;
  m1.boundary_depth = 1.5;
  m1.reach_length = 1000.0;
  m1.n_cells = 200;
  const double hn = *m1.normal_depth();
  o.require(std::abs(hn - kNormalDepth) <= kNormalTol, "h_n = " + sci(hn));
  const auto prof = integrate_backwater(m1);
  double oracle_err = 0.0;
  bool monotone = true;
  const double dx = m1.reach_length / m1.n_cells;
  double h_or = m1.boundary_depth;
  double x_or = m1.reach_length;
  for (Eigen::Index i = prof.size() - 1; i >= 0; --i) {
    const double xc = prof.x[i];
    h_or = rk4_march(m1, h_or, x_or, xc, 10 * std::max(1, static_cast<int>(std::lround((x_or - xc) / dx * 2))));
    x_or = xc;
    oracle_err = std::max(oracle_err, rel(prof.h[i], h_or));
    if (prof.h[i] <= hn) monotone = false;
    if (i + 1 < prof.size() && !(prof.h[i] < prof.h[i + 1])) monotone = false;
  }
  o.require(monotone, "M1 approach not monotone towards h_n");
  o.require(oracle_err <= kOracleTol, "M1 vs RK4 oracle " + sci(oracle_err));
  const double gap_up = prof.h[0] - hn, gap_down = m1.boundary_depth - hn;
  o.require(gap_up < 0.1 * gap_down, "M1 upstream gap to h_n only shrank to " + sci(gap_up));
  o.note("13 types, " + std::to_string(checked_cells) + " cells sign-checked; h_n " + sci(hn) +
         ", M1 upstream h " + sci(prof.h[0]) + ", oracle err " + sci(oracle_err));
  return o;
}

// ---------------------------------------------------------------- 3

Outcome steady_residuals() {
  constexpr double kResidualTol = 1e-8;
  constexpr double kMinRatio = 32.0;  // fifth order between N and 2N
  constexpr double kRoundoffFloor = 1e-12;
  const std::vector<std::string> ids = {
      "steady/lake_at_rest",           "steady/lake_at_rest/island",
      "steady/uniform",                "steady/macdonald/gaussian_manning",
      "steady/macdonald/tanh_darcy",   "steady/macdonald/linear_manning",
      "steady/macdonald/viscous",      "steady/macdonald/rain",
      "steady/macdonald/transcritical", "steady/bump/subcritical",
      "steady/bump/transcritical"};
  Outcome o;
  double worst = 0.0, worst_ratio = 1e300;
  for (const auto& id : ids) {
    const auto* e = find_entry(id);
    if (!e) {
      o.require(false, "missing " + id);
      continue;
    }
    const auto p = e->defaults();
    auto residual = [&](int n) {
      const auto gen = e->generate(p, {n, 0, std::nullopt});
      const auto r = steady_residual(*gen.profile, gen.spec, gen.inflow_discharge);
      return std::max(r.momentum, r.mass);
    };
    const double r200 = residual(200), r400 = residual(400);
    worst = std::max(worst, r200);
    o.require(r200 < kResidualTol, id + " residual " + sci(r200));
    if (r200 > kRoundoffFloor) {
      const double ratio = r200 / std::max(r400, 1e-300);
      worst_ratio = std::min(worst_ratio, ratio);
      o.require(ratio >= kMinRatio, id + " refinement ratio " + sci(ratio));
    } else {
      o.require(r400 <= kRoundoffFloor, id + " left the roundoff floor at N=400");
    }
  }
  o.note(std::to_string(ids.size()) + " entries, max residual " + sci(worst) +
         ", min 200/400 ratio " + sci(worst_ratio));
  return o;
}

// ---------------------------------------------------------------- 4

Outcome dam_breaks() {
  constexpr double kInvariantTol = 1e-12;
  constexpr double kRhTol = 1e-10;
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DamBreakSetup s;
  s.h_left = 2.0;
  s.dam_position = 5.0;
  s.length = 10.0;
  const double c = std::sqrt(g * s.h_left);
  const double t = 0.4;
  double worst_inv = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double xi = (-c + 3.0 * c * unit(rng)) * t;  // inside the fan (−ct, 2ct)
    const auto st = ritter(s, s.dam_position + xi, t);
    if (st.h <= 0.0) continue;
    worst_inv = std::max(worst_inv, rel(st.u + 2.0 * std::sqrt(g * st.h), 2.0 * c));
  }
  o.require(worst_inv <= kInvariantTol, "Ritter invariant " + sci(worst_inv));
  double dam_err = 0.0;
  for (double tt : {0.1, 0.3, 1.0}) dam_err = std::max(dam_err, rel(ritter(s, s.dam_position, tt).h, 4.0 / 9.0 * s.h_left));
  o.require(dam_err <= 4 * std::numeric_limits<double>::epsilon(), "h(x0) off 4/9 by " + sci(dam_err));

  double worst_rh = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double hl = 0.1 * std::pow(100.0, unit(rng));
    const double hr = hl * std::pow(10.0, -3.0 * unit(rng)) * 0.9;
    const auto st = stoker_intermediate(hl, hr);
    const double s_ = st.shock_speed;
    const double mass = s_ * (st.h_m - hr) - st.h_m * st.u_m;
    const double mom = s_ * st.h_m * st.u_m - (st.h_m * st.u_m * st.u_m + 0.5 * g * (st.h_m * st.h_m - hr * hr));
    const double riemann = st.u_m + 2.0 * std::sqrt(g * st.h_m) - 2.0 * std::sqrt(g * hl);
    worst_rh = std::max({worst_rh, std::abs(mass) / (hl * std::sqrt(g * hl)),
                         std::abs(mom) / (0.5 * g * hl * hl), std::abs(riemann) / std::sqrt(g * hl)});
  }
  o.require(worst_rh <= kRhTol, "Stoker jump defect " + sci(worst_rh));

  // Stoker -> Ritter: L1 gap of the depth at a fixed time.
  DamBreakSetup w = s;
  w.n_cells = 2000;
  const auto rit = dam_break_snapshot(w, DamBreakKind::Ritter, 0.5);
  std::vector<double> gaps;
  for (int e = 3; e <= 8; ++e) {
    w.h_right = std::pow(10.0, -e);
    const auto sto = dam_break_snapshot(w, DamBreakKind::Stoker, 0.5);
    gaps.push_back((sto.h - rit.h).abs().sum() * w.length / w.n_cells / (s.h_left * s.length));
  }
  bool decreasing = std::is_sorted(gaps.rbegin(), gaps.rend()) &&
                    std::adjacent_find(gaps.begin(), gaps.end()) == gaps.end();
  o.require(decreasing && gaps.back() < 0.05 * gaps.front(),
            "Stoker->Ritter gaps " + sci(gaps.front()) + ".." + sci(gaps.back()));

  // Dressler -> Ritter as the Chézy coefficient grows.
  DamBreakSetup d;
  d.h_left = 6.0;
  d.dam_position = 1000.0;
  d.length = 2000.0;
  d.n_cells = 2000;
  const double td = 40.0;
  const auto rd = dam_break_snapshot(d, DamBreakKind::Ritter, td);
  std::vector<double> dgaps;
  for (double chezy : {20.0, 40.0, 100.0, 400.0, 2000.0, 10000.0}) {
    d.friction = FrictionLaw::chezy(chezy);
    const auto dr = dam_break_snapshot(d, DamBreakKind::Dressler, td);
    dgaps.push_back((dr.h - rd.h).abs().sum() * d.length / d.n_cells / (d.h_left * d.length));
  }
  decreasing = std::is_sorted(dgaps.rbegin(), dgaps.rend()) &&
               std::adjacent_find(dgaps.begin(), dgaps.end()) == dgaps.end();
  o.require(decreasing && dgaps.back() < 1e-3 * dgaps.front(),
            "Dressler->Ritter gaps " + sci(dgaps.front()) + ".." + sci(dgaps.back()));
  o.note("invariant " + sci(worst_inv) + ", 4/9 err " + sci(dam_err) + ", RH " + sci(worst_rh) +
         ", Stoker gap " + sci(gaps.front()) + "->" + sci(gaps.back()) + ", Dressler gap " +
         sci(dgaps.front()) + "->" + sci(dgaps.back()));
  return o;
}

// ---------------------------------------------------------------- 5

Outcome thacker_checks() {
  constexpr double kVolumeTol = 1e-10;
  constexpr double kPeriodTol = 1e-12;
  constexpr double kResidualTol = 1e-8;
  constexpr int kSamples = 64;
  constexpr int kLattice = 400;
  Outcome o;

  struct Case {
    std::string name;
    ThackerSetup s;
  };
  std::vector<Case> cases;
  {
    ThackerSetup s;
    s.dimensions = 1;
    s.nx = 400;
    cases.push_back({"1d planar", s});
    s.dimensions = 2;
    s.h0 = 0.1;
    s.nx = s.ny = 200;
    cases.push_back({"2d planar", s});
    s.variant = ThackerVariant::CurvedSurface;
    s.amplitude = 0.8;
    cases.push_back({"2d curved", s});
  }
  double worst_vol = 0.0, worst_period = 0.0, worst_res = 0.0;
  for (const auto& [name, s] : cases) {
    const double T = s.period();
    auto volume = [&](double t) {
      if (s.dimensions == 1) {
        const auto p = thacker_snapshot(s, t);
        return p.h.sum() * p.dx;
      }
      const auto p = thacker_snapshot_2d(s, t);
      return p.h.sum() * p.dx * p.dy;
    };
    double vol = 0.0;
    for (int k = 0; k <= kSamples; ++k) vol = std::max(vol, rel(volume(T * k / kSamples), s.volume()));
    worst_vol = std::max(worst_vol, vol);
    o.require(vol <= kVolumeTol, name + " volume drift " + sci(vol));

    double per = 0.0;
    if (s.dimensions == 1) {
      const auto a = thacker_snapshot(s, 0.0), b = thacker_snapshot(s, T);
      per = std::max((a.h - b.h).abs().maxCoeff(), (a.u - b.u).abs().maxCoeff());
    } else {
      const auto a = thacker_snapshot_2d(s, 0.0), b = thacker_snapshot_2d(s, T);
      per = std::max({(a.h - b.h).abs().maxCoeff(), (a.u - b.u).abs().maxCoeff(),
                      (a.v - b.v).abs().maxCoeff()});
    }
    worst_period = std::max(worst_period, per);
    o.require(per <= kPeriodTol, name + " periodicity " + sci(per));

    ChannelSpec spec;
    spec.gravity = s.gravity;
    const double dxl = s.length / (kLattice - 1);
    const double dt = T / (10.0 * kLattice);
    TransientResidual r;
    if (s.dimensions == 1) {
      const auto slab = SpaceTimeSlab::sample(
          [&](double x, double t) { return thacker(s, x, t); },
          [&](double x) { return thacker_bed(s, x, 0.0); }, 0.0, dxl, kLattice, 0.0, dt,
          10 * kLattice + 1);
      r = transient_residual(slab, spec);
    } else {
      // Short windows spread over one period.
      for (int w = 0; w < 16; ++w) {
        const auto slab = SpaceTimeSlab2D::sample(
            [&](double x, double y, double t) { return thacker(s, x, y, t); },
            [&](double x, double y) { return thacker_bed(s, x, y); }, 0.0, 0.0, dxl, dxl,
            kLattice, kLattice, T * w / 16.0, dt, 5);
        const auto rw = transient_residual(slab, spec);
        r.mass = std::max(r.mass, rw.mass);
        r.momentum = std::max(r.momentum, rw.momentum);
        r.evaluated_points += rw.evaluated_points;
      }
    }
    const double res = std::max(r.mass, r.momentum);
    worst_res = std::max(worst_res, res);
    o.require(r.evaluated_points > 1000, name + " residual evaluated too few points");
    o.require(res < kResidualTol, name + " residual " + sci(res));
  }
  o.note("volume " + sci(worst_vol) + ", period " + sci(worst_period) + ", residual " +
         sci(worst_res) + " (1d planar, 2d planar, 2d curved)");
  return o;
}

// ---------------------------------------------------------------- 6

Outcome well_balancing() {
  constexpr long kSteps = 10'000;
  constexpr double kPreserveTol = 1e-14;
  constexpr double kNaiveMin = 1e-6;
  constexpr int kCells = 200;
  Outcome o;
  const auto* e = find_entry("steady/lake_at_rest");
  const auto gen = e->generate(e->defaults(), {kCells, 0, std::nullopt});
  const auto& init = *gen.profile;
  const double eta = e->defaults().at("eta");
  auto run = [&](TopographyTreatment t) {
    SchemeConfig sc;
    sc.topography = t;
    sc.left = sc.right = BoundaryCondition::wall();
    RunStats st;
    const auto out = run_steps(init, gen.spec, sc, kSteps, &st);
    double err = 0.0;
    for (Eigen::Index i = 0; i < out.size(); ++i)
      err = std::max({err, std::abs(out.h[i] + out.z[i] - eta), std::abs(out.q[i])});
    return std::pair{err, st.steps};
  };
  const auto [hyd, n1] = run(TopographyTreatment::Hydrostatic);
  const auto [naive, n2] = run(TopographyTreatment::NaiveSource);
  o.require(n1 == kSteps && n2 == kSteps, "step count mismatch");
  o.require(hyd <= kPreserveTol, "hydrostatic error " + sci(hyd));
  o.require(naive > kNaiveMin, "naive error only " + sci(naive));
  o.note("hydrostatic max cell error " + sci(hyd) + ", naive " + sci(naive) + " after " +
         std::to_string(kSteps) + " steps");
  return o;
}

// ---------------------------------------------------------------- 7

Outcome convergence() {
  const std::vector<int> grids = {50, 100, 200, 400};
  Outcome o;
  auto orders = [&](const std::string& id) {
    const auto* e = find_entry(id);
    const auto rep = bench_case(e->bench(e->defaults()), grids, SchemeConfig{});
    std::vector<double> out;
    for (const auto& g : rep.grids)
      if (g.error) o.require(false, id + " N=" + std::to_string(g.cells) + ": " + *g.error);
    for (const auto& c : rep.orders.at("h_l1")) out.push_back(c.order.value_or(NAN));
    return out;
  };
  std::string text;
  const auto mac = orders("steady/macdonald/gaussian_manning");
  for (double p : mac) o.require(std::abs(p - 1.0) <= 0.2, "MacDonald order " + sci(p));
  o.require(mac.size() == 3, "MacDonald orders missing");
  const auto sto = orders("transient/dambreak/stoker");
  for (double p : sto) o.require(p >= 0.5 && p <= 1.0, "Stoker order " + sci(p));
  o.require(sto.size() == 3, "Stoker orders missing");
  text = "MacDonald";
  for (double p : mac) text += " " + sci(p);
  text += ", Stoker";
  for (double p : sto) text += " " + sci(p);
  o.note(text);
  return o;
}

// ---------------------------------------------------------------- 8

int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"swref"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Outcome cli_and_format() {
  namespace fs = std::filesystem;
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("swref-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string file = (dir / "out.dat").string();

  int smoke = 0, roundtrip = 0;
  for (const auto& e : catalog()) {
    if (cli({"generate", "--solution", e.id, "--cells", "64", "--out", file}) != kExitOk) {
      o.require(false, "generate failed for " + e.id);
      continue;
    }
    ++smoke;
    // Round trip: every value written must parse back to the identical double.
    const auto gen = e.generate(e.defaults(), {64, 0, std::nullopt});
    const auto table = parse_table(read_file(file));
    bool ok = true;
    if (gen.profile) {
      const auto& p = *gen.profile;
      ok = table.rows.size() == static_cast<std::size_t>(p.size());
      for (Eigen::Index i = 0; ok && i < p.size(); ++i) {
        const auto& r = table.rows[static_cast<std::size_t>(i)];
        const double fr = froude(p.h[i], p.u[i], gen.spec.gravity).value_or(0.0);
        const double expect[] = {p.x[i], p.h[i], p.u[i], p.z[i], p.q[i], p.h[i] + p.z[i], fr};
        for (std::size_t c = 0; c < 7; ++c) ok = ok && same_bits(r[c], expect[c]);
      }
    } else {
      const auto& p = *gen.profile2d;
      ok = table.rows.size() == static_cast<std::size_t>(p.nx() * p.ny());
      std::size_t k = 0;
      for (Eigen::Index j = 0; ok && j < p.ny(); ++j)
        for (Eigen::Index i = 0; ok && i < p.nx(); ++i, ++k) {
          const auto& r = table.rows[k];
          const double expect[] = {p.x[i], p.y[j], p.h(i, j), p.u(i, j), p.v(i, j), p.z(i, j)};
          for (std::size_t c = 0; c < 6; ++c) ok = ok && same_bits(r[c], expect[c]);
        }
    }
    if (ok) ++roundtrip;
    o.require(ok, "round trip differs for " + e.id);
  }

  struct Row {
    std::vector<std::string> args;
    int code;
  };
  const std::string report = (dir / "r.json").string();
  const std::string missing = (dir / "no-such-dir" / "x.dat").string();
  const std::vector<Row> matrix = {
      {{"list"}, kExitOk},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--format", "csv", "--out", file}, kExitOk},
      {{"bench", "--solution", "steady/lake_at_rest", "--cells", "50", "--report", report}, kExitOk},
      {{"bench", "--solution", "steady/lake_at_rest", "--cells", "50", "--scheme", "naive", "--report", report},
       kExitBenchFail},
      {{}, kExitUsage},
      {{"frobnicate"}, kExitUsage},
      {{"generate", "--solution", "no/such", "--cells", "10", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--param", "bogus=1", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--param", "slope=abc", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "0", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--cells-y", "4", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--time", "1", "--out", file}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--param", "slope=-1", "--out", file}, kExitUsage},
      {{"converge", "--solution", "steady/uniform", "--cells", "10"}, kExitUsage},
      {{"bench", "--solution", "transient/thacker/2d_planar", "--cells", "10", "--report", report}, kExitUsage},
      {{"generate", "--solution", "steady/uniform", "--cells", "10", "--out", missing}, kExitIo},
      {{"bench", "--solution", "steady/lake_at_rest", "--cells", "20", "--report", missing}, kExitIo},
  };
  int matrix_ok = 0;
  for (const auto& row : matrix) {
    const int code = cli(row.args);
    if (code == row.code) {
      ++matrix_ok;
    } else {
      std::string cmd;
      for (const auto& a : row.args) cmd += " " + a;
      o.require(false, "exit " + std::to_string(code) + " != " + std::to_string(row.code) + " for" + cmd);
    }
  }
  fs::remove_all(dir);
  o.note(std::to_string(smoke) + "/" + std::to_string(catalog().size()) + " generated, " +
         std::to_string(roundtrip) + " bit-exact round trips, " + std::to_string(matrix_ok) + "/" +
         std::to_string(matrix.size()) + " exit codes");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "diagnostics closure", diagnostics_closure},
      {2, "gvf taxonomy", gvf_taxonomy},
      {3, "steady residual oracle", steady_residuals},
      {4, "dam-break structure", dam_breaks},
      {5, "thacker conservation and periodicity", thacker_checks},
      {6, "well-balancing contrast", well_balancing},
      {7, "convergence orders", convergence},
      {8, "cli and file format", cli_and_format},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
