#include "swref/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swref/gvf.hpp"
#include "swref/steady.hpp"
#include "swref/transient.hpp"

namespace swref {

std::string_view to_string(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::Steady: return "steady";
    case CatalogKind::Gvf: return "gvf";
    case CatalogKind::Transient: return "transient";
  }
  return "?";
}

Parameters CatalogEntry::defaults() const {
  Parameters p;
  for (const auto& s : parameters) p[s.name] = s.value;
  return p;
}

Parameters CatalogEntry::resolve(const std::vector<std::pair<std::string, double>>& overrides) const {
  Parameters p = defaults();
  for (const auto& [key, value] : overrides) {
    if (!p.count(key)) {
      std::ostringstream msg;
      msg << "unknown parameter '" << key << "' for " << id << " (known:";
      for (const auto& s : parameters) msg << ' ' << s.name;
      msg << ')';
      throw DomainError(msg.str());
    }
    if (!std::isfinite(value)) throw DomainError("parameter '" + key + "' must be finite");
    p[key] = value;
  }
  return p;
}

namespace {

// Rounds to a multiple of `quantum`; with a quantum of one ulp of the largest
// magnitude involved, h = η − z and h + z are both exact.
double snap(double v, double quantum) { return std::nearbyint(v / quantum) * quantum; }

SolutionProfile perturbed(SolutionProfile p) {
  const double L = p.x_end() - p.x_begin;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p.h[i] *= 1.0 + 0.01 * std::sin(std::numbers::pi * (p.x[i] - p.x_begin) / L);
  p.normalize_dry(kDryTolerance);
  return p;
}

int cells(const GridRequest& g) {
  if (g.nx < 1) throw DomainError("cell count must be positive");
  return g.nx;
}

Generated wrap(const ChannelSpec& spec, SolutionProfile p, double inflow) {
  Generated out;
  out.spec = spec;
  out.inflow_discharge = inflow;
  p.metadata["inflow_discharge"] = inflow;
  out.profile = std::move(p);
  return out;
}

using Gen = std::function<Generated(const Parameters&, const GridRequest&)>;

// Steady entries share their bench plumbing: exact at N, perturbed start,
// boundaries chosen from the flow state at each end.
BenchCase steady_bench(const std::string& id, const Gen& gen, const Parameters& p,
                       std::optional<std::pair<double, double>> band) {
  BenchCase b;
  b.id = id;
  b.mode = BenchMode::Steady;
  auto probe = gen(p, {64, 0, std::nullopt});
  b.spec = probe.spec;
  const auto& pr = *probe.profile;
  const double g = probe.spec.gravity;
  const double hl = pr.h[0], hr = pr.h[pr.size() - 1];
  const double ql = probe.inflow_discharge;
  const double qr = pr.q[pr.size() - 1];
  // Depths at the channel ends come from a fine sample's outermost cells.
  const auto fine = gen(p, {4096, 0, std::nullopt});
  const double h_in = fine.profile->h[0];
  const double h_out = fine.profile->h[fine.profile->size() - 1];
  const bool super_in = std::abs(ql) > hl * std::sqrt(g * hl);
  const bool super_out = std::abs(qr) > hr * std::sqrt(g * hr);
  b.left = super_in ? BoundaryCondition::inflow(ql, h_in) : BoundaryCondition::inflow(ql);
  b.right = super_out ? BoundaryCondition::free() : BoundaryCondition::outflow(h_out);
  b.exact = [gen, p](int n) { return *gen(p, {n, 0, std::nullopt}).profile; };
  b.initial = [gen, p](int n) { return perturbed(*gen(p, {n, 0, std::nullopt}).profile); };
  b.order_band = band;
  return b;
}

CatalogEntry steady_entry(std::string id, std::string regime, std::string summary,
                          std::vector<ParameterSpec> params, Gen gen,
                          std::optional<std::pair<double, double>> band = std::nullopt) {
  CatalogEntry e;
  e.id = id;
  e.kind = CatalogKind::Steady;
  e.regime = std::move(regime);
  e.summary = std::move(summary);
  e.parameters = std::move(params);
  e.generate = gen;
  e.bench = [id, gen, band](const Parameters& p) { return steady_bench(id, gen, p, band); };
  return e;
}

// ---- lake at rest -------------------------------------------------------

Generated lake_generate(const Parameters& p, const GridRequest& g) {
  ChannelSpec spec;
  spec.length = p.at("length");
  spec.validate();
  const double L = spec.length;
  auto grid = SolutionProfile::on_grid(0.0, L, cells(g));
  const double eta = p.at("eta");
  int e = 0;
  std::frexp(std::max(std::abs(eta), std::abs(p.at("bump"))), &e);
  const double quantum = std::ldexp(1.0, e - 52);
  Field z(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double x = grid.x[i];
    z[i] = snap(p.at("bump") * 4.0 * x * (L - x) / (L * L), quantum);
  }
  auto prof = lake_at_rest(0.0, grid.dx, z, snap(eta, quantum));
  prof.x = grid.x;
  prof.dx = grid.dx;
  return wrap(spec, std::move(prof), 0.0);
}

CatalogEntry lake_entry(std::string id, double bump, std::string regime, std::string summary) {
  CatalogEntry e;
  e.id = id;
  e.kind = CatalogKind::Steady;
  e.regime = std::move(regime);
  e.summary = std::move(summary);
  e.parameters = {{"length", 10.0, "channel length"},
                  {"bump", bump, "crest height of the parabolic bed"},
                  {"eta", 1.0, "free-surface elevation"}};
  e.generate = lake_generate;
  e.bench = [id](const Parameters& p) {
    BenchCase b;
    b.id = id;
    b.mode = BenchMode::Equilibrium;
    b.spec.length = p.at("length");
    b.left = BoundaryCondition::wall();
    b.right = BoundaryCondition::wall();
    b.exact = [p](int n) { return *lake_generate(p, {n, 0, std::nullopt}).profile; };
    return b;
  };
  return e;
}

// ---- MacDonald-type steady states -----------------------------------------

FrictionLaw friction_from(const Parameters& p) {
  if (p.count("manning")) return FrictionLaw::manning(p.at("manning"));
  if (p.count("darcy")) return FrictionLaw::darcy_weisbach(p.at("darcy"));
  if (p.count("chezy")) return FrictionLaw::chezy(p.at("chezy"));
  return FrictionLaw::none();
}

using AnsatzFactory = std::function<DepthAnsatz(const Parameters&)>;

Gen macdonald_generator(AnsatzFactory ansatz, RegimeLabel label) {
  return [ansatz, label](const Parameters& p, const GridRequest& g) {
    SteadyCase sc;
    sc.spec.length = p.at("length");
    sc.spec.friction = friction_from(p);
    if (p.count("rain")) sc.spec.rain_rate = p.at("rain");
    if (p.count("viscosity")) sc.spec.viscosity = p.at("viscosity");
    sc.inflow_discharge = p.at("discharge");
    sc.ansatz = ansatz(p);
    sc.regime = label;
    sc.n_cells = cells(g);
    auto prof = macdonald_topography(sc);
    if (prof.size() >= 2) check_regime_label(prof, sc.spec, label);
    return wrap(sc.spec, std::move(prof), sc.inflow_discharge);
  };
}

DepthAnsatz gaussian_ansatz(const Parameters& p) {
  return DepthAnsatz::gaussian_bump(p.at("h_base"), p.at("amplitude"), p.at("center"),
                                    p.at("width"));
}

DepthAnsatz tanh_ansatz(const Parameters& p) {
  return DepthAnsatz::tanh_transition(p.at("h_up"), p.at("h_down"), p.at("center"), p.at("width"));
}

DepthAnsatz linear_ansatz(const Parameters& p) {
  return DepthAnsatz::linear(p.at("h_up"), p.at("h_down"), p.at("length"));
}

std::vector<ParameterSpec> gaussian_params(double h_base) {
  return {{"length", 1000.0, "channel length"},
          {"discharge", 2.0, "inflow unit discharge"},
          {"h_base", h_base, "base depth"},
          {"amplitude", 0.2, "relative height of the depth bump"},
          {"center", 500.0, "bump centre"},
          {"width", 150.0, "bump width"}};
}

// ---- bump flows -----------------------------------------------------------

Gen bump_generator(BumpRegime regime) {
  return [regime](const Parameters& p, const GridRequest& g) {
    BumpCase bc;
    bc.spec.length = p.at("length");
    bc.discharge = p.at("discharge");
    bc.bed = TopographyAnsatz::gaussian(p.at("bump"), p.at("center"), p.at("width"));
    bc.regime = regime;
    if (p.count("downstream_depth")) bc.downstream_depth = p.at("downstream_depth");
    bc.n_cells = cells(g);
    BumpFlow flow(bc);
    return wrap(bc.spec, flow.sample(), bc.discharge);
  };
}

std::vector<ParameterSpec> bump_params(double q, std::optional<double> h_down) {
  std::vector<ParameterSpec> v{{"length", 100.0, "channel length"},
                               {"discharge", q, "unit discharge"},
                               {"bump", 0.2, "bump height"},
                               {"center", 50.0, "bump crest position"},
                               {"width", 15.0, "bump width"}};
  if (h_down) v.push_back({"downstream_depth", *h_down, "depth imposed at the outlet"});
  return v;
}

// ---- gradually varied flow --------------------------------------------------

Gen gvf_generator() {
  return [](const Parameters& p, const GridRequest& g) {
    GvfProblem gp;
    gp.spec.length = p.at("length");
    gp.spec.friction = FrictionLaw::manning(p.at("manning"));
    gp.discharge = p.at("discharge");
    gp.bed_slope = p.at("slope");
    gp.boundary_depth = p.at("boundary_depth");
    gp.reach_length = p.at("length");
    gp.n_cells = cells(g);
    auto prof = integrate_backwater(gp);
    return wrap(gp.spec, std::move(prof), gp.discharge);
  };
}

CatalogEntry gvf_entry(const std::string& name, double slope, double depth, double length) {
  constexpr double n = 0.03, q = 1.0;
  const double hc = critical_height(q, kGravity);
  CatalogEntry e = steady_entry(
      "gvf/" + name, depth > hc ? "subcritical" : "supercritical",
      name + " backwater curve (" + (depth > hc ? "downstream" : "upstream") + " control)",
      {{"length", length, "reach length"},
       {"manning", n, "Manning coefficient"},
       {"discharge", q, "unit discharge"},
       {"slope", slope, "bed slope S0"},
       {"boundary_depth", depth, "control depth"}},
      gvf_generator());
  e.kind = CatalogKind::Gvf;
  return e;
}

// ---- dam breaks -----------------------------------------------------------

DamBreakSetup dam_setup(const Parameters& p, int n) {
  DamBreakSetup s;
  s.h_left = p.at("h_left");
  s.h_right = p.count("h_right") ? p.at("h_right") : 0.0;
  s.dam_position = p.at("dam_position");
  s.length = p.at("length");
  if (p.count("chezy")) s.friction = FrictionLaw::chezy(p.at("chezy"));
  s.n_cells = n;
  return s;
}

CatalogEntry dam_entry(const std::string& name, DamBreakKind kind, std::vector<ParameterSpec> params,
                       double t_ref, std::string regime,
                       std::optional<std::pair<double, double>> band = std::nullopt) {
  CatalogEntry e;
  e.id = "transient/dambreak/" + name;
  e.kind = CatalogKind::Transient;
  e.regime = std::move(regime);
  e.summary = name + " dam break";
  e.parameters = std::move(params);
  e.reference_time = [t_ref](const Parameters&) { return t_ref; };
  e.generate = [kind, t_ref](const Parameters& p, const GridRequest& g) {
    const auto setup = dam_setup(p, cells(g));
    Generated out;
    out.spec.length = setup.length;
    out.spec.friction = setup.friction;
    out.profile = dam_break_snapshot(setup, kind, g.time.value_or(t_ref));
    return out;
  };
  const std::string id = e.id;
  e.bench = [id, kind, t_ref, band](const Parameters& p) {
    BenchCase b;
    b.id = id;
    b.mode = BenchMode::Transient;
    const auto probe = dam_setup(p, 2);
    b.spec.length = probe.length;
    b.spec.friction = probe.friction;
    b.reference_time = t_ref;
    b.exact = [p, kind, t_ref](int n) { return dam_break_snapshot(dam_setup(p, n), kind, t_ref); };
    b.initial = [p, kind](int n) { return dam_break_snapshot(dam_setup(p, n), kind, 0.0); };
    b.order_band = band;
    return b;
  };
  return e;
}

// ---- Thacker --------------------------------------------------------------

ThackerSetup thacker_setup(const Parameters& p, ThackerVariant variant, int dims, int nx, int ny) {
  ThackerSetup s;
  s.a = p.at("a");
  s.h0 = p.at("h0");
  s.amplitude = p.count("r0") ? p.at("r0") : p.at("amplitude");
  s.variant = variant;
  s.dimensions = dims;
  s.length = p.at("length");
  s.nx = nx;
  s.ny = ny;
  return s;
}

CatalogEntry thacker_entry(const std::string& name, ThackerVariant variant, int dims,
                           std::vector<ParameterSpec> params) {
  CatalogEntry e;
  e.id = "transient/thacker/" + name;
  e.kind = CatalogKind::Transient;
  e.dimensions = dims;
  e.regime = "wet/dry oscillation";
  e.summary = std::string(variant == ThackerVariant::PlanarSurface ? "planar" : "curved") +
              " surface in a parabolic basin";
  e.parameters = std::move(params);
  e.reference_time = [variant, dims](const Parameters& p) {
    return thacker_setup(p, variant, dims, 1, 1).period();
  };
  e.generate = [variant, dims](const Parameters& p, const GridRequest& g) {
    const int nx = cells(g);
    const int ny = g.ny > 0 ? g.ny : nx;
    const auto setup = thacker_setup(p, variant, dims, nx, ny);
    const double t = g.time.value_or(setup.period());
    Generated out;
    out.spec.length = setup.length;
    if (dims == 2) {
      out.spec.width = setup.length;
      out.profile2d = thacker_snapshot_2d(setup, t);
    } else {
      out.profile = thacker_snapshot(setup, t);
    }
    return out;
  };
  if (dims == 1) {
    const std::string id = e.id;
    e.bench = [id, variant](const Parameters& p) {
      BenchCase b;
      b.id = id;
      b.mode = BenchMode::Transient;
      const auto probe = thacker_setup(p, variant, 1, 2, 1);
      b.spec.length = probe.length;
      b.reference_time = probe.period();
      b.left = BoundaryCondition::wall();
      b.right = BoundaryCondition::wall();
      b.exact = [p, variant](int n) {
        const auto s = thacker_setup(p, variant, 1, n, 1);
        return thacker_snapshot(s, s.period());
      };
      b.initial = [p, variant](int n) { return thacker_snapshot(thacker_setup(p, variant, 1, n, 1), 0.0); };
      return b;
    };
  }
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;

  c.push_back(lake_entry("steady/lake_at_rest", 0.5, "rest", "lake at rest over a parabolic bed"));
  c.push_back(lake_entry("steady/lake_at_rest/island", 1.5, "rest (wet/dry)",
                         "lake at rest with an emerged island"));

  c.push_back(steady_entry(
      "steady/uniform", "subcritical", "uniform flow at normal depth on a Manning channel",
      {{"length", 1000.0, "channel length"},
       {"manning", 0.03, "Manning coefficient"},
       {"discharge", 1.0, "unit discharge"},
       {"slope", 0.001, "bed slope S0"}},
      macdonald_generator(
          [](const Parameters& p) {
            const auto hn = normal_height<double>(FrictionLaw::manning(p.at("manning")),
                                                  p.at("discharge"), p.at("slope"));
            if (!hn) throw DomainError("uniform flow needs a positive slope");
            return DepthAnsatz::uniform(*hn);
          },
          RegimeLabel::Subcritical)));

  auto gp = gaussian_params(1.0);
  gp.push_back({"manning", 0.033, "Manning coefficient"});
  c.push_back(steady_entry("steady/macdonald/gaussian_manning", "subcritical",
                           "MacDonald: Gaussian depth bump, Manning friction", gp,
                           macdonald_generator(gaussian_ansatz, RegimeLabel::Subcritical),
                           std::pair{0.8, 1.2}));

  c.push_back(steady_entry("steady/macdonald/tanh_darcy", "subcritical",
                           "MacDonald: smooth depth drop, Darcy-Weisbach friction",
                           {{"length", 1000.0, "channel length"},
                            {"discharge", 2.0, "inflow unit discharge"},
                            {"h_up", 1.1, "upstream depth"},
                            {"h_down", 0.9, "downstream depth"},
                            {"center", 500.0, "transition centre"},
                            {"width", 100.0, "transition width"},
                            {"darcy", 0.065, "Darcy-Weisbach factor"}},
                           macdonald_generator(tanh_ansatz, RegimeLabel::Subcritical),
                           std::pair{0.8, 1.2}));

  c.push_back(steady_entry("steady/macdonald/linear_manning", "subcritical",
                           "MacDonald: linear depth, Manning friction",
                           {{"length", 1000.0, "channel length"},
                            {"discharge", 2.0, "inflow unit discharge"},
                            {"h_up", 0.9, "upstream depth"},
                            {"h_down", 1.1, "downstream depth"},
                            {"manning", 0.033, "Manning coefficient"}},
                           macdonald_generator(linear_ansatz, RegimeLabel::Subcritical)));

  auto vp = gaussian_params(1.0);
  vp.push_back({"manning", 0.033, "Manning coefficient"});
  vp.push_back({"viscosity", 0.5, "viscosity mu"});
  c.push_back(steady_entry("steady/macdonald/viscous", "subcritical",
                           "MacDonald: Gaussian depth bump with viscosity", vp,
                           macdonald_generator(gaussian_ansatz, RegimeLabel::Subcritical)));

  auto rp = gaussian_params(1.2);
  rp[1].value = 1.0;
  rp.push_back({"manning", 0.033, "Manning coefficient"});
  rp.push_back({"rain", 0.001, "rain rate R"});
  c.push_back(steady_entry("steady/macdonald/rain", "subcritical",
                           "MacDonald: rain-forced discharge q = R x + q0", rp,
                           macdonald_generator(gaussian_ansatz, RegimeLabel::Subcritical)));

  c.push_back(steady_entry("steady/macdonald/transcritical", "transcritical",
                           "MacDonald: smooth sub- to supercritical transition",
                           {{"length", 1000.0, "channel length"},
                            {"discharge", 2.0, "inflow unit discharge"},
                            {"h_up", 1.0, "upstream depth"},
                            {"h_down", 0.5, "downstream depth"},
                            {"center", 500.0, "transition centre"},
                            {"width", 100.0, "transition width"},
                            {"manning", 0.033, "Manning coefficient"}},
                           macdonald_generator(tanh_ansatz, RegimeLabel::Transcritical)));

  c.push_back(steady_entry("steady/bump/subcritical", "subcritical",
                           "frictionless subcritical flow over a Gaussian bump",
                           bump_params(4.42, 2.0), bump_generator(BumpRegime::Subcritical)));
  c.push_back(steady_entry("steady/bump/transcritical", "transcritical",
                           "frictionless transcritical flow over a Gaussian bump",
                           bump_params(1.53, std::nullopt),
                           bump_generator(BumpRegime::Transcritical)));
  c.push_back(steady_entry("steady/bump/transcritical_shock", "transcritical with shock",
                           "transcritical flow over a Gaussian bump with a hydraulic jump",
                           bump_params(0.18, 0.33),
                           bump_generator(BumpRegime::TranscriticalShock)));

  // GVF: Manning n = 0.03, q = 1 (h_c = 0.4672). Mild S0 = 0.001 (h_n = 0.9689),
  // steep S0 = 0.05 (h_n = 0.2995), critical S0 where h_n = h_c.
  const double hc = critical_height(1.0, kGravity);
  const double s_crit = 0.03 * 0.03 / std::pow(hc, 10.0 / 3.0);
  c.push_back(gvf_entry("M1", 0.001, 1.5, 1000.0));
  c.push_back(gvf_entry("M2", 0.001, 0.7, 1000.0));
  c.push_back(gvf_entry("M3", 0.001, 0.2, 10.0));
  c.push_back(gvf_entry("S1", 0.05, 1.0, 5.0));
  c.push_back(gvf_entry("S2", 0.05, 0.4, 100.0));
  c.push_back(gvf_entry("S3", 0.05, 0.15, 100.0));
  c.push_back(gvf_entry("C1", s_crit, 0.8, 10.0));
  c.push_back(gvf_entry("C2", s_crit, hc, 100.0));
  c.push_back(gvf_entry("C3", s_crit, 0.3, 5.0));
  c.push_back(gvf_entry("H2", 0.0, 0.8, 100.0));
  c.push_back(gvf_entry("H3", 0.0, 0.2, 10.0));
  c.push_back(gvf_entry("A2", -0.001, 0.8, 100.0));
  c.push_back(gvf_entry("A3", -0.001, 0.2, 10.0));

  c.push_back(dam_entry("ritter", DamBreakKind::Ritter,
                        {{"length", 10.0, "channel length"},
                         {"dam_position", 5.0, "dam position x0"},
                         {"h_left", 0.005, "upstream depth"}},
                        6.0, "wet/dry front"));
  c.push_back(dam_entry("stoker", DamBreakKind::Stoker,
                        {{"length", 10.0, "channel length"},
                         {"dam_position", 5.0, "dam position x0"},
                         {"h_left", 0.005, "upstream depth"},
                         {"h_right", 0.001, "downstream depth"}},
                        6.0, "moving shock", std::pair{0.5, 1.0}));
  c.push_back(dam_entry("dressler", DamBreakKind::Dressler,
                        {{"length", 2000.0, "channel length"},
                         {"dam_position", 1000.0, "dam position x0"},
                         {"h_left", 6.0, "upstream depth"},
                         {"chezy", 40.0, "Chezy coefficient"}},
                        40.0, "wet/dry front with friction"));

  c.push_back(thacker_entry("1d_planar", ThackerVariant::PlanarSurface, 1,
                            {{"length", 4.0, "domain length"},
                             {"a", 1.0, "basin half-width"},
                             {"h0", 0.5, "depth at the basin centre"},
                             {"amplitude", 0.5, "orbit amplitude B"}}));
  c.push_back(thacker_entry("2d_planar", ThackerVariant::PlanarSurface, 2,
                            {{"length", 4.0, "domain side"},
                             {"a", 1.0, "basin radius"},
                             {"h0", 0.1, "depth at the basin centre"},
                             {"amplitude", 0.5, "orbit radius"}}));
  c.push_back(thacker_entry("2d_curved", ThackerVariant::CurvedSurface, 2,
                            {{"length", 4.0, "domain side"},
                             {"a", 1.0, "basin radius"},
                             {"h0", 0.1, "depth at the basin centre"},
                             {"r0", 0.8, "reference radius r0"}}));
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_entry(std::string_view id) {
  const auto& c = catalog();
  const auto it = std::find_if(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.id == id; });
  return it == c.end() ? nullptr : &*it;
}

}  // namespace swref
