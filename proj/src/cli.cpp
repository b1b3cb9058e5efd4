#include "swref/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "swref/catalog.hpp"
#include "swref/harness.hpp"
#include "swref/io.hpp"

namespace swref {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<std::string, double>> parse_params(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects key=value, got '" + s + "'");
    const std::string value = s.substr(eq + 1);
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
      throw UsageError("--param " + s.substr(0, eq) + ": '" + value + "' is not a number");
    out.emplace_back(s.substr(0, eq), v);
  }
  return out;
}

const CatalogEntry& lookup(const std::string& id) {
  const auto* e = find_entry(id);
  if (!e) throw UsageError("unknown solution id '" + id + "' (see `swref list`)");
  return *e;
}

std::string parameter_summary(const CatalogEntry& e) {
  std::string s;
  for (const auto& p : e.parameters) s += (s.empty() ? "" : ",") + p.name + "=" + format_double(p.value);
  return s;
}

void cmd_list(const std::string& filter, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& e : catalog()) width = std::max(width, e.id.size());
  for (const auto& e : catalog()) {
    if (!filter.empty() && e.id.find(filter) == std::string::npos) continue;
    out << std::left << std::setw(static_cast<int>(width) + 2) << e.id << e.dimensions << "D  "
        << e.regime << "  [" << parameter_summary(e) << "]";
    if (e.reference_time) out << "  t_ref=" << format_double(e.reference_time(e.defaults()));
    out << '\n';
  }
}

struct GenerateArgs {
  std::string id;
  int cells = 0;
  int cells_y = 0;
  std::optional<double> time;
  std::vector<std::string> params;
  std::string format = "gnuplot";
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  const auto& entry = lookup(a.id);
  if (a.cells < 1) throw UsageError("--cells must be positive");
  if (a.cells_y != 0 && entry.dimensions != 2) throw UsageError("--cells-y applies to 2D solutions only");
  if (a.cells_y < 0) throw UsageError("--cells-y must be positive");
  if (a.time && entry.kind != CatalogKind::Transient)
    throw UsageError("--time applies to transient solutions only");
  const auto format = a.format == "csv" ? OutputFormat::Csv : OutputFormat::Gnuplot;
  const auto params = entry.resolve(parse_params(a.params));
  const auto gen = entry.generate(params, {a.cells, a.cells_y, a.time});
  FileHeader header{entry.id, a.cells, 0, 0.0, params};
  std::string text;
  if (gen.profile2d) {
    header.ny = static_cast<int>(gen.profile2d->ny());
    text = render(*gen.profile2d, header, format);
  } else {
    text = render(*gen.profile, header, format, gen.spec.gravity);
  }
  atomic_write(a.out, text);
}

struct BenchArgs {
  std::string id;
  std::vector<int> cells;
  std::string scheme = "hydrostatic";
  double cfl = 0.5;
  std::vector<std::string> params;
  std::string report;
  bool no_timestamp = false;
};

SchemeConfig scheme_from(const std::string& name, double cfl) {
  const auto topo = parse_topography(name);
  if (!topo) throw UsageError("unknown scheme '" + name + "' (hydrostatic or naive)");
  SchemeConfig s;
  s.topography = *topo;
  s.cfl = cfl;
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("--cfl must lie in (0, 1]");
  return s;
}

void check_grids(const std::vector<int>& cells) {
  if (cells.empty()) throw UsageError("--cells needs at least one grid size");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k] < 2) throw UsageError("grid sizes must be at least 2");
    if (k > 0 && cells[k] <= cells[k - 1]) throw UsageError("grid sizes must increase");
  }
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const auto& entry = lookup(a.id);
  check_grids(a.cells);
  const auto scheme = scheme_from(a.scheme, a.cfl);
  if (!entry.bench) throw UsageError("'" + a.id + "' has no 1D solver benchmark");
  const auto params = entry.resolve(parse_params(a.params));
  const auto report = bench_case(entry.bench(params), a.cells, scheme);
  atomic_write(a.report, report_to_json(report, params, !a.no_timestamp).dump(2) + "\n");
  for (const auto& v : report.verdicts)
    out << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
  return report.passed() ? kExitOk : kExitBenchFail;
}

struct ConvergeArgs {
  std::string id;
  std::vector<int> cells;
  std::string scheme = "hydrostatic";
  double cfl = 0.5;
  std::vector<std::string> params;
  std::string out;
};

int cmd_converge(const ConvergeArgs& a, std::ostream& out) {
  const auto& entry = lookup(a.id);
  check_grids(a.cells);
  if (a.cells.size() < 2) throw UsageError("converge needs at least two grid sizes");
  const auto params = entry.resolve(parse_params(a.params));

  std::vector<std::pair<int, double>> errors;
  std::string failure;
  if (a.scheme == "exact") {
    // The generator compared with an independent regeneration of itself.
    for (int n : a.cells) {
      const auto first = entry.generate(params, {n, 0, std::nullopt});
      const auto second = entry.generate(params, {n, 0, std::nullopt});
      double e = 0.0;
      if (first.profile2d)
        e = (first.profile2d->h - second.profile2d->h).abs().mean();
      else
        e = error_norms(*first.profile, *second.profile).h.l1;
      errors.emplace_back(n, e);
    }
  } else {
    const auto scheme = scheme_from(a.scheme, a.cfl);
    if (!entry.bench) throw UsageError("'" + a.id + "' has no 1D solver benchmark");
    const auto report = bench_case(entry.bench(params), a.cells, scheme);
    for (const auto& g : report.grids) {
      if (g.error) {
        failure += "N=" + std::to_string(g.cells) + ": " + *g.error + "\n";
        continue;
      }
      errors.emplace_back(g.cells, g.norms->h.l1);
    }
  }

  std::ostringstream table;
  table << "# solution: " << entry.id << "\n# scheme: " << a.scheme << '\n';
  table << std::right << std::setw(8) << "N" << std::setw(26) << "L1(h)" << std::setw(10) << "order" << '\n';
  const auto orders = errors.size() >= 2 ? convergence_order(errors) : std::vector<ConvergenceOrder>{};
  for (std::size_t k = 0; k < errors.size(); ++k) {
    table << std::setw(8) << errors[k].first << std::setw(26) << format_double(errors[k].second);
    if (k == 0) {
      table << std::setw(10) << "-";
    } else if (orders[k - 1].exact) {
      table << std::setw(10) << "exact";
    } else {
      std::ostringstream o;
      o << std::fixed << std::setprecision(3) << *orders[k - 1].order;
      table << std::setw(10) << o.str();
    }
    table << '\n';
  }
  out << table.str();
  if (!a.out.empty()) atomic_write(a.out, table.str());
  if (!failure.empty()) {
    out << "failed grids:\n" << failure;
    return kExitBenchFail;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytic shallow-water solutions and solver benchmarks", "swref"};
  app.require_subcommand(1);

  std::string filter;
  auto* list = app.add_subcommand("list", "List catalog entries");
  list->add_option("--filter", filter, "Substring filter on ids");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a discretized solution");
  generate->add_option("--solution", gen.id, "Catalog id")->required();
  generate->add_option("--cells", gen.cells, "Number of cells (x)")->required();
  generate->add_option("--cells-y", gen.cells_y, "Number of cells in y (2D)");
  generate->add_option("--time", gen.time, "Evaluation time (transients)");
  generate->add_option("--param", gen.params, "Parameter override key=value")->take_all();
  generate->add_option("--format", gen.format, "gnuplot or csv")
      ->check(CLI::IsMember({"gnuplot", "csv"}));
  generate->add_option("--out", gen.out, "Output path")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark the reference solver");
  bench_cmd->add_option("--solution", bench.id, "Catalog id")->required();
  bench_cmd->add_option("--cells", bench.cells, "Grid sizes, comma separated")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--scheme", bench.scheme, "hydrostatic or naive");
  bench_cmd->add_option("--cfl", bench.cfl, "Courant number in (0, 1]");
  bench_cmd->add_option("--param", bench.params, "Parameter override key=value")->take_all();
  bench_cmd->add_option("--report", bench.report, "Report path (JSON)")->required();
  bench_cmd->add_flag("--no-timestamp", bench.no_timestamp, "Omit timestamps and timings");

  ConvergeArgs conv;
  auto* converge = app.add_subcommand("converge", "Print a convergence table");
  converge->add_option("--solution", conv.id, "Catalog id")->required();
  converge->add_option("--cells", conv.cells, "Grid sizes, comma separated")
      ->required()
      ->delimiter(',');
  converge->add_option("--scheme", conv.scheme, "hydrostatic, naive or exact");
  converge->add_option("--cfl", conv.cfl, "Courant number in (0, 1]");
  converge->add_option("--param", conv.params, "Parameter override key=value")->take_all();
  converge->add_option("--out", conv.out, "Also write the table to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "swref: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (list->parsed()) {
      cmd_list(filter, out);
      return kExitOk;
    }
    if (generate->parsed()) {
      cmd_generate(gen);
      return kExitOk;
    }
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
    if (converge->parsed()) return cmd_converge(conv, out);
  } catch (const IoError& e) {
    err << "swref: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "swref: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "swref: invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace swref
