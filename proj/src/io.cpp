#include "swref/io.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

namespace swref {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

void header_lines(std::string& out, const FileHeader& h, double time,
                  const std::map<std::string, double>& metadata,
                  const std::vector<std::string>& columns) {
  out += "# id: " + h.id + "\n";
  out += "# cells: " + std::to_string(h.nx);
  if (h.ny > 0) out += " " + std::to_string(h.ny);
  out += "\n# time: " + format_double(time) + "\n";
  for (const auto& [k, v] : h.parameters) out += "# parameter " + k + ": " + format_double(v) + "\n";
  for (const auto& [k, v] : metadata) out += "# metadata " + k + ": " + format_double(v) + "\n";
  out += "# columns:";
  for (const auto& c : columns) out += " " + c;
  out += "\n";
}

void row(std::string& out, std::initializer_list<double> values, char sep) {
  bool first = true;
  for (double v : values) {
    if (!first) out += sep;
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

void csv_header(std::string& out, const std::vector<std::string>& columns) {
  for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
  out += '\n';
}

}  // namespace

std::string render(const SolutionProfile& p, const FileHeader& header, OutputFormat format,
                   double gravity) {
  std::string out;
  const char sep = format == OutputFormat::Csv ? ',' : ' ';
  if (format == OutputFormat::Gnuplot)
    header_lines(out, header, p.time, p.metadata, kColumns1D);
  else
    csv_header(out, kColumns1D);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double fr = froude<double>(p.h[i], p.u[i], gravity).value_or(0.0);
    row(out, {p.x[i], p.h[i], p.u[i], p.z[i], p.q[i], p.h[i] + p.z[i], fr}, sep);
  }
  return out;
}

std::string render(const SolutionProfile2D& p, const FileHeader& header, OutputFormat format) {
  std::string out;
  const char sep = format == OutputFormat::Csv ? ',' : ' ';
  if (format == OutputFormat::Gnuplot)
    header_lines(out, header, p.time, p.metadata, kColumns2D);
  else
    csv_header(out, kColumns2D);
  for (Eigen::Index j = 0; j < p.ny(); ++j) {
    if (j > 0 && format == OutputFormat::Gnuplot) out += '\n';
    for (Eigen::Index i = 0; i < p.nx(); ++i)
      row(out, {p.x[i], p.y[j], p.h(i, j), p.u(i, j), p.v(i, j), p.z(i, j)}, sep);
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, bool csv) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k <= line.size()) {
    if (csv) {
      const auto end = line.find(',', k);
      out.push_back(line.substr(k, end == std::string_view::npos ? std::string_view::npos : end - k));
      if (end == std::string_view::npos) break;
      k = end + 1;
    } else {
      while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
      if (k >= line.size()) break;
      auto end = k;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      out.push_back(line.substr(k, end - k));
      k = end;
    }
  }
  return out;
}

double parse_number(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw IoError("malformed number '" + std::string(token) + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

DataTable parse_table(std::string_view text) {
  DataTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool csv = false;
  bool first_data = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.remove_prefix(1);
      t.comments.emplace_back(c);
      if (c.starts_with("columns:")) {
        t.columns.clear();
        for (auto tok : split(c.substr(8), false)) t.columns.emplace_back(tok);
      }
      continue;
    }
    if (first_data) {
      first_data = false;
      csv = line.find(',') != std::string_view::npos;
      const char lead = line.front();
      if (csv && !(std::isdigit(static_cast<unsigned char>(lead)) || lead == '-' || lead == '.')) {
        t.columns.clear();
        for (auto tok : split(line, true)) t.columns.emplace_back(tok);
        continue;
      }
    }
    std::vector<double> values;
    for (auto tok : split(line, csv)) values.push_back(parse_number(tok, line_no));
    if (!t.columns.empty() && values.size() != t.columns.size())
      throw IoError("row on line " + std::to_string(line_no) + " has the wrong number of columns");
    t.rows.push_back(std::move(values));
  }
  return t;
}

SolutionProfile profile_from_table(const DataTable& table) {
  auto col = [&](const std::string& name) -> std::size_t {
    for (std::size_t k = 0; k < table.columns.size(); ++k)
      if (table.columns[k] == name) return k;
    throw IoError("table has no column '" + name + "'");
  };
  const auto cx = col("x"), ch = col("h"), cu = col("u"), cz = col("z"), cq = col("q");
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  if (n == 0) throw IoError("table has no data rows");
  SolutionProfile p;
  p.x.resize(n);
  p.h.resize(n);
  p.u.resize(n);
  p.z.resize(n);
  p.q.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = table.rows[static_cast<std::size_t>(i)];
    p.x[i] = r[cx];
    p.h[i] = r[ch];
    p.u[i] = r[cu];
    p.z[i] = r[cz];
    p.q[i] = r[cq];
  }
  p.dx = n > 1 ? (p.x[n - 1] - p.x[0]) / static_cast<double>(n - 1) : 0.0;
  p.x_begin = p.x[0] - 0.5 * p.dx;
  for (const auto& c : table.comments) {
    if (c.starts_with("time: ")) p.time = parse_number(std::string_view(c).substr(6), 0);
    if (c.starts_with("metadata ")) {
      const auto colon = c.find(": ");
      if (colon != std::string::npos)
        p.metadata[c.substr(9, colon - 9)] = parse_number(std::string_view(c).substr(colon + 2), 0);
    }
  }
  return p;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::random_device rd;
  const auto tmp = fs::path(path.string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json boundary_json(const BoundaryCondition& bc) {
  nlohmann::json j{{"kind", to_string(bc.kind)}};
  if (bc.discharge) j["discharge"] = *bc.discharge;
  if (bc.depth) j["depth"] = *bc.depth;
  return j;
}

nlohmann::json norms_json(const NormTriple& n) {
  return {{"l1", number_or_null(n.l1)}, {"l2", number_or_null(n.l2)}, {"linf", number_or_null(n.linf)}};
}

}  // namespace

nlohmann::json report_to_json(const BenchmarkReport& r, const Parameters& parameters,
                              bool timestamp) {
  using nlohmann::json;
  json j;
  j["schema"] = "swref-bench-report/1";
  j["case"] = {{"id", r.case_id},
               {"mode", to_string(r.mode)},
               {"reference_time", r.reference_time},
               {"parameters", parameters}};
  j["spec"] = {{"gravity", r.spec.gravity},
               {"length", r.spec.length},
               {"width", r.spec.width},
               {"friction", {{"family", to_string(r.spec.friction.family)},
                             {"coefficient", r.spec.friction.coefficient}}},
               {"rain_rate", r.spec.rain_rate},
               {"viscosity", r.spec.viscosity},
               {"dry_tolerance", r.spec.dry_tolerance}};
  j["scheme"] = {{"flux", "rusanov"},
                 {"topography", to_string(r.scheme.topography)},
                 {"friction", "semi-implicit"},
                 {"cfl", r.scheme.cfl},
                 {"left", boundary_json(r.scheme.left)},
                 {"right", boundary_json(r.scheme.right)}};
  json grids = json::array();
  for (const auto& g : r.grids) {
    json e{{"cells", g.cells}, {"status", g.error ? "error" : "ok"}};
    if (g.error) e["error"] = *g.error;
    if (g.norms) e["errors"] = {{"h", norms_json(g.norms->h)}, {"q", norms_json(g.norms->q)}};
    e["steps"] = g.stats.steps;
    e["reached_steady"] = g.stats.reached_steady;
    e["final_update_norm"] = number_or_null(g.stats.update_norm);
    e["min_depth"] = number_or_null(g.stats.min_depth);
    e["mass_initial"] = number_or_null(g.stats.mass_initial);
    e["mass_final"] = number_or_null(g.stats.mass_final);
    if (timestamp) e["wall_seconds"] = g.wall_seconds;
    grids.push_back(e);
  }
  j["grids"] = grids;
  json orders = json::object();
  for (const auto& [name, list] : r.orders) {
    json arr = json::array();
    std::size_t k = 0;
    std::vector<int> ok_cells;
    for (const auto& g : r.grids)
      if (!g.error) ok_cells.push_back(g.cells);
    for (const auto& o : list) {
      json e{{"from", ok_cells[k]}, {"to", ok_cells[k + 1]}};
      if (o.exact)
        e["exact"] = true;
      else
        e["order"] = number_or_null(*o.order);
      arr.push_back(e);
      ++k;
    }
    orders[name] = arr;
  }
  j["orders"] = orders;
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  j["verdicts"] = verdicts;
  j["passed"] = r.passed();
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    j["generated_at"] = buf;
  }
  return j;
}

}  // namespace swref
