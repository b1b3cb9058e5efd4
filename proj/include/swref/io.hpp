#pragma once

// Output formats: gnuplot-compatible ASCII and CSV for solution profiles, a
// JSON benchmark report, and atomic file writes.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swref/catalog.hpp"
#include "swref/harness.hpp"
#include "swref/profile.hpp"

namespace swref {

enum class OutputFormat { Gnuplot, Csv };

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Metadata written to the `#` header of gnuplot files.
struct FileHeader {
  std::string id;
  int nx = 0;
  int ny = 0;
  double time = 0.0;
  Parameters parameters;
};

inline const std::vector<std::string> kColumns1D{"x", "h", "u", "z", "q", "h+z", "Fr"};
inline const std::vector<std::string> kColumns2D{"x", "y", "h", "u", "v", "z"};

std::string render(const SolutionProfile& profile, const FileHeader& header, OutputFormat format,
                   double gravity = kGravity);
std::string render(const SolutionProfile2D& profile, const FileHeader& header,
                   OutputFormat format);

/// Parsed data file: `#` lines (without the marker) and numeric rows.
struct DataTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Reads either format; throws IoError on malformed numbers.
DataTable parse_table(std::string_view text);

/// Rebuilds a 1D profile (x, h, u, z, q) from a parsed gnuplot or CSV table.
SolutionProfile profile_from_table(const DataTable& table);

/// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

nlohmann::json report_to_json(const BenchmarkReport& report, const Parameters& parameters,
                              bool timestamp);

}  // namespace swref
