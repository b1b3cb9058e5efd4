#pragma once

// Registry of every analytic solution exposed by the CLI, keyed by stable
// hierarchical ids ("steady/bump/transcritical", "gvf/M1", ...).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swref/core.hpp"
#include "swref/harness.hpp"
#include "swref/profile.hpp"

namespace swref {

using Parameters = std::map<std::string, double>;

struct ParameterSpec {
  std::string name;
  double value;
  std::string help;
};

enum class CatalogKind { Steady, Gvf, Transient };

std::string_view to_string(CatalogKind kind);

struct GridRequest {
  int nx = 64;
  int ny = 0;  // 2D only; 0 means "same as nx"
  std::optional<double> time;
};

struct Generated {
  ChannelSpec spec;
  std::optional<SolutionProfile> profile;
  std::optional<SolutionProfile2D> profile2d;
  /// q at x = 0 for steady solutions.
  double inflow_discharge = 0.0;
};

struct CatalogEntry {
  std::string id;
  CatalogKind kind = CatalogKind::Steady;
  int dimensions = 1;
  std::string regime;
  std::string summary;
  std::vector<ParameterSpec> parameters;
  /// Reference time of transient cases (depends on the parameters).
  std::function<double(const Parameters&)> reference_time;
  std::function<Generated(const Parameters&, const GridRequest&)> generate;
  /// Empty for entries the 1D harness cannot run (2D cases).
  std::function<BenchCase(const Parameters&)> bench;

  Parameters defaults() const;
  /// Defaults overridden by `overrides`; unknown keys throw DomainError.
  Parameters resolve(const std::vector<std::pair<std::string, double>>& overrides) const;
};

const std::vector<CatalogEntry>& catalog();
/// nullptr when the id is unknown.
const CatalogEntry* find_entry(std::string_view id);

}  // namespace swref
