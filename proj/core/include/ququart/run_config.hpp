#ifndef QUQUART_RUN_CONFIG_HPP
#define QUQUART_RUN_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "ququart/spdc.hpp"
#include "ququart/visibility.hpp"

namespace ququart {

/// Everything a run needs, loaded from a flat key = value config file with
/// section prefixes (source.*, filter.*, compensator.*, grid.*). The file is
/// the reproducibility artifact: identical file => identical outputs.
struct RunConfig {
  SourceConfig source;
  std::optional<FilterSpec> filter;
  std::optional<CompensatorSpec> compensator;
  bool compensator_auto_thickness = false;  // compensator.thickness_mm = auto
  std::optional<int> grid_points;           // grid.points override
  std::optional<double> grid_zeros;         // grid.zeros override

  /// Parse from text. Unknown keys, bad values and unresolvable material
  /// names throw ConfigError with "origin:line:" diagnostics.
  static RunConfig parse(std::string_view text, const std::string& origin,
                         const MaterialDatabase& db);
  static RunConfig load(const std::filesystem::path& path,
                        const MaterialDatabase& db);

  /// Canonical key = value rendering (round-trips through parse).
  std::string serialize() const;

  /// Compensator with auto thickness resolved against the source.
  std::optional<CompensatorSpec> resolved_compensator() const;

  /// GridSpec for a phase model with the file's overrides applied.
  GridSpec grid_for(PhaseModel model) const;
};

}  // namespace ququart

#endif
