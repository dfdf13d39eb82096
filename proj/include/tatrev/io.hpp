#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tatrev/boundary.hpp"
#include "tatrev/core.hpp"
#include "tatrev/grid.hpp"
#include "tatrev/phantom.hpp"

namespace tatrev {

// ---------------------------------------------------------------------------
// Fields

/// Plain-text CSV, one line per x index k holding values(k, 0..n-1), after a
/// "# tatrev-field v1 n=<n>" header. Shortest round-trip decimals, so a
/// reload is bit-identical.
void write_field_csv(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field_csv(const std::filesystem::path& path);
ScalarField read_field_csv(const std::filesystem::path& path, const Grid2D& grid);

/// 16-bit binary graymap (P5). Values are mapped affinely from [min, max]
/// onto [0, 65535]; the range is kept in a "# range <min> <max>" comment so
/// read_field_pgm can undo the mapping up to quantisation. Image rows run
/// from y = +1 (top) to y = -1, columns from x = -1 to x = +1.
void write_field_pgm(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field_pgm(const std::filesystem::path& path);

/// Dispatch on extension: ".csv" or ".pgm".
void write_field(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Traces

/// CSV with header row "t,node_0,...,node_{4n-5}" (canonical boundary
/// order), one row per time level, preceded by a version comment line.
void write_trace_csv(const std::filesystem::path& path, const BoundaryTrace& g);
/// Columns must match bspec's grid; dt is taken from the t column (the
/// grid's dt when fewer than two rows). Samples outside Γ are zeroed.
BoundaryTrace read_trace_csv(const std::filesystem::path& path, const BoundarySpec& bspec);

// ---------------------------------------------------------------------------
// Run configuration

struct RunConfig {
  int n = 257;
  double dt_factor = 0.5;
  bool dt_snap = false;
  double T = 5.0;
  std::string gamma = "full";  // full | left_bottom | explicit index list
  double lambda = 1.0;
  double lambda_taper = 0.0;
  std::string phantom = "paper-six";  // paper-six | custom
  std::vector<BumpSpec> bumps;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int iterations = 1;
  Subspace subspace = Subspace::H1;
  bool reference = true;
  std::string out = ".";
  std::string trace;

  /// Grid with dt = dt_factor·dx, reduced to divide T when dt_snap is set.
  Grid2D grid() const;
  BoundarySpec boundary(const Grid2D& grid) const;
  std::vector<BumpSpec> phantom_bumps() const;
};

/// Set one key from its text value. Unknown keys, malformed values and
/// out-of-range values raise ConfigError naming the key. `bump` appends.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// `key = value` lines; `#` starts a comment. Every key may be omitted.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace tatrev
