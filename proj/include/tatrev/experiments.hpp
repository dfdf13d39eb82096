#pragma once

#include <string>
#include <vector>

#include "tatrev/io.hpp"
#include "tatrev/recon.hpp"

namespace tatrev {

/// End-to-end run: phantom -> series-solver data -> optional noise ->
/// time reversal / Neumann iteration.
struct ExperimentResult {
  Grid2D grid;
  ScalarField phantom;
  BoundaryTrace clean_data;
  BoundaryTrace data;
  double noise_ratio = 0;
  ReconReport report;
};

/// Data g for the configured phantom, noise included.
struct SynthesizedData {
  ScalarField phantom;
  BoundaryTrace clean;
  BoundaryTrace noisy;
  double noise_ratio = 0;
};
SynthesizedData synthesize_for(const RunConfig& cfg, const Grid2D& grid, const BoundarySpec& bspec);

ReconConfig recon_config_for(const RunConfig& cfg, const Grid2D& grid, const BoundarySpec& bspec);

ExperimentResult run_experiment(const RunConfig& cfg);

struct DemoRun {
  std::string label;
  RunConfig config;
};

/// Canned experiment names accepted by demo_runs.
std::vector<std::string> demo_names();
/// Configurations making up one demo; throws ConfigError for unknown names.
std::vector<DemoRun> demo_runs(const std::string& name);

/// (x, value) samples along the central horizontal line y ≈ 0.
std::vector<std::pair<double, double>> central_cross_section(const ScalarField& f);

}  // namespace tatrev
