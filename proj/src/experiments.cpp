#include "tatrev/experiments.hpp"

#include "tatrev/phantom.hpp"
#include "tatrev/spectral.hpp"

namespace tatrev {

SynthesizedData synthesize_for(const RunConfig& cfg, const Grid2D& grid, const BoundarySpec& bspec) {
  ScalarField f = render_phantom(cfg.phantom_bumps(), grid);
  BoundaryTrace clean = synthesize_data(f, bspec, cfg.T, grid.dt);
  BoundaryTrace noisy = add_noise(clean, cfg.noise, cfg.seed);
  double ratio = 0;
  if (cfg.noise > 0) {
    ratio = std::sqrt((noisy.samples() - clean.samples()).square().sum()) / clean.norm();
  }
  return {std::move(f), std::move(clean), std::move(noisy), ratio};
}

ReconConfig recon_config_for(const RunConfig& cfg, const Grid2D& grid, const BoundarySpec& bspec) {
  return ReconConfig{cfg.T, cfg.iterations, cfg.subspace, ScalarField::constant(grid, 1.0), bspec, true};
}

ExperimentResult run_experiment(const RunConfig& cfg) {
  const Grid2D grid = cfg.grid();
  const BoundarySpec bspec = cfg.boundary(grid);
  SynthesizedData d = synthesize_for(cfg, grid, bspec);
  const ReconConfig rc = recon_config_for(cfg, grid, bspec);
  ReconReport report =
      cfg.reference ? neumann_iterate(d.noisy, rc, d.phantom) : neumann_iterate(d.noisy, rc);
  return {grid, std::move(d.phantom), std::move(d.clean), std::move(d.noisy), d.noise_ratio, std::move(report)};
}

std::vector<std::string> demo_names() {
  return {"fig1-full", "fig1-partial", "fig2-noise", "fig3-iter-full", "fig4-iter-partial"};
}

std::vector<DemoRun> demo_runs(const std::string& name) {
  RunConfig base;
  base.T = 5.0;
  base.iterations = 1;
  if (name == "fig1-full") return {{"full data, T=5", base}};
  if (name == "fig1-partial") {
    base.gamma = "left_bottom";
    return {{"left+bottom data, T=5", base}};
  }
  if (name == "fig2-noise") {
    base.noise = 0.5;
    base.seed = 7;
    RunConfig partial = base;
    partial.gamma = "left_bottom";
    return {{"full data, T=5, 50% noise", base}, {"left+bottom data, T=5, 50% noise", partial}};
  }
  if (name == "fig3-iter-full") {
    base.T = 1.6;
    base.dt_snap = true;
    base.iterations = 5;
    return {{"full data, T=1.6, 5 iterations", base}};
  }
  if (name == "fig4-iter-partial") {
    base.T = 3.0;
    base.dt_snap = true;
    base.gamma = "left_bottom";
    base.iterations = 5;
    return {{"left+bottom data, T=3, 5 iterations", base}};
  }
  std::string valid;
  for (const auto& n : demo_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown demo '" + name + "'; valid names: " + valid);
}

std::vector<std::pair<double, double>> central_cross_section(const ScalarField& f) {
  const int mid = f.n() / 2;
  std::vector<std::pair<double, double>> out;
  out.reserve(f.n());
  for (int k = 0; k < f.n(); ++k) out.emplace_back(f.grid().coord(k), f(k, mid));
  return out;
}

}  // namespace tatrev
