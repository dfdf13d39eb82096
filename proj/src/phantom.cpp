#include "tatrev/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tatrev {

void validate_bumps(const std::vector<BumpSpec>& specs) {
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& b = specs[i];
    if (!(b.radius > 0) || !std::isfinite(b.radius)) {
      throw ConfigError("bump " + std::to_string(i) + ": radius must be positive");
    }
    if (!std::isfinite(b.amplitude) || !std::isfinite(b.cx) || !std::isfinite(b.cy)) {
      throw ConfigError("bump " + std::to_string(i) + ": non-finite parameter");
    }
    if (std::max(std::abs(b.cx), std::abs(b.cy)) + b.radius >= 1.0) {
      throw ConfigError("bump " + std::to_string(i) + ": support leaves the domain");
    }
  }
}

ScalarField render_phantom(const std::vector<BumpSpec>& specs, const Grid2D& grid) {
  validate_bumps(specs);
  return ScalarField::from_function(grid, [&](double x, double y) {
    double sum = 0;
    for (const auto& b : specs) sum += radial_bump(std::hypot(x - b.cx, y - b.cy), b.radius, b.amplitude);
    return sum;
  });
}

std::vector<BumpSpec> six_inclusion_phantom() {
  return {
      {-0.45, 0.35, 0.22, 1.0},  {0.1, 0.5, 0.22, 0.8},    {0.5, 0.3, 0.22, 0.9},
      {-0.4, -0.25, 0.22, 0.85}, {0.05, -0.4, 0.22, 1.0},  {0.45, -0.35, 0.22, 0.75},
  };
}

BoundaryTrace add_noise(const BoundaryTrace& g, double level, std::uint64_t seed) {
  if (!(level >= 0) || !std::isfinite(level)) throw ConfigError("noise level must be non-negative");
  if (level == 0) return g;
  const double signal = g.norm();
  if (signal == 0) throw ConfigError("cannot scale noise relative to an all-zero trace");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  TraceArray noise = TraceArray::Zero(g.samples().rows(), g.samples().cols());
  for (Eigen::Index j = 0; j < noise.rows(); ++j)
    for (Eigen::Index b = 0; b < noise.cols(); ++b)
      if (g.gamma()(b)) noise(j, b) = normal(rng);

  const double drawn = std::sqrt(noise.square().sum());
  noise *= level * signal / drawn;
  return BoundaryTrace(g.grid(), g.gamma(), g.samples() + noise);
}

double inclusion_recovery(const ScalarField& reconstruction, const std::vector<BumpSpec>& specs) {
  const ScalarField clean = render_phantom(specs, reconstruction.grid());
  const double threshold = 0.5 * clean.values().maxCoeff();
  const Grid2D& grid = reconstruction.grid();
  double worst = 1.0;
  for (const auto& b : specs) {
    int inside = 0;
    int hit = 0;
    for (int k = 0; k < grid.n; ++k) {
      for (int l = 0; l < grid.n; ++l) {
        if (std::hypot(grid.coord(k) - b.cx, grid.coord(l) - b.cy) >= b.radius) continue;
        if (clean(k, l) <= threshold) continue;
        ++inside;
        if (reconstruction(k, l) > threshold) ++hit;
      }
    }
    if (inside > 0) worst = std::min(worst, double(hit) / inside);
  }
  return worst;
}

}  // namespace tatrev
