#pragma once

#include <cstdint>
#include <vector>

#include "tatrev/boundary.hpp"
#include "tatrev/grid.hpp"

namespace tatrev {

/// A radial bump a·(1 − (r/R)²)² supported on the disk |x − center| ≤ R.
struct BumpSpec {
  double cx = 0;
  double cy = 0;
  double radius = 0.2;
  double amplitude = 1.0;
};

/// C¹ compactly supported kernel: value and slope vanish at r = R.
template <typename Scalar>
Scalar radial_bump(Scalar r, Scalar radius, Scalar amplitude) {
  if (r >= radius) return Scalar(0);
  const Scalar s = Scalar(1) - (r / radius) * (r / radius);
  return amplitude * s * s;
}

/// Throws ConfigError naming the offending bump when its support leaves
/// the open square.
void validate_bumps(const std::vector<BumpSpec>& specs);

ScalarField render_phantom(const std::vector<BumpSpec>& specs, const Grid2D& grid);

/// Six well-separated inclusions ("paper-six").
std::vector<BumpSpec> six_inclusion_phantom();

/// Adds seeded Gaussian white noise on Γ, rescaled so that
/// ‖noise‖₂ / ‖g‖₂ equals `level` exactly.
BoundaryTrace add_noise(const BoundaryTrace& g, double level, std::uint64_t seed);

/// Smallest, over all inclusions, fraction of the inclusion's half-max
/// region (of the clean phantom) where the reconstruction also exceeds
/// half of the phantom maximum.
double inclusion_recovery(const ScalarField& reconstruction, const std::vector<BumpSpec>& specs);

}  // namespace tatrev
