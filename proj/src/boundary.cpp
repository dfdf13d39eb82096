#include "tatrev/boundary.hpp"

#include <limits>
#include <numbers>

namespace tatrev {

std::pair<int, int> boundary_node(int n, int b) {
  const int count = 4 * n - 4;
  if (b < 0 || b >= count) throw DimensionError("boundary index " + std::to_string(b) + " out of range");
  if (b <= n - 1) return {b, 0};
  if (b <= 2 * n - 2) return {n - 1, b - (n - 1)};
  if (b <= 3 * n - 3) return {3 * n - 3 - b, n - 1};
  return {0, 4 * n - 4 - b};
}

std::vector<int> side_indices(int n, Side side) {
  const int count = 4 * n - 4;
  std::vector<int> idx(n);
  for (int p = 0; p < n; ++p) {
    switch (side) {
      case Side::Bottom: idx[p] = p; break;
      case Side::Right: idx[p] = n - 1 + p; break;
      case Side::Top: idx[p] = 3 * n - 3 - p; break;
      case Side::Left: idx[p] = (count - p) % count; break;
    }
  }
  return idx;
}

BoundarySpec::BoundarySpec(const Grid2D& grid, BoolArray gamma, Eigen::ArrayXd lambda)
    : grid_(grid), gamma_(std::move(gamma)), lambda_(std::move(lambda)) {
  const int count = grid_.boundary_count();
  if (gamma_.size() != count || lambda_.size() != count) {
    throw DimensionError("boundary spec needs " + std::to_string(count) + " entries, got " +
                         std::to_string(gamma_.size()) + " mask / " + std::to_string(lambda_.size()) +
                         " weights");
  }
  for (int b = 0; b < count; ++b) {
    const bool positive = lambda_(b) > 0 && std::isfinite(lambda_(b));
    if (gamma_(b) != positive || lambda_(b) < 0) {
      throw ConfigError("lambda must be positive exactly on the measured boundary (node " +
                        std::to_string(b) + ")");
    }
  }
}

BoundarySpec BoundarySpec::full(const Grid2D& grid, double lambda) {
  return from_mask(grid, BoolArray::Constant(grid.boundary_count(), true), lambda);
}

BoundarySpec BoundarySpec::left_bottom(const Grid2D& grid, double lambda, double taper) {
  BoolArray mask = BoolArray::Constant(grid.boundary_count(), false);
  for (int b : side_indices(grid.n, Side::Bottom)) mask(b) = true;
  for (int b : side_indices(grid.n, Side::Left)) mask(b) = true;
  return from_mask(grid, std::move(mask), lambda, taper);
}

BoundarySpec BoundarySpec::from_nodes(const Grid2D& grid, const std::vector<int>& nodes,
                                      double lambda, double taper) {
  BoolArray mask = BoolArray::Constant(grid.boundary_count(), false);
  for (int b : nodes) {
    if (b < 0 || b >= grid.boundary_count()) {
      throw ConfigError("boundary node " + std::to_string(b) + " outside 0.." +
                        std::to_string(grid.boundary_count() - 1));
    }
    mask(b) = true;
  }
  return from_mask(grid, std::move(mask), lambda, taper);
}

BoundarySpec BoundarySpec::from_mask(const Grid2D& grid, BoolArray gamma, double lambda,
                                     double taper) {
  if (!(lambda > 0)) throw ConfigError("lambda must be positive");
  if (taper < 0) throw ConfigError("lambda taper length must be non-negative");
  const int count = grid.boundary_count();
  if (gamma.size() != count) throw DimensionError("gamma mask has wrong length");

  Eigen::ArrayXd weights = Eigen::ArrayXd::Zero(count);
  for (int b = 0; b < count; ++b)
    if (gamma(b)) weights(b) = lambda;

  if (taper > 0 && !gamma.all() && gamma.any()) {
    // Cyclic distance (in nodes) from each node to the nearest node outside Γ.
    constexpr int far = std::numeric_limits<int>::max() / 2;
    std::vector<int> dist(count, far);
    for (int pass = 0; pass < 2; ++pass) {
      int last = far;
      for (int step = 0; step < 2 * count; ++step) {
        const int b = pass == 0 ? step % count : (2 * count - 1 - step) % count;
        last = gamma(b) ? std::min(last + 1, far) : 0;
        dist[b] = std::min(dist[b], last);
      }
    }
    for (int b = 0; b < count; ++b) {
      if (!gamma(b)) continue;
      const double arc = dist[b] * grid.dx;
      if (arc < taper) weights(b) *= 0.5 * (1.0 - std::cos(std::numbers::pi * arc / taper));
    }
  }
  return {grid, std::move(gamma), std::move(weights)};
}

BoundaryTrace::BoundaryTrace(const Grid2D& grid, BoolArray gamma, TraceArray samples)
    : grid_(grid), gamma_(std::move(gamma)), samples_(std::move(samples)) {
  const int count = grid_.boundary_count();
  if (gamma_.size() != count) throw DimensionError("trace mask has wrong length");
  if (samples_.cols() != count) {
    throw DimensionError("trace has " + std::to_string(samples_.cols()) + " boundary columns, grid n=" +
                         std::to_string(grid_.n) + " needs " + std::to_string(count));
  }
  for (int b = 0; b < count; ++b)
    if (!gamma_(b)) samples_.col(b).setZero();
}

BoundaryTrace& BoundaryTrace::operator+=(const BoundaryTrace& o) {
  require_same_space(grid_, o.grid_, "trace addition");
  if (o.samples_.rows() != samples_.rows()) throw DimensionError("traces cover different time spans");
  samples_ += o.samples_;
  gamma_ = gamma_ || o.gamma_;
  return *this;
}

}  // namespace tatrev
