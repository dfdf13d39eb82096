#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tatrev/grid.hpp"

namespace tatrev {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;
using TraceArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Side { Bottom, Right, Top, Left };

// Canonical boundary enumeration of the outer node ring, 4n-4 nodes:
//   bottom row left->right          0 .. n-1
//   right column bottom+1 -> top    n .. 2n-2
//   top row right-1 -> left         2n-1 .. 3n-3
//   left column top-1 -> bottom+1   3n-2 .. 4n-5
// Every corner appears exactly once.

/// Grid indices (k, l) of canonical boundary node b.
std::pair<int, int> boundary_node(int n, int b);

/// Canonical indices of the n nodes on one side, ordered by the coordinate
/// running along that side (k for bottom/top, l for left/right).
std::vector<int> side_indices(int n, Side side);

/// Which boundary nodes form the measurement set Γ, and the dissipation
/// weight λ ≥ 0 at each of them (λ > 0 exactly on Γ).
class BoundarySpec {
 public:
  BoundarySpec(const Grid2D& grid, BoolArray gamma, Eigen::ArrayXd lambda);

  /// Γ = whole boundary, constant λ.
  static BoundarySpec full(const Grid2D& grid, double lambda = 1.0);
  /// Γ = left column plus bottom row; corner (1,1) excluded.
  static BoundarySpec left_bottom(const Grid2D& grid, double lambda = 1.0, double taper = 0.0);
  /// Γ = explicit list of canonical boundary indices.
  static BoundarySpec from_nodes(const Grid2D& grid, const std::vector<int>& nodes,
                                 double lambda = 1.0, double taper = 0.0);
  /// Γ from a boolean mask; λ is `lambda` on Γ, optionally rolled off with a
  /// half-cosine over arc length `taper` next to the ends of Γ.
  static BoundarySpec from_mask(const Grid2D& grid, BoolArray gamma, double lambda = 1.0,
                                double taper = 0.0);

  const Grid2D& grid() const { return grid_; }
  const BoolArray& gamma() const { return gamma_; }
  const Eigen::ArrayXd& lambda() const { return lambda_; }
  int size() const { return static_cast<int>(gamma_.size()); }
  bool is_full() const { return gamma_.all(); }

 private:
  Grid2D grid_;
  BoolArray gamma_;
  Eigen::ArrayXd lambda_;
};

/// Boundary samples g(z, t_j), one row per time level j = 0..steps, one
/// column per canonical boundary node. Columns outside Γ are held at zero.
class BoundaryTrace {
 public:
  BoundaryTrace(const Grid2D& grid, BoolArray gamma, TraceArray samples);
  BoundaryTrace(const BoundarySpec& spec, TraceArray samples)
      : BoundaryTrace(spec.grid(), spec.gamma(), std::move(samples)) {}

  static BoundaryTrace zero(const BoundarySpec& spec, int steps) {
    return {spec, TraceArray::Zero(steps + 1, spec.size())};
  }

  const Grid2D& grid() const { return grid_; }
  const BoolArray& gamma() const { return gamma_; }
  const TraceArray& samples() const { return samples_; }

  int time_samples() const { return static_cast<int>(samples_.rows()); }
  int steps() const { return std::max(0, time_samples() - 1); }
  double duration() const { return steps() * grid_.dt; }
  double time(int j) const { return j * grid_.dt; }
  double operator()(int j, int b) const { return samples_(j, b); }

  /// Euclidean norm over all samples.
  double norm() const { return std::sqrt(samples_.square().sum()); }

  BoundaryTrace& operator+=(const BoundaryTrace& o);
  BoundaryTrace& operator*=(double s) {
    samples_ *= s;
    return *this;
  }
  friend BoundaryTrace operator+(BoundaryTrace a, const BoundaryTrace& b) { return a += b; }
  friend BoundaryTrace operator*(double s, BoundaryTrace a) { return a *= s; }

 private:
  Grid2D grid_;
  BoolArray gamma_;
  TraceArray samples_;
};

}  // namespace tatrev
