#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "tatrev/error.hpp"

namespace tatrev {

/// Uniform cell-centred discretisation of the square cavity [-1,1]².
///
/// Node k sits at the centre of the k-th of n cells of width dx = 2/n, so
/// x_k = -1 + (k + 1/2) dx. The walls x = ±1 lie half a cell outside the
/// outermost nodes.
struct Grid2D {
  int n = 257;
  double dx = 2.0 / 257;
  double dt = 1.0 / 257;

  static Grid2D make(int n = 257, double dt_factor = 0.5) {
    if (n < 3) throw ConfigError("grid needs at least 3 nodes per side, got " + std::to_string(n));
    if (!(dt_factor > 0)) throw ConfigError("time step factor must be positive");
    Grid2D g;
    g.n = n;
    g.dx = 2.0 / n;
    g.dt = dt_factor * g.dx;
    return g;
  }

  double coord(int k) const { return -1.0 + (k + 0.5) * dx; }

  Grid2D with_time_step(double new_dt) const {
    if (!(new_dt > 0)) throw ConfigError("time step must be positive");
    Grid2D g = *this;
    g.dt = new_dt;
    return g;
  }

  /// Number of time steps covering [0, T]; T must be an integer multiple of dt.
  int steps_for(double T) const {
    if (!(T > 0) || !std::isfinite(T)) throw ConfigError("measurement time T must be positive");
    const double ratio = T / dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
      throw ConfigError("T = " + std::to_string(T) + " is not an integer multiple of dt = " +
                        std::to_string(dt));
    }
    return static_cast<int>(steps);
  }

  /// Same grid with dt reduced (never increased) so that T spans a whole
  /// number of steps.
  Grid2D snapped_to(double T) const {
    if (!(T > 0)) throw ConfigError("measurement time T must be positive");
    const double ratio = T / dt;
    double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) steps = std::ceil(ratio);
    return with_time_step(T / steps);
  }

  int boundary_count() const { return 4 * n - 4; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

inline bool same_space(const Grid2D& a, const Grid2D& b) { return a.n == b.n; }

inline void require_same_space(const Grid2D& a, const Grid2D& b, const char* what) {
  if (!same_space(a, b)) {
    throw GridMismatchError(std::string(what) + ": grids differ (" + std::to_string(a.n) + " vs " +
                            std::to_string(b.n) + " nodes per side)");
  }
}

template <typename Scalar>
using FieldArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One value per grid node; values(k, l) is the sample at (x_k, y_l).
template <typename Scalar>
class BasicField {
 public:
  using Array = FieldArray<Scalar>;

  explicit BasicField(const Grid2D& grid) : grid_(grid), values_(Array::Zero(grid.n, grid.n)) {}

  BasicField(const Grid2D& grid, Array values) : grid_(grid), values_(std::move(values)) {
    if (values_.rows() != grid.n || values_.cols() != grid.n) {
      throw DimensionError("field array is " + std::to_string(values_.rows()) + "x" +
                           std::to_string(values_.cols()) + ", grid expects " +
                           std::to_string(grid.n) + "x" + std::to_string(grid.n));
    }
  }

  static BasicField constant(const Grid2D& grid, Scalar value) {
    return BasicField(grid, Array::Constant(grid.n, grid.n, value));
  }

  template <typename Fn>
  static BasicField from_function(const Grid2D& grid, Fn&& fn) {
    Array a(grid.n, grid.n);
    for (int k = 0; k < grid.n; ++k)
      for (int l = 0; l < grid.n; ++l) a(k, l) = fn(grid.coord(k), grid.coord(l));
    return BasicField(grid, std::move(a));
  }

  const Grid2D& grid() const { return grid_; }
  int n() const { return grid_.n; }
  const Array& values() const { return values_; }
  Array& values() { return values_; }

  Scalar operator()(int k, int l) const { return values_(k, l); }
  Scalar& operator()(int k, int l) { return values_(k, l); }

  bool all_finite() const { return values_.allFinite(); }

  BasicField& operator+=(const BasicField& o) {
    require_same_space(grid_, o.grid_, "field addition");
    values_ += o.values_;
    return *this;
  }
  BasicField& operator-=(const BasicField& o) {
    require_same_space(grid_, o.grid_, "field subtraction");
    values_ -= o.values_;
    return *this;
  }
  BasicField& operator*=(Scalar s) {
    values_ *= s;
    return *this;
  }

  friend BasicField operator+(BasicField a, const BasicField& b) { return a += b; }
  friend BasicField operator-(BasicField a, const BasicField& b) { return a -= b; }
  friend BasicField operator*(BasicField a, Scalar s) { return a *= s; }
  friend BasicField operator*(Scalar s, BasicField a) { return a *= s; }

 private:
  Grid2D grid_;
  Array values_;
};

/// Element (u0, u1) of the state space: position and velocity components.
template <typename Scalar>
struct BasicStatePair {
  BasicField<Scalar> first;
  BasicField<Scalar> second;

  BasicStatePair(BasicField<Scalar> u0, BasicField<Scalar> u1)
      : first(std::move(u0)), second(std::move(u1)) {
    require_same_space(first.grid(), second.grid(), "state pair");
  }

  static BasicStatePair zero(const Grid2D& grid) {
    return {BasicField<Scalar>(grid), BasicField<Scalar>(grid)};
  }

  const Grid2D& grid() const { return first.grid(); }

  BasicStatePair& operator+=(const BasicStatePair& o) {
    first += o.first;
    second += o.second;
    return *this;
  }
  BasicStatePair& operator-=(const BasicStatePair& o) {
    first -= o.first;
    second -= o.second;
    return *this;
  }
  BasicStatePair& operator*=(Scalar s) {
    first *= s;
    second *= s;
    return *this;
  }

  friend BasicStatePair operator+(BasicStatePair a, const BasicStatePair& b) { return a += b; }
  friend BasicStatePair operator-(BasicStatePair a, const BasicStatePair& b) { return a -= b; }
  friend BasicStatePair operator*(Scalar s, BasicStatePair a) { return a *= s; }
};

using ScalarField = BasicField<double>;
using StatePair = BasicStatePair<double>;

}  // namespace tatrev
