#pragma once

#include <cmath>

#include "tatrev/grid.hpp"

namespace tatrev {

/// Target subspace of the reconstruction: H0 keeps the velocity component,
/// H1 zeroes it (thermo-/photoacoustic data has zero initial velocity).
enum class Subspace { H0, H1 };

namespace detail {

template <typename Scalar>
FieldArray<Scalar> diff_x(const FieldArray<Scalar>& u, double dx) {
  const Eigen::Index n = u.rows();
  FieldArray<Scalar> d(n, u.cols());
  d.middleRows(1, n - 2) = (u.bottomRows(n - 2) - u.topRows(n - 2)) / Scalar(2 * dx);
  d.row(0) = (u.row(1) - u.row(0)) / Scalar(dx);
  d.row(n - 1) = (u.row(n - 1) - u.row(n - 2)) / Scalar(dx);
  return d;
}

template <typename Scalar>
FieldArray<Scalar> diff_y(const FieldArray<Scalar>& u, double dx) {
  const Eigen::Index n = u.cols();
  FieldArray<Scalar> d(u.rows(), n);
  d.middleCols(1, n - 2) = (u.rightCols(n - 2) - u.leftCols(n - 2)) / Scalar(2 * dx);
  d.col(0) = (u.col(1) - u.col(0)) / Scalar(dx);
  d.col(n - 1) = (u.col(n - 1) - u.col(n - 2)) / Scalar(dx);
  return d;
}

template <typename Scalar>
void check_sound_speed(const BasicField<Scalar>& c) {
  if (!(c.values() > Scalar(0)).all()) throw ConfigError("sound speed must be strictly positive");
}

}  // namespace detail

/// ∫|∇u|² by centred differences inside and one-sided differences on the
/// outermost ring, with quadrature weight dx² per node.
template <typename Scalar>
Scalar gradient_energy(const BasicField<Scalar>& u) {
  const double dx = u.grid().dx;
  const auto gx = detail::diff_x(u.values(), dx);
  const auto gy = detail::diff_y(u.values(), dx);
  return (gx.square() + gy.square()).sum() * Scalar(dx * dx);
}

template <typename Scalar>
Scalar l2_norm_squared(const BasicField<Scalar>& u) {
  const double dx = u.grid().dx;
  return u.values().square().sum() * Scalar(dx * dx);
}

template <typename Scalar>
Scalar l2_norm(const BasicField<Scalar>& u) {
  using std::sqrt;
  return sqrt(l2_norm_squared(u));
}

/// Relative L² error ‖estimate − reference‖ / ‖reference‖.
template <typename Scalar>
Scalar relative_l2_error(const BasicField<Scalar>& estimate, const BasicField<Scalar>& reference) {
  require_same_space(estimate.grid(), reference.grid(), "relative_l2_error");
  const Scalar ref = l2_norm(reference);
  if (ref == Scalar(0)) throw Error("relative error against a zero reference is undefined");
  return l2_norm(estimate - reference) / ref;
}

/// Wave energy ‖∇u0‖² + ‖u1/c‖².
template <typename Scalar>
Scalar energy(const BasicStatePair<Scalar>& s, const BasicField<Scalar>& c) {
  require_same_space(s.grid(), c.grid(), "energy");
  detail::check_sound_speed(c);
  const double dx = s.grid().dx;
  const Scalar kinetic = (s.second.values() / c.values()).square().sum() * Scalar(dx * dx);
  return gradient_energy(s.first) + kinetic;
}

template <typename Scalar>
Scalar seminorm(const BasicStatePair<Scalar>& s, const BasicField<Scalar>& c) {
  using std::sqrt;
  return sqrt(energy(s, c));
}

/// sqrt(‖u0‖² + ‖∇u0‖² + ‖u1/c‖²).
template <typename Scalar>
Scalar full_norm(const BasicStatePair<Scalar>& s, const BasicField<Scalar>& c) {
  using std::sqrt;
  return sqrt(energy(s, c) + l2_norm_squared(s.first));
}

/// Mean of h over the cavity wall, using the outermost node ring as wall
/// samples. Midpoint rule along each side: every side has n samples of
/// weight dx, corners count once per incident side, total weight 8.
template <typename Scalar>
Scalar boundary_mean(const BasicField<Scalar>& h) {
  const auto& v = h.values();
  const Eigen::Index n = v.rows();
  const Scalar sum = v.row(0).sum() + v.row(n - 1).sum() + v.col(0).sum() + v.col(n - 1).sum();
  return sum / Scalar(4 * n);
}

/// Π₀: shift the position component to zero boundary mean.
template <typename Scalar>
BasicStatePair<Scalar> project_H0(BasicStatePair<Scalar> s) {
  s.first.values() -= boundary_mean(s.first);
  return s;
}

/// Π₁: Π₀ followed by dropping the velocity component.
template <typename Scalar>
BasicStatePair<Scalar> project_H1(BasicStatePair<Scalar> s) {
  s.first.values() -= boundary_mean(s.first);
  s.second.values().setZero();
  return s;
}

template <typename Scalar>
BasicStatePair<Scalar> project(BasicStatePair<Scalar> s, Subspace subspace) {
  return subspace == Subspace::H0 ? project_H0(std::move(s)) : project_H1(std::move(s));
}

}  // namespace tatrev
