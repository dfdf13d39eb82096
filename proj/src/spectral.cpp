#include "tatrev/spectral.hpp"

#include <numbers>

namespace tatrev {

namespace {

using Matrix = Eigen::MatrixXd;

// Analysis matrix: Ψ = diag(1/n, 2/n, ..., 2/n) Φᵀ, so that Ψ Φ = I.
Matrix analysis_matrix(const Matrix& phi) {
  const auto n = phi.rows();
  Matrix psi = phi.transpose() * (2.0 / n);
  psi.row(0) *= 0.5;
  return psi;
}

}  // namespace

Eigen::MatrixXd cosine_basis(int n) {
  Matrix phi(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) phi(j, k) = std::cos(std::numbers::pi * k * (j + 0.5) / n);
  return phi;
}

FieldArray<double> mode_frequencies(int n) {
  FieldArray<double> lam(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) lam(k, l) = 0.5 * std::numbers::pi * std::sqrt(double(k * k + l * l));
  return lam;
}

CosineCoeffs dct2_forward(const ScalarField& f) {
  const Matrix psi = analysis_matrix(cosine_basis(f.n()));
  Matrix c = psi * f.values().matrix() * psi.transpose();
  return {f.grid(), c.array()};
}

ScalarField dct2_inverse(const CosineCoeffs& c) {
  const Matrix phi = cosine_basis(c.grid.n);
  Matrix f = phi * c.coeffs.matrix() * phi.transpose();
  return ScalarField(c.grid, f.array());
}

CosineCoeffs evolve_coefficients(const CosineCoeffs& c, double t) {
  return {c.grid, c.coeffs * (mode_frequencies(c.grid.n) * t).cos()};
}

ScalarField spectral_propagate(const CosineCoeffs& c, double t) {
  if (t < 0) throw ConfigError("spectral_propagate needs t >= 0");
  return dct2_inverse(evolve_coefficients(c, t));
}

ScalarField spectral_propagate(const CosineCoeffs& c, double t, const ScalarField& sound_speed) {
  require_same_space(c.grid, sound_speed.grid(), "spectral_propagate");
  require_unit_sound_speed(sound_speed);
  return spectral_propagate(c, t);
}

ScalarField spectral_velocity(const CosineCoeffs& c, double t) {
  const auto lam = mode_frequencies(c.grid.n);
  CosineCoeffs d{c.grid, -c.coeffs * lam * (lam * t).sin()};
  return dct2_inverse(d);
}

void require_unit_sound_speed(const ScalarField& sound_speed) {
  if (!(sound_speed.values() == 1.0).all()) {
    throw UnsupportedConfigurationError("the series solver only supports unit sound speed");
  }
}

BoundaryTrace synthesize_data(const ScalarField& f, const BoundarySpec& bspec, double T, double dt) {
  require_same_space(f.grid(), bspec.grid(), "synthesize_data");
  const Grid2D grid = f.grid().with_time_step(dt);
  const int steps = grid.steps_for(T);
  const int n = grid.n;

  const Matrix phi = cosine_basis(n);
  const Matrix coeffs = dct2_forward(f).coeffs.matrix();
  const FieldArray<double> lam = mode_frequencies(n);
  const Eigen::VectorXd first_node = phi.row(0).transpose();
  const Eigen::VectorXd last_node = phi.row(n - 1).transpose();

  const auto bottom = side_indices(n, Side::Bottom);
  const auto top = side_indices(n, Side::Top);
  const auto left = side_indices(n, Side::Left);
  const auto right = side_indices(n, Side::Right);

  TraceArray samples(steps + 1, grid.boundary_count());
  Matrix evolved(n, n);
  for (int j = 0; j <= steps; ++j) {
    evolved = (coeffs.array() * (lam * (j * dt)).cos()).matrix();
    // u(x_k, y_0) = Σ_p Φ(k,p) Σ_q A(p,q) Φ(0,q), and similarly on the other sides.
    const Eigen::VectorXd u_bottom = phi * (evolved * first_node);
    const Eigen::VectorXd u_top = phi * (evolved * last_node);
    const Eigen::VectorXd u_left = phi * (evolved.transpose() * first_node);
    const Eigen::VectorXd u_right = phi * (evolved.transpose() * last_node);
    for (int p = 0; p < n; ++p) {
      samples(j, bottom[p]) = u_bottom(p);
      samples(j, top[p]) = u_top(p);
      samples(j, left[p]) = u_left(p);
      samples(j, right[p]) = u_right(p);
    }
  }
  return {grid, bspec.gamma(), std::move(samples)};
}

}  // namespace tatrev
