#pragma once

#include "tatrev/boundary.hpp"
#include "tatrev/grid.hpp"

namespace tatrev {

/// Coefficients c_{k,l} of a field in the Neumann-Laplacian eigenbasis
/// φ_{k,l}(x,y) = cos(k x̄) cos(l ȳ), x̄ = π(x+1)/2, ȳ = π(y+1)/2.
struct CosineCoeffs {
  Grid2D grid;
  FieldArray<double> coeffs;
};

/// Φ(j, k) = cos(k x̄_j): eigenfunction k sampled at node j. On the
/// cell-centred nodes this is the (unnormalised) DCT-II basis.
Eigen::MatrixXd cosine_basis(int n);

/// Mode frequencies λ_{k,l} = (π/2) sqrt(k² + l²).
FieldArray<double> mode_frequencies(int n);

CosineCoeffs dct2_forward(const ScalarField& f);
ScalarField dct2_inverse(const CosineCoeffs& c);

/// Coefficients of the solution at time t: c_{k,l} cos(λ_{k,l} t). Any sign of t.
CosineCoeffs evolve_coefficients(const CosineCoeffs& c, double t);

/// u(·, t) for initial data (Σ c φ, 0) under unit sound speed.
ScalarField spectral_propagate(const CosineCoeffs& c, double t);
/// Same, after checking that the configured sound speed is identically one.
ScalarField spectral_propagate(const CosineCoeffs& c, double t, const ScalarField& sound_speed);

/// u_t(·, t) from the term-wise differentiated series.
ScalarField spectral_velocity(const CosineCoeffs& c, double t);

/// Boundary data g = u on Γ at t_j = j·dt, j = 0..T/dt, from the series
/// solution with initial data (f, 0). Nodes outside Γ carry zero.
BoundaryTrace synthesize_data(const ScalarField& f, const BoundarySpec& bspec, double T, double dt);

void require_unit_sound_speed(const ScalarField& sound_speed);

}  // namespace tatrev
