#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tatrev/boundary.hpp"
#include "tatrev/core.hpp"
#include "tatrev/grid.hpp"

namespace tatrev {

struct ReconConfig {
  double T = 5.0;
  int iterations = 1;
  Subspace subspace = Subspace::H1;
  ScalarField sound_speed;
  BoundarySpec bspec;
  bool record_history = true;

  void validate() const;
};

struct ReconReport {
  StatePair estimate;
  /// Relative L² error of the position component after each iterate.
  std::vector<double> per_iteration_errors;
  /// Relative seminorm error |u^(k) − (f,0)| / |(f,0)| after each iterate.
  std::vector<double> seminorm_errors;
  /// err_{k+1} / err_k of the L² errors.
  std::vector<double> empirical_ratios;
  bool has_reference = false;
};

/// A g: the state at t = 0 of the dissipative backward solve driven by g.
StatePair apply_time_reversal(const BoundaryTrace& g, const ReconConfig& cfg);

/// Λ_T applied to a state, using the finite-difference forward solver.
BoundaryTrace apply_measurement(const StatePair& s, const ReconConfig& cfg);

/// Π A g.
StatePair initial_approximation(const BoundaryTrace& g, const ReconConfig& cfg);

/// u^(0) = 0, u^(k+1) = u^(k) − Π A Λ_T u^(k) + Π A g, run cfg.iterations times.
ReconReport neumann_iterate(const BoundaryTrace& g, const ReconConfig& cfg,
                            const std::optional<ScalarField>& reference = std::nullopt);

/// |(I − Π A Λ_T)(f, 0)| / |(f, 0)|; below one means the error operator
/// contracts this state at the configured T.
double estimate_contraction(const ScalarField& f, const ReconConfig& cfg);

/// (iteration, relative L² error) pairs, iterations numbered from 1.
std::vector<std::pair<int, double>> error_history(const ReconReport& report);

}  // namespace tatrev
