#pragma once

#include <functional>
#include <optional>

#include "tatrev/boundary.hpp"
#include "tatrev/grid.hpp"

namespace tatrev {

/// One time level of the finite-difference solution, stored with a ghost
/// ring one cell outside the n×n node grid. The ghosts are the points on
/// which boundary conditions act; the wall x = ±1 lies midway between a
/// ghost and its inward neighbour.
class PaddedField {
 public:
  using Array = FieldArray<double>;

  explicit PaddedField(const Grid2D& grid)
      : grid_(grid), values_(Array::Zero(grid.n + 2, grid.n + 2)) {}
  explicit PaddedField(const ScalarField& f) : PaddedField(f.grid()) {
    values_.block(1, 1, grid_.n, grid_.n) = f.values();
  }

  const Grid2D& grid() const { return grid_; }
  int n() const { return grid_.n; }

  auto interior() { return values_.block(1, 1, grid_.n, grid_.n); }
  auto interior() const { return values_.block(1, 1, grid_.n, grid_.n); }
  const Array& padded() const { return values_; }
  Array& padded() { return values_; }

  ScalarField field() const { return ScalarField(grid_, interior()); }

 private:
  Grid2D grid_;
  Array values_;
};

/// Boundary samples plus the state at the terminal time of a solve.
struct SolveResult {
  BoundaryTrace trace;
  StatePair final_state;
};

/// Three consecutive time levels, ordered by physical time:
/// `before` = t_{index-1}, `at` = t_index, `after` = t_{index+1}.
struct StepView {
  int index;
  double time;
  const PaddedField& before;
  const PaddedField& at;
  const PaddedField& after;
};

using StepObserver = std::function<void(const StepView&)>;

/// Largest stable time step for the explicit scheme, dx / (√2 max c).
double max_stable_dt(const ScalarField& sound_speed);
void require_cfl(const Grid2D& grid, const ScalarField& sound_speed);

/// Leapfrog update of every node of the grid from the two previous levels
/// (works in either time direction). Ghosts of the result are left at zero
/// for the boundary step.
PaddedField interior_step(const PaddedField& prev, const PaddedField& curr,
                          const ScalarField& sound_speed);

/// Reflecting wall: each ghost takes the value of its inward neighbour.
void fill_neumann(PaddedField& level);

/// Dissipative wall update at one ghost, solved for the new level:
///   v0_new = (v1_new + γ (v0_curr − g_curr + g_new)) / (1 + γ),  γ = λ dx / dt.
inline double dissipative_ghost_value(double inner_new, double ghost_curr, double g_curr,
                                      double g_new, double gamma) {
  return (inner_new + gamma * (ghost_curr - g_curr + g_new)) / (1.0 + gamma);
}

/// Apply the dissipative wall update to every ghost of `next_level`, whose
/// node values must already be computed. `g_next`/`g_curr` are trace rows
/// at the new and current time levels. Nodes outside Γ have λ = 0 and
/// reduce to the reflecting fill.
void dissipative_boundary_update(PaddedField& next_level, const PaddedField& current_level,
                                 const Eigen::Ref<const Eigen::ArrayXd>& g_next,
                                 const Eigen::Ref<const Eigen::ArrayXd>& g_curr,
                                 const BoundarySpec& bspec);

/// Values of the outer node ring in canonical boundary order.
Eigen::ArrayXd boundary_values(const PaddedField& level);

/// Leapfrog energy between consecutive levels a = u^j and b = u^{j+1}:
///   ‖(b − a)/(c dt)‖² + Σ_edges Δa·Δb/dx², with quadrature weight dx².
/// Conserved to round-off by the reflecting-wall scheme.
double leapfrog_energy(const PaddedField& a, const PaddedField& b, const ScalarField& sound_speed);

/// Measurement operator: leapfrog solve of the reflecting-wall problem with
/// initial state s0 over [0, T]; the trace records the outer node ring at
/// every step (zero outside Γ).
SolveResult forward_solve(const StatePair& s0, const ScalarField& sound_speed,
                          const BoundarySpec& bspec, double T, const StepObserver& observer = {});

/// Backward solve driven by the trace g with the dissipative wall on Γ,
/// starting at t = T from `terminal` (zero when absent). Returns (v(·,0), v_t(·,0)).
StatePair reverse_solve(const BoundaryTrace& g, const ScalarField& sound_speed,
                        const BoundarySpec& bspec, const std::optional<StatePair>& terminal,
                        const StepObserver& observer = {});

/// Time-reversal operator A: reverse_solve with zero terminal data.
StatePair dissipative_reverse_solve(const BoundaryTrace& g, const ScalarField& sound_speed,
                                    const BoundarySpec& bspec, const StepObserver& observer = {});

}  // namespace tatrev
