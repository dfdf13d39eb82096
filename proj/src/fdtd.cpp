#include "tatrev/fdtd.hpp"

#include <cmath>
#include <utility>

namespace tatrev {

namespace {

using Array = FieldArray<double>;

// Five-point Laplacian (times dx²) of the node values, reading ghosts.
auto laplacian_dx2(const PaddedField& u) {
  const int n = u.n();
  const auto& p = u.padded();
  return p.block(0, 1, n, n) + p.block(2, 1, n, n) + p.block(1, 0, n, n) + p.block(1, 2, n, n) -
         4.0 * p.block(1, 1, n, n);
}

// (dt/dx)² c², the Courant factor of the update.
Array courant_squared(const Grid2D& grid, const ScalarField& sound_speed) {
  const double r = grid.dt / grid.dx;
  return (r * r) * sound_speed.values().square();
}

void leapfrog_into(PaddedField& next, const PaddedField& prev, const PaddedField& curr,
                   const Array& r2) {
  next.interior() = 2.0 * curr.interior() - prev.interior() + r2 * laplacian_dx2(curr);
}

struct SideMap {
  std::vector<int> bottom, right, top, left;
  explicit SideMap(int n)
      : bottom(side_indices(n, Side::Bottom)),
        right(side_indices(n, Side::Right)),
        top(side_indices(n, Side::Top)),
        left(side_indices(n, Side::Left)) {}
};

void record_ring(const PaddedField& level, const SideMap& sides, TraceArray& samples, int row) {
  const int n = level.n();
  const auto& p = level.padded();
  for (int q = 0; q < n; ++q) {
    samples(row, sides.bottom[q]) = p(q + 1, 1);
    samples(row, sides.top[q]) = p(q + 1, n);
    samples(row, sides.left[q]) = p(1, q + 1);
    samples(row, sides.right[q]) = p(n, q + 1);
  }
}

void check_inputs(const Grid2D& grid, const ScalarField& sound_speed, const BoundarySpec& bspec,
                  const char* what) {
  require_same_space(grid, sound_speed.grid(), what);
  require_same_space(grid, bspec.grid(), what);
  if (!(sound_speed.values() > 0).all()) throw ConfigError("sound speed must be strictly positive");
  require_cfl(grid, sound_speed);
}

}  // namespace

double max_stable_dt(const ScalarField& sound_speed) {
  return sound_speed.grid().dx / (std::sqrt(2.0) * sound_speed.values().maxCoeff());
}

void require_cfl(const Grid2D& grid, const ScalarField& sound_speed) {
  const double limit = max_stable_dt(sound_speed);
  if (grid.dt > limit * (1.0 + 1e-12)) {
    throw StabilityError("time step " + std::to_string(grid.dt) + " exceeds the CFL limit " +
                         std::to_string(limit));
  }
}

PaddedField interior_step(const PaddedField& prev, const PaddedField& curr,
                          const ScalarField& sound_speed) {
  require_same_space(prev.grid(), curr.grid(), "interior_step");
  require_same_space(prev.grid(), sound_speed.grid(), "interior_step");
  PaddedField next(curr.grid());
  leapfrog_into(next, prev, curr, courant_squared(curr.grid(), sound_speed));
  return next;
}

void fill_neumann(PaddedField& level) {
  const int n = level.n();
  auto& p = level.padded();
  p.row(0).segment(1, n) = p.row(1).segment(1, n);
  p.row(n + 1).segment(1, n) = p.row(n).segment(1, n);
  p.col(0).segment(1, n) = p.col(1).segment(1, n);
  p.col(n + 1).segment(1, n) = p.col(n).segment(1, n);
}

void dissipative_boundary_update(PaddedField& next_level, const PaddedField& current_level,
                                 const Eigen::Ref<const Eigen::ArrayXd>& g_next,
                                 const Eigen::Ref<const Eigen::ArrayXd>& g_curr,
                                 const BoundarySpec& bspec) {
  const Grid2D& grid = next_level.grid();
  const int n = grid.n;
  require_same_space(grid, bspec.grid(), "dissipative_boundary_update");
  if (g_next.size() != grid.boundary_count() || g_curr.size() != grid.boundary_count()) {
    throw DimensionError("trace row length does not match the boundary ring");
  }
  const Eigen::ArrayXd gamma = bspec.lambda() * (grid.dx / grid.dt);
  const SideMap sides(n);
  auto& v = next_level.padded();
  const auto& w = current_level.padded();

  auto update = [&](int gi, int gj, int ii, int ij, int b) {
    v(gi, gj) = dissipative_ghost_value(v(ii, ij), w(gi, gj), g_curr(b), g_next(b), gamma(b));
  };
  for (int q = 0; q < n; ++q) {
    update(q + 1, 0, q + 1, 1, sides.bottom[q]);
    update(q + 1, n + 1, q + 1, n, sides.top[q]);
    update(0, q + 1, 1, q + 1, sides.left[q]);
    update(n + 1, q + 1, n, q + 1, sides.right[q]);
  }
}

Eigen::ArrayXd boundary_values(const PaddedField& level) {
  TraceArray row(1, level.grid().boundary_count());
  record_ring(level, SideMap(level.n()), row, 0);
  return row.row(0).transpose();
}

double leapfrog_energy(const PaddedField& a, const PaddedField& b, const ScalarField& sound_speed) {
  const Grid2D& grid = a.grid();
  const int n = grid.n;
  const double dx2 = grid.dx * grid.dx;
  const double kinetic =
      ((b.interior() - a.interior()) / (grid.dt * sound_speed.values())).square().sum() * dx2;
  const auto& pa = a.padded();
  const auto& pb = b.padded();
  const double potential =
      ((pa.block(2, 1, n - 1, n) - pa.block(1, 1, n - 1, n)) *
       (pb.block(2, 1, n - 1, n) - pb.block(1, 1, n - 1, n)))
          .sum() +
      ((pa.block(1, 2, n, n - 1) - pa.block(1, 1, n, n - 1)) *
       (pb.block(1, 2, n, n - 1) - pb.block(1, 1, n, n - 1)))
          .sum();
  return kinetic + potential;
}

SolveResult forward_solve(const StatePair& s0, const ScalarField& sound_speed,
                          const BoundarySpec& bspec, double T, const StepObserver& observer) {
  const Grid2D grid = s0.grid();
  check_inputs(grid, sound_speed, bspec, "forward_solve");
  const int steps = grid.steps_for(T);
  const double dt = grid.dt;
  const Array r2 = courant_squared(grid, sound_speed);
  const SideMap sides(grid.n);

  TraceArray samples(steps + 1, grid.boundary_count());

  PaddedField older(grid);
  PaddedField prev(s0.first);
  fill_neumann(prev);
  record_ring(prev, sides, samples, 0);

  // Second-order Taylor start: u(dt) = u0 + dt u1 + dt²/2 c² Δu0.
  PaddedField curr(grid);
  curr.interior() = prev.interior() + dt * s0.second.values() + 0.5 * r2 * laplacian_dx2(prev);
  fill_neumann(curr);
  record_ring(curr, sides, samples, 1);

  PaddedField next(grid);
  for (int j = 1; j < steps; ++j) {
    leapfrog_into(next, prev, curr, r2);
    fill_neumann(next);
    record_ring(next, sides, samples, j + 1);
    if (observer) observer(StepView{j, j * dt, prev, curr, next});
    std::swap(older, prev);
    std::swap(prev, curr);
    std::swap(curr, next);
  }

  ScalarField velocity(grid);
  if (steps >= 2) {
    velocity.values() = (3.0 * curr.interior() - 4.0 * prev.interior() + older.interior()) / (2.0 * dt);
  } else {
    velocity.values() = (curr.interior() - prev.interior()) / dt;
  }
  return {BoundaryTrace(bspec, std::move(samples)), StatePair(curr.field(), std::move(velocity))};
}

StatePair reverse_solve(const BoundaryTrace& g, const ScalarField& sound_speed,
                        const BoundarySpec& bspec, const std::optional<StatePair>& terminal,
                        const StepObserver& observer) {
  const Grid2D grid = g.grid();
  check_inputs(grid, sound_speed, bspec, "reverse_solve");
  const int steps = g.steps();
  if (g.time_samples() < 2) throw DimensionError("reverse solve needs a trace with at least one step");
  if (terminal) require_same_space(grid, terminal->grid(), "reverse_solve terminal state");
  const double dt = grid.dt;
  const Array r2 = courant_squared(grid, sound_speed);
  const auto& data = g.samples();
  auto row = [&](int j) { return data.row(j).transpose(); };

  // Levels are named by physical time: `after` = t_{j+1}, `at` = t_j.
  PaddedField after(grid);
  if (terminal) {
    after.interior() = terminal->first.values();
    fill_neumann(after);
  }

  PaddedField at(grid);
  if (terminal) {
    at.interior() = after.interior() - dt * terminal->second.values() + 0.5 * r2 * laplacian_dx2(after);
  }
  dissipative_boundary_update(at, after, row(steps - 1), row(steps), bspec);

  PaddedField before(grid);
  PaddedField later(grid);
  for (int j = steps - 1; j >= 1; --j) {
    leapfrog_into(before, after, at, r2);
    dissipative_boundary_update(before, at, row(j - 1), row(j), bspec);
    if (observer) observer(StepView{j, j * dt, before, at, after});
    std::swap(later, after);
    std::swap(after, at);
    std::swap(at, before);
  }
  // Now `at` = v(t_0), `after` = v(t_1), `later` = v(t_2).

  ScalarField velocity(grid);
  if (steps >= 2) {
    velocity.values() = (-3.0 * at.interior() + 4.0 * after.interior() - later.interior()) / (2.0 * dt);
  } else {
    velocity.values() = (after.interior() - at.interior()) / dt;
  }
  return {at.field(), std::move(velocity)};
}

StatePair dissipative_reverse_solve(const BoundaryTrace& g, const ScalarField& sound_speed,
                                    const BoundarySpec& bspec, const StepObserver& observer) {
  return reverse_solve(g, sound_speed, bspec, std::nullopt, observer);
}

}  // namespace tatrev
