#include "tatrev/recon.hpp"

#include <cmath>

#include "tatrev/fdtd.hpp"

namespace tatrev {

void ReconConfig::validate() const {
  if (!(T > 0)) throw ConfigError("measurement time T must be positive");
  if (iterations < 0) throw ConfigError("iterations must be non-negative");
  require_same_space(sound_speed.grid(), bspec.grid(), "reconstruction config");
}

namespace {

void check_trace(const BoundaryTrace& g, const ReconConfig& cfg) {
  cfg.validate();
  require_same_space(g.grid(), cfg.bspec.grid(), "reconstruction");
  if (std::abs(g.duration() - cfg.T) > 1e-9 * cfg.T) {
    throw ConfigError("trace covers T = " + std::to_string(g.duration()) + " but the configuration asks for T = " +
                      std::to_string(cfg.T));
  }
}

}  // namespace

StatePair apply_time_reversal(const BoundaryTrace& g, const ReconConfig& cfg) {
  return dissipative_reverse_solve(g, cfg.sound_speed, cfg.bspec);
}

BoundaryTrace apply_measurement(const StatePair& s, const ReconConfig& cfg) {
  return forward_solve(s, cfg.sound_speed, cfg.bspec, cfg.T).trace;
}

StatePair initial_approximation(const BoundaryTrace& g, const ReconConfig& cfg) {
  check_trace(g, cfg);
  return project(apply_time_reversal(g, cfg), cfg.subspace);
}

ReconReport neumann_iterate(const BoundaryTrace& g, const ReconConfig& cfg,
                            const std::optional<ScalarField>& reference) {
  check_trace(g, cfg);
  if (reference) require_same_space(reference->grid(), g.grid(), "reconstruction reference");

  ReconReport report{StatePair::zero(g.grid()), {}, {}, {}, reference.has_value()};
  if (cfg.iterations == 0) return report;

  std::optional<StatePair> target;
  double target_norm = 0;
  if (reference) {
    target.emplace(*reference, ScalarField(g.grid()));
    target_norm = seminorm(*target, cfg.sound_speed);
  }

  const StatePair first = initial_approximation(g, cfg);
  for (int k = 1; k <= cfg.iterations; ++k) {
    if (k == 1) {
      report.estimate = first;
    } else {
      const StatePair& u = report.estimate;
      StatePair update = project(apply_time_reversal(apply_measurement(u, cfg), cfg), cfg.subspace);
      report.estimate = u - update + first;
    }
    if (reference && cfg.record_history) {
      report.per_iteration_errors.push_back(relative_l2_error(report.estimate.first, *reference));
      if (target_norm > 0) {
        report.seminorm_errors.push_back(seminorm(report.estimate - *target, cfg.sound_speed) / target_norm);
      }
    }
  }
  const auto& errs = report.per_iteration_errors;
  for (std::size_t k = 1; k < errs.size(); ++k) report.empirical_ratios.push_back(errs[k] / errs[k - 1]);
  return report;
}

double estimate_contraction(const ScalarField& f, const ReconConfig& cfg) {
  cfg.validate();
  require_same_space(f.grid(), cfg.bspec.grid(), "estimate_contraction");
  const StatePair s(f, ScalarField(f.grid()));
  const double size = seminorm(s, cfg.sound_speed);
  if (!(size > 0)) throw Error("contraction ratio is undefined for a state with zero energy");
  const StatePair residual =
      s - project(apply_time_reversal(apply_measurement(s, cfg), cfg), cfg.subspace);
  return seminorm(residual, cfg.sound_speed) / size;
}

std::vector<std::pair<int, double>> error_history(const ReconReport& report) {
  if (!report.has_reference) throw Error("error history needs a reconstruction run with a reference");
  std::vector<std::pair<int, double>> out;
  for (std::size_t k = 0; k < report.per_iteration_errors.size(); ++k)
    out.emplace_back(static_cast<int>(k) + 1, report.per_iteration_errors[k]);
  return out;
}

}  // namespace tatrev
