#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "wflo/scenario.hpp"

namespace wflo {

/// Annual farm cost in single-turbine units: N(2/3 + 1/3 exp(-0.00174 N^2)).
/// Per-turbine cost falls monotonically toward 2/3 as the farm grows.
inline double cost(std::size_t turbine_count) {
  const double n = static_cast<double>(turbine_count);
  return n * (2.0 / 3.0 + (1.0 / 3.0) * std::exp(-0.00174 * n * n));
}

/// Cost per unit of power produced, the quantity the optimizers minimize.
inline double objective(double total_power_kw, std::size_t turbine_count) {
  if (total_power_kw <= 0.0)
    throw std::invalid_argument("objective: total power must be positive");
  return cost(turbine_count) / total_power_kw;
}

/// Lower bound of the objective: infinitely many wake-free turbines, so the
/// per-turbine cost is 2/3 and per-turbine power is the wake-free mean.
inline double ideal_objective(const WindScenario& scenario) {
  return (2.0 / 3.0) / (0.3 * scenario.mean_cubed_speed());
}

/// Reciprocal of the objective's distance above its ideal value, kW.
/// A non-positive distance signals an evaluation bug, not a valid layout:
/// the denominator is clamped to 1e-12 and `clamped` is set instead of
/// aborting the surrounding optimization run.
inline double fitness(double objective_value, double ideal_value, bool& clamped) {
  double gap = objective_value - ideal_value;
  clamped = gap <= 0.0;
  if (clamped) gap = 1e-12;
  return 1.0 / gap;
}

inline double fitness(double objective_value, double ideal_value) {
  bool clamped = false;
  return fitness(objective_value, ideal_value, clamped);
}

/// Actual farm power over the wake-free power of the same turbines under the
/// same wind distribution.
inline double efficiency(double total_power_kw, std::size_t turbine_count,
                         const WindScenario& scenario) {
  if (turbine_count == 0) throw std::invalid_argument("efficiency: needs at least one turbine");
  return total_power_kw /
         (static_cast<double>(turbine_count) * 0.3 * scenario.mean_cubed_speed());
}

/// Full objective stack for one evaluated layout.
struct EvaluationResult {
  std::size_t turbine_count = 0;
  double total_power_kw = 0.0;
  double cost = 0.0;
  double objective = std::numeric_limits<double>::infinity();
  double fitness = 0.0;            // kW
  double efficiency = 0.0;
  bool fitness_clamped = false;    // diagnostic; never set for physical layouts
};

inline EvaluationResult evaluate(double total_power_kw, std::size_t turbine_count,
                                 const WindScenario& scenario) {
  EvaluationResult r;
  r.turbine_count = turbine_count;
  r.total_power_kw = total_power_kw;
  r.cost = cost(turbine_count);
  r.objective = objective(total_power_kw, turbine_count);
  r.fitness = fitness(r.objective, ideal_objective(scenario), r.fitness_clamped);
  r.efficiency = efficiency(total_power_kw, turbine_count, scenario);
  return r;
}

}  // namespace wflo
