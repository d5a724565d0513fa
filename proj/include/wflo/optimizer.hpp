#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wflo/evaluation.hpp"
#include "wflo/ga.hpp"
#include "wflo/qlearning.hpp"
#include "wflo/scenario.hpp"

namespace wflo {

struct QParams {
  double learning_rate = 0.1;
  double discount = 0.9;
  double exploration = 0.1;
};

struct OptimizerConfig {
  int generations = 1000;
  std::uint64_t seed = 1;
  GAParams ga;          // fixed operators for run_ga; population size for both
  ActionSpace actions;  // operator options for run_rlga
  QParams q;
};

/// Score of one genome under the full evaluation chain. Genomes that produce
/// no power score zero fitness and an infinite objective.
struct GenomeScore {
  double power_kw = 0.0;
  std::size_t turbines = 0;
  double objective = std::numeric_limits<double>::infinity();
  double fitness = 0.0;
};

using GenomeEvaluator = std::function<GenomeScore(const Genome&)>;

/// Evaluation chain expected power -> objective -> fitness over a cached
/// power model.
inline GenomeEvaluator make_evaluator(const FarmPowerModel& model) {
  const double ideal = ideal_objective(model.scenario());
  return [&model, ideal](const Genome& genome) {
    GenomeScore score;
    score.turbines = genome.count();
    score.power_kw = model.expected_power(genome);
    if (score.turbines == 0 || score.power_kw <= 0.0) return score;
    score.objective = objective(score.power_kw, score.turbines);
    score.fitness = fitness(score.objective, ideal);
    return score;
  };
}

/// Per-generation best-of-population snapshot; the agent columns stay at
/// their defaults for plain GA runs and for the initial population.
struct ConvergenceRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double best_objective = std::numeric_limits<double>::infinity();
  double best_power_kw = 0.0;
  std::size_t turbine_count = 0;
  int action_index = -1;
  double reward = 0.0;
  int agent_state = 0;
};

struct RunResult {
  Genome best;
  GenomeScore best_score;
  std::vector<ConvergenceRecord> history;  // one record per generation, 0..N_g
  std::optional<QTable> final_qtable;      // run_rlga only
};

/// Called after every generation with the fresh record; the CLI flushes rows
/// to disk here so interrupted runs keep their partial history.
using GenerationSink = std::function<void(const ConvergenceRecord&)>;

/// First generation whose best fitness reaches `target`, if any.
inline std::optional<int> generations_to_target(std::span<const ConvergenceRecord> history,
                                                double target_fitness) {
  for (const ConvergenceRecord& rec : history)
    if (rec.best_fitness >= target_fitness) return rec.generation;
  return std::nullopt;
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace detail {

struct PopulationState {
  std::vector<Genome> genomes;
  std::vector<GenomeScore> scores;
  std::vector<double> fitnesses;

  std::size_t best_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < fitnesses.size(); ++i)
      if (fitnesses[i] > fitnesses[best]) best = i;
    return best;
  }
};

inline PopulationState init_state(std::size_t layout_size, const GenomeEvaluator& evaluate,
                                  const OptimizerConfig& config) {
  if (config.generations < 0)
    throw std::invalid_argument("optimizer: generation count must be >= 0");
  config.ga.validate();
  RngStream init_stream = RngStream::derive(config.seed, "init");
  PopulationState state;
  state.genomes = init_population(layout_size, config.ga.population_size, init_stream);
  state.scores.reserve(state.genomes.size());
  for (const Genome& g : state.genomes) state.scores.push_back(evaluate(g));
  for (const GenomeScore& s : state.scores) state.fitnesses.push_back(s.fitness);
  return state;
}

/// Advance one generation with the given operator parameters, evaluating only
/// the population_size - parents_mating fresh offspring (parent scores carry).
inline void step(PopulationState& state, const GAParams& params, GAStreams& streams,
                 const GenomeEvaluator& evaluate) {
  const std::vector<std::size_t> parents = select_parents(state.fitnesses, params.parents_mating);
  std::vector<Genome> next = evolve_generation(state.genomes, state.fitnesses, params, streams);

  std::vector<GenomeScore> next_scores;
  next_scores.reserve(next.size());
  for (std::size_t k = 0; k < parents.size(); ++k) next_scores.push_back(state.scores[parents[k]]);
  for (std::size_t k = parents.size(); k < next.size(); ++k)
    next_scores.push_back(evaluate(next[k]));

  state.genomes = std::move(next);
  state.scores = std::move(next_scores);
  state.fitnesses.clear();
  for (const GenomeScore& s : state.scores) state.fitnesses.push_back(s.fitness);
}

inline ConvergenceRecord snapshot(const PopulationState& state, int generation) {
  const std::size_t best = state.best_index();
  ConvergenceRecord rec;
  rec.generation = generation;
  rec.best_fitness = state.scores[best].fitness;
  rec.best_objective = state.scores[best].objective;
  rec.best_power_kw = state.scores[best].power_kw;
  rec.turbine_count = state.scores[best].turbines;
  return rec;
}

}  // namespace detail

/// Fixed-parameter genetic algorithm: config.generations elitist steps with
/// config.ga operators. Deterministic per (config, seed); the history starts
/// with the initial population as generation 0.
inline RunResult run_ga(std::size_t layout_size, const GenomeEvaluator& evaluate,
                        const OptimizerConfig& config, const GenerationSink& sink = {}) {
  detail::PopulationState state = detail::init_state(layout_size, evaluate, config);
  GAStreams streams = GAStreams::derive(config.seed);

  RunResult result;
  result.history.reserve(config.generations + 1);
  auto record = [&](const ConvergenceRecord& rec) {
    result.history.push_back(rec);
    if (sink) sink(rec);
  };
  record(detail::snapshot(state, 0));

  for (int g = 1; g <= config.generations; ++g) {
    detail::step(state, config.ga, streams, evaluate);
    record(detail::snapshot(state, g));
  }

  const std::size_t best = state.best_index();
  result.best = state.genomes[best];
  result.best_score = state.scores[best];
  return result;
}

/// Operator-adaptive run: at the top of every generation a Q-learning agent
/// picks the (parents_mating, crossover, mutation) triple for that
/// generation's step, observes the best-of-population fitness change as
/// reward, and applies the one-step Bellman update. The agent draws from its
/// own substreams, so with a single-action space the evolution trajectory
/// matches run_ga draw for draw.
inline RunResult run_rlga(std::size_t layout_size, const GenomeEvaluator& evaluate,
                          const OptimizerConfig& config, const GenerationSink& sink = {}) {
  config.actions.validate();
  detail::PopulationState state = detail::init_state(layout_size, evaluate, config);
  GAStreams streams = GAStreams::derive(config.seed);
  RngStream agent_stream = RngStream::derive(config.seed, "agent");
  QTable qtable(derive_seed(config.seed, "qtable"), config.q.learning_rate, config.q.discount,
                config.q.exploration, config.actions.size());

  RunResult result;
  result.history.reserve(config.generations + 1);
  auto record = [&](const ConvergenceRecord& rec) {
    result.history.push_back(rec);
    if (sink) sink(rec);
  };
  record(detail::snapshot(state, 0));

  int agent_state = 0;  // no improvement observed yet
  double fitness_prev = state.scores[state.best_index()].fitness;

  for (int g = 1; g <= config.generations; ++g) {
    const std::size_t action_index = qtable.choose_action(agent_state, agent_stream);
    const Action action = config.actions.action(action_index);
    GAParams params = config.ga;
    params.parents_mating = action.parents_mating;
    params.crossover = action.crossover;
    params.mutation_percent = action.mutation_percent;

    detail::step(state, params, streams, evaluate);

    const double fitness_now = state.scores[state.best_index()].fitness;
    const double r = reward(fitness_now, fitness_prev);
    const int state_next = next_state(fitness_now, fitness_prev);
    qtable.update(agent_state, action_index, r, state_next);
    agent_state = state_next;
    fitness_prev = fitness_now;

    ConvergenceRecord rec = detail::snapshot(state, g);
    rec.action_index = static_cast<int>(action_index);
    rec.reward = r;
    rec.agent_state = state_next;
    record(rec);
  }

  const std::size_t best = state.best_index();
  result.best = state.genomes[best];
  result.best_score = state.scores[best];
  result.final_qtable = qtable;
  return result;
}

}  // namespace wflo
