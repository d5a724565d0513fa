#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wflo/ga.hpp"
#include "wflo/rng.hpp"

namespace wflo {

/// One GA operator configuration the agent can pick for a generation.
struct Action {
  int parents_mating = 2;
  CrossoverKind crossover = CrossoverKind::single_point;
  int mutation_percent = 1;
};

/// The option sets the agent chooses from. Actions are indexed
/// lexicographically over (parents_mating, crossover, mutation_percent);
/// the defaults span the full 2 x 4 x 4 = 32 combinations.
struct ActionSpace {
  std::vector<int> parents_options{2, 3};
  std::vector<CrossoverKind> crossover_options{CrossoverKind::single_point,
                                               CrossoverKind::uniform,
                                               CrossoverKind::two_points,
                                               CrossoverKind::scattered};
  std::vector<int> mutation_options{1, 2, 3, 4};

  std::size_t size() const {
    return parents_options.size() * crossover_options.size() * mutation_options.size();
  }

  Action action(std::size_t index) const {
    if (index >= size()) throw std::out_of_range("ActionSpace: action index out of range");
    const std::size_t block = crossover_options.size() * mutation_options.size();
    return {parents_options[index / block],
            crossover_options[(index % block) / mutation_options.size()],
            mutation_options[index % mutation_options.size()]};
  }

  void validate() const {
    if (parents_options.empty() || crossover_options.empty() || mutation_options.empty())
      throw std::invalid_argument("ActionSpace: option sets must be non-empty");
  }
};

/// Improvement flag carried between generations: 1 if the best fitness rose
/// last generation, else 0.
inline int next_state(double fitness_now, double fitness_prev) {
  return fitness_now > fitness_prev ? 1 : 0;
}

/// Fitness gain of the last generation; may be zero or negative.
inline double reward(double fitness_now, double fitness_prev) {
  return fitness_now - fitness_prev;
}

/// Tabular action values over the two improvement states. Initialized with
/// small random values, updated by the one-step Bellman rule.
class QTable {
 public:
  static constexpr int kStates = 2;

  QTable(std::uint64_t seed, double learning_rate, double discount, double exploration,
         std::size_t n_actions = 32)
      : learning_rate_(learning_rate),
        discount_(discount),
        exploration_(exploration),
        n_actions_(n_actions) {
    if (learning_rate < 0.0 || learning_rate > 1.0)
      throw std::invalid_argument("QTable: learning rate must lie in [0, 1]");
    if (discount < 0.0 || discount >= 1.0)
      throw std::invalid_argument("QTable: discount must lie in [0, 1)");
    if (exploration < 0.0 || exploration > 1.0)
      throw std::invalid_argument("QTable: exploration must lie in [0, 1]");
    if (n_actions == 0) throw std::invalid_argument("QTable: needs at least one action");
    RngStream rng(seed);
    values_.resize(kStates * n_actions);
    for (double& v : values_) v = rng.uniform01() * 0.01;
  }

  std::size_t n_actions() const { return n_actions_; }
  double learning_rate() const { return learning_rate_; }
  double discount() const { return discount_; }
  double exploration() const { return exploration_; }

  double value(int state, std::size_t action) const { return values_[cell(state, action)]; }
  void set_value(int state, std::size_t action, double v) { values_[cell(state, action)] = v; }

  /// Epsilon-greedy: explore uniformly with probability epsilon, otherwise
  /// take the argmax, ties toward the lowest action index.
  std::size_t choose_action(int state, RngStream& rng) const {
    if (rng.uniform01() < exploration_) return rng.below(n_actions_);
    return greedy_action(state);
  }

  std::size_t greedy_action(int state) const {
    std::size_t best = 0;
    for (std::size_t a = 1; a < n_actions_; ++a)
      if (values_[cell(state, a)] > values_[cell(state, best)]) best = a;
    return best;
  }

  /// One-step Bellman update; touches exactly the (state, action) cell.
  void update(int state, std::size_t action, double reward_value, int state_next) {
    double& q = values_[cell(state, action)];
    double best_next = values_[cell(state_next, 0)];
    for (std::size_t a = 1; a < n_actions_; ++a)
      best_next = std::max(best_next, values_[cell(state_next, a)]);
    q += learning_rate_ * (reward_value + discount_ * best_next - q);
  }

 private:
  std::size_t cell(int state, std::size_t action) const {
    if (state < 0 || state >= kStates) throw std::out_of_range("QTable: state out of range");
    if (action >= n_actions_) throw std::out_of_range("QTable: action out of range");
    return static_cast<std::size_t>(state) * n_actions_ + action;
  }

  double learning_rate_;
  double discount_;
  double exploration_;
  std::size_t n_actions_;
  std::vector<double> values_;
};

inline QTable init_qtable(std::uint64_t seed, double learning_rate, double discount,
                          double exploration) {
  return QTable(seed, learning_rate, discount, exploration, 32);
}

}  // namespace wflo
