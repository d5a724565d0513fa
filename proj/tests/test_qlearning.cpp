#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "wflo/qlearning.hpp"

using namespace wflo;
using Catch::Matchers::WithinAbs;

TEST_CASE("action space indexing") {
  const ActionSpace space;
  REQUIRE(space.size() == 32);

  // lexicographic over (parents, crossover, mutation)
  const Action first = space.action(0);
  CHECK(first.parents_mating == 2);
  CHECK(first.crossover == CrossoverKind::single_point);
  CHECK(first.mutation_percent == 1);

  const Action last = space.action(31);
  CHECK(last.parents_mating == 3);
  CHECK(last.crossover == CrossoverKind::scattered);
  CHECK(last.mutation_percent == 4);

  const Action mid = space.action(4 + 2);  // parents 2, second crossover, mutation 3
  CHECK(mid.parents_mating == 2);
  CHECK(mid.crossover == CrossoverKind::uniform);
  CHECK(mid.mutation_percent == 3);

  // all 32 combinations appear exactly once
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t a = 0; a < space.size(); ++a) {
    const Action act = space.action(a);
    seen.insert({act.parents_mating, static_cast<int>(act.crossover), act.mutation_percent});
  }
  CHECK(seen.size() == 32);
  CHECK_THROWS_AS(space.action(32), std::out_of_range);
}

TEST_CASE("q-table initialization") {
  const QTable q = init_qtable(11, 0.1, 0.9, 0.1);
  CHECK(q.n_actions() == 32);
  for (int s = 0; s < QTable::kStates; ++s)
    for (std::size_t a = 0; a < q.n_actions(); ++a) {
      CHECK(q.value(s, a) >= 0.0);
      CHECK(q.value(s, a) <= 0.01);
    }

  const QTable again = init_qtable(11, 0.1, 0.9, 0.1);
  for (int s = 0; s < QTable::kStates; ++s)
    for (std::size_t a = 0; a < q.n_actions(); ++a) CHECK(q.value(s, a) == again.value(s, a));

  CHECK_THROWS_AS(QTable(1, -0.1, 0.9, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(QTable(1, 1.5, 0.9, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(QTable(1, 0.1, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(QTable(1, 0.1, 0.9, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(QTable(1, 0.1, 0.9, 1.1), std::invalid_argument);
}

TEST_CASE("epsilon-greedy choice") {
  SECTION("greedy picks the raised action every time") {
    QTable q(3, 0.1, 0.9, 0.0);
    q.update(0, 13, 100.0, 1);  // push one cell far above the rest
    RngStream rng(4);
    for (int trial = 0; trial < 200; ++trial) CHECK(q.choose_action(0, rng) == 13);
  }
  SECTION("all-equal values break ties toward action 0") {
    QTable q(5, 1.0, 0.0, 0.0, 8);
    for (std::size_t a = 0; a < 8; ++a) q.update(0, a, 1.0, 0);  // alpha=1, gamma=0: all cells 1
    RngStream rng(4);
    CHECK(q.choose_action(0, rng) == 0);
  }
  SECTION("pure exploration is uniform over the actions") {
    const QTable q(3, 0.1, 0.9, 1.0);
    RngStream rng(42);
    std::array<int, 32> counts{};
    const int draws = 10000;
    for (int trial = 0; trial < draws; ++trial) ++counts[q.choose_action(0, rng)];
    // 3 sigma around draws/32 for a fixed seed
    for (int c : counts) {
      CHECK(c > 312 - 53);
      CHECK(c < 312 + 54);
    }
  }
}

TEST_CASE("reward and state transition") {
  CHECK(reward(10.0, 8.0) == 2.0);
  CHECK(reward(8.0, 8.0) == 0.0);
  CHECK_THAT(reward(3882.3, 3900.0), WithinAbs(-17.7, 1e-9));

  CHECK(next_state(10.0, 8.0) == 1);
  CHECK(next_state(8.0, 8.0) == 0);  // strict inequality
  CHECK(next_state(7.0, 8.0) == 0);
}

namespace {
QTable zeroed_table(double alpha, double gamma, std::size_t n_actions = 4) {
  QTable q(1, alpha, gamma, 0.0, n_actions);
  for (int s = 0; s < QTable::kStates; ++s)
    for (std::size_t a = 0; a < n_actions; ++a) q.set_value(s, a, 0.0);
  return q;
}
}  // namespace

TEST_CASE("bellman update") {
  SECTION("all-zero table, alpha 0.1, gamma 0.9, reward 1 gives 0.1") {
    QTable q = zeroed_table(0.1, 0.9);
    q.update(0, 0, 1.0, 1);
    CHECK_THAT(q.value(0, 0), WithinAbs(0.1, 1e-15));
  }
  SECTION("carries the discounted best next value: 0.5 -> 0.54") {
    QTable q = zeroed_table(0.1, 0.9);
    q.set_value(0, 0, 0.5);
    q.set_value(1, 2, 1.0);  // max_a Q(1, a) = 1.0
    q.update(0, 0, 0.0, 1);
    CHECK_THAT(q.value(0, 0), WithinAbs(0.54, 1e-15));
  }
  SECTION("zero learning rate leaves the table unchanged") {
    QTable q = zeroed_table(0.0, 0.9);
    q.set_value(0, 1, 0.25);
    q.update(0, 1, 123.0, 1);
    q.update(1, 3, -7.0, 0);
    CHECK(q.value(0, 1) == 0.25);
    CHECK(q.value(1, 3) == 0.0);
  }
  SECTION("update touches exactly one cell") {
    QTable q = zeroed_table(0.1, 0.9);
    q.update(1, 1, 2.5, 0);
    for (int s = 0; s < 2; ++s)
      for (std::size_t a = 0; a < 4; ++a)
        if (!(s == 1 && a == 1)) CHECK(q.value(s, a) == 0.0);
    CHECK(q.value(1, 1) != 0.0);
  }
  SECTION("fixed point is a no-op") {
    QTable q = zeroed_table(0.1, 0.9);
    q.set_value(0, 0, 0.7);
    q.set_value(1, 3, 0.5);
    // r + gamma * max_next = Q(s,a): r = 0.7 - 0.9 * 0.5 = 0.25
    q.update(0, 0, 0.25, 1);
    CHECK_THAT(q.value(0, 0), WithinAbs(0.7, 1e-12));
  }
}

TEST_CASE("bandit convergence sanity") {
  // one rewarding action; epsilon-greedy learning must find it in both
  // states within 1000 update rounds. The bandit has no temporal structure,
  // so the discount is zero: rows must not bootstrap into one another.
  const std::size_t rewarding = 17;
  QTable q(99, 0.1, 0.0, 0.1);
  RngStream rng(123);
  for (int round = 0; round < 1000; ++round) {
    for (int state : {0, 1}) {
      const std::size_t a = q.choose_action(state, rng);
      const double r = a == rewarding ? 1.0 : 0.0;
      q.update(state, a, r, 1 - state);
    }
  }
  CHECK(q.greedy_action(0) == rewarding);
  CHECK(q.greedy_action(1) == rewarding);
}
