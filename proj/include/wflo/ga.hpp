#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "wflo/genome.hpp"
#include "wflo/rng.hpp"

namespace wflo {

enum class CrossoverKind { single_point, uniform, two_points, scattered };

inline std::string_view to_string(CrossoverKind kind) {
  switch (kind) {
    case CrossoverKind::single_point: return "single_point";
    case CrossoverKind::uniform: return "uniform";
    case CrossoverKind::two_points: return "two_points";
    case CrossoverKind::scattered: return "scattered";
  }
  throw std::invalid_argument("unknown crossover kind");
}

inline CrossoverKind crossover_from_string(std::string_view name) {
  if (name == "single_point") return CrossoverKind::single_point;
  if (name == "uniform") return CrossoverKind::uniform;
  if (name == "two_points") return CrossoverKind::two_points;
  if (name == "scattered") return CrossoverKind::scattered;
  throw std::invalid_argument("unknown crossover kind: " + std::string(name));
}

struct GAParams {
  int population_size = 5;
  int parents_mating = 2;
  CrossoverKind crossover = CrossoverKind::single_point;
  double mutation_percent = 4.0;  // percent of genes flipped per offspring

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("GAParams: population size must be >= 2");
    if (parents_mating < 2 || parents_mating > population_size)
      throw std::invalid_argument("GAParams: parents_mating must lie in [2, population_size]");
    if (mutation_percent < 0.0)
      throw std::invalid_argument("GAParams: mutation percent must be >= 0");
  }
};

/// The three random streams the operators draw from. Kept separate so that
/// changing one operator's consumption cannot shift another's sequence.
struct GAStreams {
  RngStream selection;
  RngStream crossover;
  RngStream mutation;

  static GAStreams derive(std::uint64_t master_seed) {
    return {RngStream::derive(master_seed, "selection"),
            RngStream::derive(master_seed, "crossover"),
            RngStream::derive(master_seed, "mutation")};
  }
};

/// Fresh population with each gene set independently with probability 0.5.
inline std::vector<Genome> init_population(std::size_t layout_size, int population_size,
                                           RngStream& rng) {
  if (layout_size == 0) throw std::invalid_argument("init_population: empty layout");
  if (population_size < 2)
    throw std::invalid_argument("init_population: population size must be >= 2");
  std::vector<Genome> population;
  population.reserve(population_size);
  for (int p = 0; p < population_size; ++p) {
    Genome g(layout_size);
    for (std::size_t i = 0; i < layout_size; ++i) g.set(i, rng.coin());
    population.push_back(std::move(g));
  }
  return population;
}

/// Indices of the `parents_mating` highest-fitness individuals, best first;
/// ties break toward the lower population index.
inline std::vector<std::size_t> select_parents(std::span<const double> fitnesses,
                                               int parents_mating) {
  if (parents_mating < 0 || static_cast<std::size_t>(parents_mating) > fitnesses.size())
    throw std::invalid_argument("select_parents: parents_mating exceeds population size");
  std::vector<std::size_t> order(fitnesses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitnesses[a] > fitnesses[b]; });
  order.resize(parents_mating);
  return order;
}

/// Recombine two equal-length genomes. Every offspring gene comes from one of
/// the two parents, whichever kind is used.
inline std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, CrossoverKind kind,
                                           RngStream& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover: genome length mismatch");
  const std::size_t n = a.size();
  Genome c = a;
  Genome d = b;
  if (n < 2) return {std::move(c), std::move(d)};

  auto swap_gene = [&](std::size_t i) {
    c.set(i, b.test(i));
    d.set(i, a.test(i));
  };

  switch (kind) {
    case CrossoverKind::single_point: {
      const std::size_t cut = 1 + rng.below(n - 1);
      for (std::size_t i = cut; i < n; ++i) swap_gene(i);
      break;
    }
    case CrossoverKind::two_points: {
      if (n < 3) {  // a second distinct cut does not exist; degrade gracefully
        const std::size_t cut = 1 + rng.below(n - 1);
        for (std::size_t i = cut; i < n; ++i) swap_gene(i);
        break;
      }
      std::size_t k1 = 1 + rng.below(n - 1);
      std::size_t k2 = 1 + rng.below(n - 1);
      while (k2 == k1) k2 = 1 + rng.below(n - 1);
      if (k2 < k1) std::swap(k1, k2);
      for (std::size_t i = k1; i < k2; ++i) swap_gene(i);
      break;
    }
    case CrossoverKind::uniform: {
      // child 1 takes each gene from a or b with probability 1/2; child 2
      // takes the complementary parent at every position
      for (std::size_t i = 0; i < n; ++i)
        if (rng.coin()) swap_gene(i);
      break;
    }
    case CrossoverKind::scattered: {
      // one random mask: child 1 takes a where the mask is set, else b
      for (std::size_t i = 0; i < n; ++i)
        if (!rng.coin()) swap_gene(i);
      break;
    }
  }
  return {std::move(c), std::move(d)};
}

/// Number of genes a mutation flips: max(1, round(M_c/100 * L)), so mutation
/// percents that round to zero on short genomes still act. M_c = 0 switches
/// mutation off entirely.
inline std::size_t mutation_flip_count(double mutation_percent, std::size_t length) {
  if (mutation_percent < 0.0)
    throw std::invalid_argument("mutate: mutation percent must be >= 0");
  if (mutation_percent == 0.0 || length == 0) return 0;
  const auto rounded = static_cast<std::size_t>(
      std::lround(mutation_percent / 100.0 * static_cast<double>(length)));
  return std::min(length, std::max<std::size_t>(1, rounded));
}

/// Flip `mutation_flip_count` distinct uniformly-chosen genes.
inline Genome mutate(const Genome& genome, double mutation_percent, RngStream& rng) {
  const std::size_t flips = mutation_flip_count(mutation_percent, genome.size());
  Genome out = genome;
  if (flips == 0) return out;
  std::vector<std::uint32_t> index(genome.size());
  std::iota(index.begin(), index.end(), 0u);
  for (std::size_t k = 0; k < flips; ++k) {
    const std::size_t pick = k + rng.below(genome.size() - k);
    std::swap(index[k], index[pick]);
    out.flip(index[k]);
  }
  return out;
}

/// One generation step: keep the top parents_mating individuals verbatim
/// (elitist), then fill the population back up with mutated crossover
/// offspring of parent pairs drawn uniformly with replacement. The returned
/// population holds the parents first, in rank order, so callers can carry
/// their cached fitness values forward.
inline std::vector<Genome> evolve_generation(const std::vector<Genome>& population,
                                             std::span<const double> fitnesses,
                                             const GAParams& params, GAStreams& streams) {
  params.validate();
  if (population.size() != fitnesses.size())
    throw std::invalid_argument("evolve_generation: population/fitness size mismatch");
  if (population.size() != static_cast<std::size_t>(params.population_size))
    throw std::invalid_argument("evolve_generation: population size does not match params");

  const std::vector<std::size_t> parents = select_parents(fitnesses, params.parents_mating);
  std::vector<Genome> next;
  next.reserve(population.size());
  for (std::size_t idx : parents) next.push_back(population[idx]);

  while (next.size() < population.size()) {
    const Genome& a = population[parents[streams.selection.below(parents.size())]];
    const Genome& b = population[parents[streams.selection.below(parents.size())]];
    auto [c1, c2] = crossover(a, b, params.crossover, streams.crossover);
    next.push_back(mutate(c1, params.mutation_percent, streams.mutation));
    if (next.size() < population.size())
      next.push_back(mutate(c2, params.mutation_percent, streams.mutation));
  }
  return next;
}

}  // namespace wflo
