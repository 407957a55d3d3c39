#include "czek/seriation.hpp"

#include <algorithm>

namespace czek {

namespace {

using Genome = std::vector<Index>;

// Order crossover: keep first[lo..hi], fill the rest with the missing genes
// in the order they appear in `second`, starting right after `hi`.
Genome order_crossover(const Genome& first, const Genome& second, Rng& rng) {
  const auto n = static_cast<Index>(first.size());
  Index lo = rng.below(n);
  Index hi = rng.below(n);
  if (lo > hi) std::swap(lo, hi);

  Genome child(first.size(), -1);
  std::vector<bool> taken(first.size(), false);
  for (Index p = lo; p <= hi; ++p) {
    child[static_cast<std::size_t>(p)] = first[static_cast<std::size_t>(p)];
    taken[static_cast<std::size_t>(first[static_cast<std::size_t>(p)])] = true;
  }
  Index write = (hi + 1) % n;
  for (Index k = 0; k < n; ++k) {
    const Index gene = second[static_cast<std::size_t>((hi + 1 + k) % n)];
    if (taken[static_cast<std::size_t>(gene)]) continue;
    child[static_cast<std::size_t>(write)] = gene;
    write = (write + 1) % n;
  }
  return child;
}

}  // namespace

GaResult run_genetic(const DistanceMatrix& w, const GaParams& params, std::uint64_t seed) {
  if (params.population_size < 2) throw ValidationError("GA population must hold at least 2");
  if (params.generations < 0 || params.stagnation_limit < 1) {
    throw ValidationError("GA generation budget must be positive");
  }
  const Index n = w.size();
  const auto pop_size = static_cast<std::size_t>(params.population_size);
  Rng rng(seed);

  auto fitness = [&](const Genome& g) { return um_factor(w.values(), g); };

  std::vector<Genome> population;
  population.reserve(pop_size);
  const Permutation identity = Permutation::identity(n);
  population.emplace_back(identity.indices().begin(), identity.indices().end());
  while (population.size() < pop_size) population.push_back(rng.permutation(n));

  std::vector<double> score(pop_size);
  for (std::size_t k = 0; k < pop_size; ++k) score[k] = fitness(population[k]);

  auto elite_index = [&] {
    return static_cast<std::size_t>(std::min_element(score.begin(), score.end()) - score.begin());
  };
  auto tournament = [&]() -> const Genome& {
    const auto a = static_cast<std::size_t>(rng.below(params.population_size));
    const auto b = static_cast<std::size_t>(rng.below(params.population_size));
    return score[b] < score[a] ? population[b] : population[a];
  };

  GaResult result;
  std::size_t elite = elite_index();
  Genome best = population[elite];
  double best_score = score[elite];
  result.best_um_per_generation.push_back(best_score);

  int stagnant = 0;
  for (int gen = 0; gen < params.generations && stagnant < params.stagnation_limit; ++gen) {
    std::vector<Genome> next;
    next.reserve(pop_size);
    next.push_back(population[elite]);
    while (next.size() < pop_size) {
      const Genome& first = tournament();
      const Genome& second = tournament();
      Genome child = rng.unit() < params.crossover_prob ? order_crossover(first, second, rng) : first;
      if (n > 1 && rng.unit() < params.mutation_prob) {
        const Index p = rng.below(n);
        const Index q = (p + 1 + rng.below(n - 1)) % n;
        std::swap(child[static_cast<std::size_t>(p)], child[static_cast<std::size_t>(q)]);
      }
      next.push_back(std::move(child));
    }
    population = std::move(next);
    // Fitness is evaluated after every random draw of the generation, so it
    // could be parallelized without changing results.
    for (std::size_t k = 0; k < pop_size; ++k) score[k] = fitness(population[k]);

    elite = elite_index();
    if (score[elite] < best_score) {
      best_score = score[elite];
      best = population[elite];
      stagnant = 0;
    } else {
      ++stagnant;
    }
    result.best_um_per_generation.push_back(best_score);
  }
  result.best = Permutation(std::move(best));
  return result;
}

Permutation seriate_ga(const DistanceMatrix& w, const GaParams& params, std::uint64_t seed) {
  return run_genetic(w, params, seed).best;
}

}  // namespace czek
