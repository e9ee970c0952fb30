#pragma once

#include <cstddef>
#include <string>

#include "hmoran/graph.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

enum class FitnessRegime { Neutral, MutantBiased, ResidentBiased, Arbitrary };

struct RandomGraphOptions {
  std::size_t n = 6;
  bool directed = false;
  /// Probability of each extra edge beyond the connectivity backbone.
  double edge_probability = 0.4;
  FitnessRegime regime = FitnessRegime::MutantBiased;
  /// Upper bound of m/r (or r/m for resident-biased landscapes).
  double max_ratio = 2.0;
};

/// Random strongly connected fitness graph. Undirected graphs grow from a random
/// spanning tree; directed graphs from a random Hamiltonian cycle with random positive
/// weights. Neutral landscapes use m(u) = r(u) with node-dependent values.
FitnessGraph random_fitness_graph(const RandomGraphOptions& options, Rng& rng);

std::string describe(const RandomGraphOptions& options);

// Undirected neutral graphs with unit fitness.
FitnessGraph complete_graph(std::size_t n);
FitnessGraph star_graph(std::size_t n);  // node 0 is the centre
FitnessGraph cycle_graph(std::size_t n);
FitnessGraph path_graph(std::size_t n);

}  // namespace hmoran
