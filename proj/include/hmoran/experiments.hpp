#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hmoran/graph.hpp"
#include "hmoran/rng.hpp"
#include "hmoran/select.hpp"

namespace hmoran {

/// r(u) = 1 and m(u) ~ U[1, m_max] independently; always mutant-biased.
FitnessGraph sample_fitness(const FitnessGraph& g, double m_max, Rng& rng);

struct ExperimentSpec {
  std::string dataset = "graph";
  /// Structure; its own fitness is used when m_max_grid is empty.
  FitnessGraph graph;
  std::vector<double> m_max_grid;
  std::vector<std::size_t> k_grid;
  std::vector<Method> methods;
  /// Runs of the final estimate per cell.
  std::size_t runs = kDefaultRuns;
  /// Runs per greedy oracle evaluation; zero means `runs`.
  std::size_t selection_runs = 0;
  std::uint64_t step_cap = 0;
  std::uint64_t master_seed = 0;
};

struct SweepRow {
  std::string dataset;
  Method method;
  std::size_t k;
  std::optional<double> m_max;  // empty for an explicit landscape
  FixationEstimate estimate;
  std::vector<NodeId> seeds;
};

/// One row per (method, k, m_max) cell in that order. Each landscape is sampled once
/// from the master seed, so every method sees the same fitness values, and every cell
/// is estimated with the same random streams.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

void validate(const ExperimentSpec& spec);

/// dataset,method,k,m_max,fp_hat,ci_low,ci_high,runs,capped,seed_set
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const FitnessGraph& g);

}  // namespace hmoran
