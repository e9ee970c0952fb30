#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hmoran/configuration.hpp"
#include "hmoran/graph.hpp"
#include "hmoran/loopy.hpp"

namespace hmoran {

struct ExactOptions {
  /// Dense LU up to this many nodes; preconditioned BiCGSTAB (sparse LU fallback) above.
  std::size_t dense_cap = 8;
  std::size_t max_nodes = 20;
  bool expected_steps = false;
  bool parallel_assembly = true;
  double iterative_tolerance = 1e-12;
};

/// Fixation probabilities (and optionally expected absorption times) for every seed
/// set, indexed by configuration bit mask.
struct ExactResult {
  std::size_t n = 0;
  std::vector<double> fp;
  std::vector<double> expected_steps;

  double fp_of(const Configuration& x) const { return fp[x.mask()]; }
  double fp_of(std::uint64_t mask) const { return fp[mask]; }
};

/// Absorbing-chain solve over all 2^n configurations of the birth-death chain.
ExactResult exact_all(const FitnessGraph& g, const ExactOptions& options = {});

/// Same system assembled from the loopy kernel's transition rows.
ExactResult exact_all_loopy(const LoopyKernel& kernel, const ExactOptions& options = {});

double exact_fixation(const FitnessGraph& g, const Configuration& seed,
                      const ExactOptions& options = {});

/// sum_{u in S} f(u)/d(u) / sum_v f(v)/d(v) with f = m = r; requires an undirected
/// neutral graph. With unit fitness this is the degree formula.
double neutral_closed_form(const FitnessGraph& g, const Configuration& seed);

struct SeedOptimum {
  Configuration seeds;
  double fp = 0.0;
};

/// Best seed set of size at most k over a precomputed fixation table. Ties go to the
/// lexicographically smallest sorted node sequence.
SeedOptimum exhaustive_opt(std::span<const double> fp_table, std::size_t n, std::size_t k);

SeedOptimum exhaustive_opt(const FitnessGraph& g, std::size_t k,
                           const ExactOptions& options = {});

}  // namespace hmoran
