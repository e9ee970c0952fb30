#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hmoran/estimator.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/graph.hpp"

namespace hmoran {

enum class CheckMode { Exact, MonteCarlo };
enum class Status { Pass, Fail, Inconclusive };
enum class Direction { Submodular, Supermodular };

std::string_view to_string(Status status);

struct Violation {
  std::string instance;
  std::vector<NodeId> first;   // S
  std::vector<NodeId> second;  // S' (monotone) or T (submodular)
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of a property sweep. Only the first kMaxRecorded witnesses are stored;
/// `violation_count` counts all of them.
struct Verdict {
  static constexpr std::size_t kMaxRecorded = 32;

  std::string property;
  std::string instance;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::size_t instances_checked = 0;
  std::size_t comparisons = 0;
  std::size_t violation_count = 0;
  std::size_t inconclusive_count = 0;
  std::vector<Violation> violations;
  /// Largest observed lhs - rhs (the amount by which the inequality is violated, or
  /// minus the slack when it holds).
  double worst_margin = -1e300;
  /// False when the property is not guaranteed for this instance class (e.g.
  /// submodularity on graphs that are neither mutant- nor resident-biased).
  bool expected_to_hold = true;

  Status status() const;
  bool passed() const { return status() == Status::Pass; }
  void record(Violation v);
  void merge(const Verdict& other);
};

/// Exhaustive S subset-of S' check of fp(S) <= fp(S') + tol over a 2^n table.
Verdict check_monotonicity_table(std::span<const double> fp, std::size_t n, double tol);

/// Exhaustive S, T check of fp(S) + fp(T) >= fp(S u T) + fp(S n T) - tol (submodular)
/// or the reversed inequality (supermodular).
Verdict check_submodularity_table(std::span<const double> fp, std::size_t n, double tol,
                                  Direction direction);

struct McCheckOptions {
  std::size_t samples = 64;
  EstimatorConfig estimator;
  std::uint64_t seed = 1;
};

Verdict check_monotonicity(const FitnessGraph& g, CheckMode mode, double tol = 1e-9,
                           const McCheckOptions& mc = {}, const ExactOptions& exact = {});

/// Direction follows the landscape: submodular on mutant-biased graphs, supermodular on
/// resident-biased ones; other graphs are checked for submodularity with
/// expected_to_hold = false.
Verdict check_submodularity(const FitnessGraph& g, CheckMode mode, double tol = 1e-9,
                            const McCheckOptions& mc = {}, const ExactOptions& exact = {});

/// max over seed sets of |fp_base - fp_loopy| against `tol`.
Verdict check_loopy_equivalence(const FitnessGraph& g, double tol = 1e-10,
                                const ExactOptions& exact = {});

/// Empirical mean absorption time over `runs` trajectories against the expected-time
/// bound, for `seed_sets` random non-trivial seed sets.
Verdict check_time_bound(const FitnessGraph& g, std::size_t runs, std::size_t seed_sets,
                         std::uint64_t master_seed);

}  // namespace hmoran
