#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hmoran/configuration.hpp"
#include "hmoran/graph.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

struct StepOutcome {
  NodeId reproducer;
  NodeId target;
  bool changed;
};

enum class Outcome { Fixation, Extinction, CapHit };

struct TrajectoryStats {
  Outcome outcome = Outcome::Extinction;
  std::uint64_t steps = 0;
  std::vector<double> potential_trace;

  bool fixed() const noexcept { return outcome == Outcome::Fixation; }
  bool capped() const noexcept { return outcome == Outcome::CapHit; }
};

struct TraceOptions {
  bool record_potential = false;
  /// Record every `stride`-th step (plus the initial and final configuration).
  std::uint64_t stride = 1;
};

/// f_X(u): m(u) for mutants, r(u) for residents.
inline double fitness_of(const FitnessGraph& g, const Configuration& x, NodeId u) {
  return x.contains(u) ? g.mutant_fitness(u) : g.resident_fitness(u);
}

/// One birth-death step applied to `x` in place. O(n): recomputes the total fitness.
/// Reference path; trajectories use MoranSimulator.
StepOutcome step(const FitnessGraph& g, Configuration& x, Rng& rng);

/// Incremental simulator: keeps a Fenwick tree over node fitness so each step costs
/// O(log n) for the reproducer draw and O(log d) for the target draw.
class MoranSimulator {
 public:
  explicit MoranSimulator(const FitnessGraph& g);

  void reset(const Configuration& seed);
  StepOutcome step(Rng& rng);

  const Configuration& state() const noexcept { return state_; }
  double total_fitness() const noexcept { return total_; }

 private:
  void set_fitness(NodeId u, double value);
  void rebuild();
  NodeId find(double target) const;

  const FitnessGraph* graph_;
  Configuration state_;
  std::vector<double> fitness_;
  std::vector<double> tree_;
  double total_ = 0.0;
  std::uint64_t since_rebuild_ = 0;
  std::size_t top_bit_ = 1;
};

/// Runs until X is empty or full, or `step_cap` steps elapse (CapHit).
TrajectoryStats run_to_absorption(const FitnessGraph& g, const Configuration& seed, Rng& rng,
                                  std::uint64_t step_cap, const TraceOptions& trace = {});

/// Phi(X) = sum over mutants of m(u)/d(u); undirected graphs only.
double potential_phi(const FitnessGraph& g, const Configuration& x);

/// Exact one-step expectation of Phi(X_{t+1}) - Phi(X_t) from X.
double expected_potential_drift(const FitnessGraph& g, const Configuration& x);

/// One entry of a one-step transition row over mask-encoded configurations.
struct Transition {
  std::uint64_t next;
  double probability;
};

/// Transition row of the birth-death chain from `mask` (n <= 64). One entry per
/// distinct next configuration; the unchanged configuration comes first.
std::vector<Transition> transition_row(const FitnessGraph& g, std::uint64_t mask);

}  // namespace hmoran
