#pragma once

#include <cstdint>
#include <vector>

#include "hmoran/configuration.hpp"
#include "hmoran/graph.hpp"
#include "hmoran/moran.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

/// Configuration-dependent reweighting with uniform unit fitness: a node reproduces with
/// probability 1/n and keeps the offspring on itself with probability
/// 1 - f_X(u)/f_max, otherwise it follows w(u,.).
///
/// Holds a pointer to the base graph, which must outlive the kernel.
class LoopyKernel {
 public:
  explicit LoopyKernel(const FitnessGraph& g);

  const FitnessGraph& base() const noexcept { return *graph_; }
  double f_max() const noexcept { return f_max_; }

  /// w_X(u, v) when u is of the given type; includes the u == v self-loop.
  double weight(bool u_mutant, NodeId u, NodeId v) const;
  double weight(const Configuration& x, NodeId u, NodeId v) const {
    return weight(x.contains(u), u, v);
  }
  double self_loop(bool u_mutant, NodeId u) const { return weight(u_mutant, u, u); }

 private:
  const FitnessGraph* graph_;
  double f_max_;
};

LoopyKernel loopy_kernel(const FitnessGraph& g);

StepOutcome loopy_step(const LoopyKernel& kernel, Configuration& x, Rng& rng);

/// Loopy analogue of transition_row.
std::vector<Transition> loopy_transition_row(const LoopyKernel& kernel, std::uint64_t mask);

/// Propagation graphs for mutant and resident sources. Row u lists the self-loop
/// first, followed by the out-arcs of u in the base graph.
struct TwoGraphsView {
  std::vector<std::vector<Arc>> mutant_rows;
  std::vector<std::vector<Arc>> resident_rows;
};

TwoGraphsView export_two_graphs(const LoopyKernel& kernel);

}  // namespace hmoran
