#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hmoran {

using NodeId = std::uint32_t;

struct Arc {
  NodeId target;
  double weight;
};

struct InArc {
  NodeId source;
  double weight;
};

struct WeightedEdge {
  NodeId from;
  NodeId to;
  double weight = 1.0;
};

struct FitnessSummary {
  double m_max;
  double r_min;
  double f_max;
};

/// Weighted directed population structure with per-node mutant/resident fitness.
///
/// Out-weights of every node form a probability distribution, the arc relation is
/// strongly connected and self-loops are never stored. Immutable once built; share
/// freely across threads.
class FitnessGraph {
 public:
  std::size_t size() const noexcept { return mutant_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool directed() const noexcept { return directed_; }

  std::span<const Arc> out_arcs(NodeId u) const {
    return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
  }
  std::span<const InArc> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  /// w(u, v), zero when the arc is absent.
  double weight(NodeId u, NodeId v) const;

  /// Maps a uniform draw in [0,1) to an out-neighbour of `u` distributed as w(u,.).
  NodeId sample_target(NodeId u, double uniform) const;

  double mutant_fitness(NodeId u) const { return mutant_[u]; }
  double resident_fitness(NodeId u) const { return resident_[u]; }
  std::span<const double> mutant_fitness() const noexcept { return mutant_; }
  std::span<const double> resident_fitness() const noexcept { return resident_; }

  std::string label(NodeId u) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Same structure with a different fitness landscape; validates the new vectors.
  FitnessGraph with_fitness(std::vector<double> m, std::vector<double> r) const;

  friend FitnessGraph build_graph(std::span<const WeightedEdge> edges, bool directed,
                                  std::vector<double> m, std::vector<double> r,
                                  std::vector<std::string> labels);

 private:
  bool directed_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> in_offsets_;
  std::vector<InArc> in_arcs_;
  std::vector<double> mutant_;
  std::vector<double> resident_;
  std::vector<std::string> labels_;
};

/// Validating constructor. The node count is taken from the fitness vectors.
///
/// Undirected input: each edge {u,v} yields both arcs and weights are recomputed as
/// 1/d(u); supplied weights are ignored and repeated edges collapse. Directed input:
/// zero weights are dropped and per-node sums within 1e-9 of one are renormalized.
FitnessGraph build_graph(std::span<const WeightedEdge> edges, bool directed,
                         std::vector<double> m, std::vector<double> r,
                         std::vector<std::string> labels = {});

bool is_mutant_biased(const FitnessGraph& g);
bool is_resident_biased(const FitnessGraph& g);
bool is_neutral(const FitnessGraph& g);

/// Positional process: r = 1 everywhere, m = 1 + delta on `active`, 1 elsewhere.
FitnessGraph make_positional(const FitnessGraph& base, std::span<const NodeId> active,
                             double delta);

FitnessSummary summary(const FitnessGraph& g);

// Connectivity over an arc list on nodes [0, n).
bool is_strongly_connected(std::size_t n, std::span<const WeightedEdge> arcs);

/// Component id per node (Tarjan); ids are dense.
std::vector<std::uint32_t> strongly_connected_components(std::size_t n,
                                                         std::span<const WeightedEdge> arcs);

}  // namespace hmoran
