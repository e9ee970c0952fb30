#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hmoran/centrality.hpp"
#include "hmoran/configuration.hpp"
#include "hmoran/estimator.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/graph.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

enum class Method { Greedy, Random, Degree, Closeness, PageRank };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct SelectionResult {
  std::vector<NodeId> seeds;  // in selection order
  std::vector<double> gains;  // greedy only: marginal fp of each pick
  Method method = Method::Greedy;
  std::optional<FixationEstimate> fp_final;
};

/// Fixation probability oracle used by greedy selection.
class FixationOracle {
 public:
  virtual ~FixationOracle() = default;

  virtual double evaluate(const Configuration& seeds) const = 0;
  virtual FixationEstimate estimate(const Configuration& seeds) const = 0;

  /// fp(base + u) for every candidate u.
  virtual std::vector<double> evaluate_extensions(const Configuration& base,
                                                  std::span<const NodeId> candidates) const;
};

/// Table lookup into one absorbing-chain solve.
class ExactOracle final : public FixationOracle {
 public:
  explicit ExactOracle(const FitnessGraph& g, const ExactOptions& options = {});
  explicit ExactOracle(ExactResult table) : table_(std::move(table)) {}

  double evaluate(const Configuration& seeds) const override { return table_.fp_of(seeds); }
  FixationEstimate estimate(const Configuration& seeds) const override;
  const ExactResult& table() const noexcept { return table_; }

 private:
  ExactResult table_;
};

/// Monte Carlo oracle. Every evaluation uses the same master seed, so candidates in a
/// round are compared under common random numbers.
class MonteCarloOracle final : public FixationOracle {
 public:
  MonteCarloOracle(const FitnessGraph& g, EstimatorConfig config)
      : graph_(&g), config_(config) {}

  double evaluate(const Configuration& seeds) const override { return estimate(seeds).fp_hat; }
  FixationEstimate estimate(const Configuration& seeds) const override;
  /// Candidates spread over OpenMP threads, each estimated serially.
  std::vector<double> evaluate_extensions(const Configuration& base,
                                          std::span<const NodeId> candidates) const override;

 private:
  const FitnessGraph* graph_;
  EstimatorConfig config_;
};

struct GreedyOptions {
  /// Lazy (CELF) evaluation; used only when the graph is mutant-biased.
  bool lazy = true;
  /// Stale bounds within this margin of the best fresh gain are re-evaluated before a
  /// pick is accepted, so rounding cannot reorder near-ties.
  double tie_margin = 1e-12;
};

SelectionResult greedy_select(const FitnessGraph& g, std::size_t k, const FixationOracle& oracle,
                              const GreedyOptions& options = {});

SelectionResult baseline_random(const FitnessGraph& g, std::size_t k, Rng& rng);
SelectionResult baseline_min_degree(const FitnessGraph& g, std::size_t k);
SelectionResult baseline_min_closeness(const FitnessGraph& g, std::size_t k);
SelectionResult baseline_min_pagerank(const FitnessGraph& g, std::size_t k,
                                      const PageRankOptions& options = {});

/// The k nodes with the smallest score, ties by node id.
std::vector<NodeId> k_smallest(std::span<const double> score, std::size_t k);

}  // namespace hmoran
