#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hmoran/graph.hpp"

namespace hmoran {

/// Set Cover instance (U, S, k); the universe is the union of the sets.
struct SetCoverInstance {
  std::vector<int> universe;  // sorted
  std::vector<std::vector<int>> sets;
  std::size_t k = 0;

  std::size_t node_count() const noexcept { return sets.size() + universe.size(); }
};

/// Validates sets (non-empty) and derives the universe.
SetCoverInstance make_instance(std::vector<std::vector<int>> sets, std::size_t k);

enum class Regime { General, MutantBiased };

/// Mutant fitness x on set nodes and y on element nodes. x can be far outside double
/// range, so it is carried as ln x; `x_power` keeps the exact form base^exponent when
/// one exists.
struct ReductionParams {
  double log_x = 0.0;
  double y = 1.0;
  Regime regime = Regime::General;
  struct Power {
    double base;
    double exponent;
  };
  std::optional<Power> x_power;

  double x() const;
};

/// Set nodes first (ids 0..|S|-1, labels S1..), then element nodes in universe order
/// (labels e<element>). Arcs: set -> each member, element -> every set; w = 1/d(u);
/// r = 1; m = x on sets and y on elements.
FitnessGraph build_reduction_graph(const SetCoverInstance& instance, const ReductionParams& params);

/// Parameters for the general regime at total node count n, 0 < eps < 1/2: y from the
/// not-a-cover bound, x from the cover bound, then checked against both bounds.
ReductionParams params_general(std::size_t n, double eps);

/// y = 1 and x = n^(2n+7).
ReductionParams params_mutant_biased(std::size_t n);

/// Closed-form fixation bounds at total node count n. Complements and logs are kept
/// alongside the values because the interesting ones sit within 1e-15 of 1.
struct GadgetBounds {
  double upper_if_not_cover;  // 1 - q^n, q = (1/n) / (1/n + (n-1) y)
  double log_not_cover_escape;  // n ln q = ln(1 - upper)
  double lower_if_cover;        // (q' p* / (1 - (1 - q') p*))^n
  double log_lower_if_cover;
  double cover_gap;  // 1 - lower
};

GadgetBounds gadget_bounds(std::size_t n, double log_x, double y);

/// q p / (1 - (1 - q) p): absorption probability into the success state of the
/// four-state chain where the covering state advances with probability p and the
/// saturated state adds a set with probability q or falls back.
double cover_chain_absorption(double q, double p_star);

/// Lower bound on losing every set-node mutant from a configuration with an uncovered
/// resident element: ((1/n) / (1/n + (n-1) y))^|V1|.
double uncovered_extinction_bound(std::size_t n, std::size_t set_nodes, double y);

/// Lower bound on saturating every element from a covering configuration:
/// ((x/n) / (x/n + n))^|V2|.
double cover_saturation_bound(std::size_t n, std::size_t element_nodes, double log_x);

/// ln(1 + 1/zeta) and its lower bound 1/(zeta + 1).
struct LogBound {
  double value;
  double bound;
};
LogBound log_lower_bound(double zeta);

/// (1 / (1 + beta))^n; at least p whenever beta <= ln(1/p) / n.
double prob_bound_value(double beta, std::size_t n);

/// True iff the chosen sets (indices into instance.sets) cover the universe.
bool is_cover(const SetCoverInstance& instance, std::span<const NodeId> chosen);

}  // namespace hmoran
