#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hmoran/configuration.hpp"
#include "hmoran/graph.hpp"

namespace hmoran {

/// Run count used when neither (epsilon, delta) nor a fixed run count is given.
inline constexpr std::size_t kDefaultRuns = 5000;

struct EstimatorConfig {
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<std::size_t> fixed_runs;
  /// Zero selects default_step_cap(g).
  std::uint64_t step_cap = 0;
  std::uint64_t master_seed = 0;
};

struct FixationEstimate {
  double fp_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t runs = 0;
  std::size_t fixations = 0;
  std::size_t capped_runs = 0;
  double mean_steps = 0.0;

  std::size_t completed_runs() const noexcept { return runs - capped_runs; }
  /// Binomial standard error of fp_hat over completed runs.
  double standard_error() const;
};

/// Hoeffding run count: ceil(ln(2/delta) / (2 eps^2)), at least 1.
std::size_t sample_budget(double epsilon, double delta);

/// Runs requested by `config`: fixed_runs, else the Hoeffding budget, else kDefaultRuns.
std::size_t planned_runs(const EstimatorConfig& config);

/// (n^2 m_max / r_min)^3, saturating at `ceiling`. Undirected mutant-biased graphs only.
std::uint64_t biased_step_bound(const FitnessGraph& g,
                                std::uint64_t ceiling = 1'000'000'000'000'000'000ULL);

/// min(1e9, biased_step_bound) where that bound applies, 1e8 otherwise.
std::uint64_t default_step_cap(const FitnessGraph& g);

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z);

/// z for a two-sided interval of confidence 1 - delta.
double normal_quantile_two_sided(double delta);

/// Monte Carlo fixation estimate; run i uses the stream (master_seed, i) and runs are
/// spread over OpenMP threads. The result does not depend on the thread count.
FixationEstimate estimate_fp(const FitnessGraph& g, const Configuration& seed,
                             const EstimatorConfig& config);

/// Single-threaded reference of estimate_fp; produces identical results.
FixationEstimate estimate_fp_serial(const FitnessGraph& g, const Configuration& seed,
                                    const EstimatorConfig& config);

}  // namespace hmoran
