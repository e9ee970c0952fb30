#include "hmoran/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "hmoran/error.hpp"
#include "hmoran/moran.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

namespace {

constexpr double kZ95 = 1.959963984540054;

void validate(const EstimatorConfig& config) {
  if (config.epsilon && !(*config.epsilon > 0.0 && *config.epsilon < 1.0)) {
    throw Error(ErrorCode::BadInput, fmt::format("epsilon {} not in (0,1)", *config.epsilon));
  }
  if (config.delta && !(*config.delta > 0.0 && *config.delta < 1.0)) {
    throw Error(ErrorCode::BadInput, fmt::format("delta {} not in (0,1)", *config.delta));
  }
  if (config.fixed_runs && *config.fixed_runs == 0) {
    throw Error(ErrorCode::BadInput, "fixed_runs must be positive");
  }
}

struct Tally {
  std::size_t fixations = 0;
  std::size_t capped = 0;
  std::uint64_t steps = 0;
};

FixationEstimate finish(const Tally& tally, std::size_t runs, const EstimatorConfig& config) {
  FixationEstimate est;
  est.runs = runs;
  est.fixations = tally.fixations;
  est.capped_runs = tally.capped;
  const std::size_t completed = runs - tally.capped;
  if (completed == 0) {
    throw Error(ErrorCode::AllRunsCapped,
                fmt::format("all {} runs hit the step cap", runs));
  }
  est.fp_hat = static_cast<double>(tally.fixations) / static_cast<double>(completed);
  est.mean_steps = static_cast<double>(tally.steps) / static_cast<double>(completed);
  const double z = config.delta ? normal_quantile_two_sided(*config.delta) : kZ95;
  std::tie(est.ci_low, est.ci_high) = wilson_interval(tally.fixations, completed, z);
  est.ci_low = std::min(est.ci_low, est.fp_hat);
  est.ci_high = std::max(est.ci_high, est.fp_hat);
  return est;
}

std::optional<FixationEstimate> trivial(const FitnessGraph& g, const Configuration& seed,
                                        std::size_t runs) {
  if (seed.universe_size() != g.size()) {
    throw Error(ErrorCode::BadInput, "seed configuration does not match graph size");
  }
  if (!seed.absorbing()) return std::nullopt;
  FixationEstimate est;
  est.runs = runs;
  if (seed.is_full()) {
    est.fp_hat = est.ci_low = est.ci_high = 1.0;
    est.fixations = runs;
  }
  return est;
}

}  // namespace

double FixationEstimate::standard_error() const {
  const auto m = static_cast<double>(completed_runs());
  if (m == 0.0) return 0.0;
  return std::sqrt(fp_hat * (1.0 - fp_hat) / m);
}

std::size_t sample_budget(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::BadInput, "sample_budget needs epsilon, delta in (0,1)");
  }
  const double n = std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

std::size_t planned_runs(const EstimatorConfig& config) {
  validate(config);
  if (config.fixed_runs) return *config.fixed_runs;
  if (config.epsilon || config.delta) {
    return sample_budget(config.epsilon.value_or(0.01), config.delta.value_or(0.05));
  }
  return kDefaultRuns;
}

std::uint64_t biased_step_bound(const FitnessGraph& g, std::uint64_t ceiling) {
  if (g.directed() || !is_mutant_biased(g)) {
    throw Error(ErrorCode::NotApplicable,
                "the expected-time bound needs an undirected mutant-biased graph");
  }
  const auto s = summary(g);
  const auto n = static_cast<double>(g.size());
  const double base = n * n * s.m_max / s.r_min;
  const double bound = std::ceil(base * base * base);
  if (!(bound < static_cast<double>(ceiling))) return ceiling;
  return static_cast<std::uint64_t>(bound);
}

std::uint64_t default_step_cap(const FitnessGraph& g) {
  constexpr std::uint64_t kBiasedCeiling = 1'000'000'000ULL;
  constexpr std::uint64_t kGeneralCap = 100'000'000ULL;
  if (!g.directed() && is_mutant_biased(g)) return biased_step_bound(g, kBiasedCeiling);
  return kGeneralCap;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const auto m = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / m;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / m;
  const double centre = (p + z2 / (2.0 * m)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double normal_quantile_two_sided(double delta) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 1.0 - delta / 2.0);
}

FixationEstimate estimate_fp(const FitnessGraph& g, const Configuration& seed,
                             const EstimatorConfig& config) {
  const std::size_t runs = planned_runs(config);
  if (auto t = trivial(g, seed, runs)) return *t;
  const std::uint64_t cap = config.step_cap ? config.step_cap : default_step_cap(g);

  std::size_t fixations = 0;
  std::size_t capped = 0;
  std::uint64_t steps = 0;
  const auto total = static_cast<std::int64_t>(runs);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : fixations, capped, steps)
  for (std::int64_t i = 0; i < total; ++i) {
    Rng rng = make_stream(config.master_seed, static_cast<std::uint64_t>(i));
    const auto stats = run_to_absorption(g, seed, rng, cap);
    if (stats.capped()) {
      ++capped;
    } else {
      fixations += stats.fixed() ? 1 : 0;
      steps += stats.steps;
    }
  }
  return finish({fixations, capped, steps}, runs, config);
}

FixationEstimate estimate_fp_serial(const FitnessGraph& g, const Configuration& seed,
                                    const EstimatorConfig& config) {
  const std::size_t runs = planned_runs(config);
  if (auto t = trivial(g, seed, runs)) return *t;
  const std::uint64_t cap = config.step_cap ? config.step_cap : default_step_cap(g);

  Tally tally;
  for (std::size_t i = 0; i < runs; ++i) {
    Rng rng = make_stream(config.master_seed, i);
    const auto stats = run_to_absorption(g, seed, rng, cap);
    if (stats.capped()) {
      ++tally.capped;
    } else {
      tally.fixations += stats.fixed() ? 1 : 0;
      tally.steps += stats.steps;
    }
  }
  return finish(tally, runs, config);
}

}  // namespace hmoran
