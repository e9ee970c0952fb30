#include "hmoran/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hmoran/error.hpp"
#include "hmoran/loopy.hpp"
#include "hmoran/moran.hpp"
#include "hmoran/rng.hpp"

namespace hmoran {

namespace {

std::vector<NodeId> members(std::uint64_t mask) {
  std::vector<NodeId> out;
  for (NodeId u = 0; mask != 0; ++u, mask >>= 1) {
    if (mask & 1ULL) out.push_back(u);
  }
  return out;
}

void require_table(std::span<const double> fp, std::size_t n) {
  if (n > 30 || fp.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::TooLarge, "fixation table must cover all 2^n configurations");
  }
}

Configuration random_subset(std::size_t n, Rng& rng, bool proper_nonempty) {
  while (true) {
    Configuration c(n);
    for (NodeId u = 0; u < n; ++u) {
      if (uniform01(rng) < 0.5) c.insert(u);
    }
    if (!proper_nonempty || !c.absorbing()) return c;
  }
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

Status Verdict::status() const {
  if (violation_count > 0) return Status::Fail;
  if (inconclusive_count > 0) return Status::Inconclusive;
  return Status::Pass;
}

void Verdict::record(Violation v) {
  ++violation_count;
  if (violations.size() < kMaxRecorded) violations.push_back(std::move(v));
}

void Verdict::merge(const Verdict& other) {
  instances_checked += other.instances_checked;
  comparisons += other.comparisons;
  violation_count += other.violation_count;
  inconclusive_count += other.inconclusive_count;
  worst_margin = std::max(worst_margin, other.worst_margin);
  for (const auto& v : other.violations) {
    if (violations.size() < kMaxRecorded) violations.push_back(v);
  }
}

Verdict check_monotonicity_table(std::span<const double> fp, std::size_t n, double tol) {
  require_table(fp, n);
  Verdict verdict;
  verdict.property = "monotone";
  verdict.tolerance = tol;
  verdict.instances_checked = 1;
  const std::uint64_t states = 1ULL << n;
  for (std::uint64_t big = 0; big < states; ++big) {
    // Every submask of `big`, including itself.
    for (std::uint64_t small = big;; small = (small - 1) & big) {
      if (small != big) {
        ++verdict.comparisons;
        const double margin = fp[small] - fp[big];
        verdict.worst_margin = std::max(verdict.worst_margin, margin);
        if (margin > tol) {
          verdict.record({verdict.instance, members(small), members(big), fp[small], fp[big]});
        }
      }
      if (small == 0) break;
    }
  }
  return verdict;
}

Verdict check_submodularity_table(std::span<const double> fp, std::size_t n, double tol,
                                  Direction direction) {
  require_table(fp, n);
  Verdict verdict;
  verdict.property = direction == Direction::Submodular ? "submodular" : "supermodular";
  verdict.tolerance = tol;
  verdict.instances_checked = 1;
  const std::uint64_t states = 1ULL << n;
  for (std::uint64_t s = 0; s < states; ++s) {
    for (std::uint64_t t = s + 1; t < states; ++t) {
      ++verdict.comparisons;
      const double split = fp[s] + fp[t];
      const double joined = fp[s | t] + fp[s & t];
      const double margin = direction == Direction::Submodular ? joined - split : split - joined;
      verdict.worst_margin = std::max(verdict.worst_margin, margin);
      if (margin > tol) {
        const bool sub = direction == Direction::Submodular;
        verdict.record({verdict.instance, members(s), members(t), sub ? split : joined,
                        sub ? joined : split});
      }
    }
  }
  return verdict;
}

Verdict check_monotonicity(const FitnessGraph& g, CheckMode mode, double tol,
                           const McCheckOptions& mc, const ExactOptions& exact) {
  if (mode == CheckMode::Exact) {
    const auto table = exact_all(g, exact);
    return check_monotonicity_table(table.fp, g.size(), tol);
  }
  Verdict verdict;
  verdict.property = "monotone";
  verdict.tolerance = tol;
  verdict.seed = mc.seed;
  verdict.instances_checked = 1;
  Rng rng = make_stream(mc.seed, 0);
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < mc.samples; ++i) {
    Configuration big = random_subset(n, rng, false);
    Configuration small = big;
    for (NodeId u : big.nodes()) {
      if (uniform01(rng) < 0.5) small.erase(u);
    }
    if (small == big) continue;
    const auto a = estimate_fp(g, small, mc.estimator);
    const auto b = estimate_fp(g, big, mc.estimator);
    ++verdict.comparisons;
    const double margin = a.fp_hat - b.fp_hat;
    verdict.worst_margin = std::max(verdict.worst_margin, margin);
    const double se = std::hypot(a.standard_error(), b.standard_error());
    if (margin > tol + 3.0 * se) {
      verdict.record({verdict.instance, small.nodes(), big.nodes(), a.fp_hat, b.fp_hat});
    } else if (margin > tol) {
      ++verdict.inconclusive_count;
    }
  }
  return verdict;
}

Verdict check_submodularity(const FitnessGraph& g, CheckMode mode, double tol,
                            const McCheckOptions& mc, const ExactOptions& exact) {
  Direction direction = Direction::Submodular;
  bool expected = true;
  if (!is_mutant_biased(g)) {
    if (is_resident_biased(g)) {
      direction = Direction::Supermodular;
    } else {
      expected = false;
    }
  }
  Verdict verdict;
  if (mode == CheckMode::Exact) {
    const auto table = exact_all(g, exact);
    verdict = check_submodularity_table(table.fp, g.size(), tol, direction);
  } else {
    verdict.property = direction == Direction::Submodular ? "submodular" : "supermodular";
    verdict.tolerance = tol;
    verdict.seed = mc.seed;
    verdict.instances_checked = 1;
    Rng rng = make_stream(mc.seed, 0);
    for (std::size_t i = 0; i < mc.samples; ++i) {
      const auto s = random_subset(g.size(), rng, false);
      const auto t = random_subset(g.size(), rng, false);
      Configuration uni(g.size()), inter(g.size());
      for (NodeId u = 0; u < g.size(); ++u) {
        uni.assign(u, s.contains(u) || t.contains(u));
        inter.assign(u, s.contains(u) && t.contains(u));
      }
      const auto es = estimate_fp(g, s, mc.estimator);
      const auto et = estimate_fp(g, t, mc.estimator);
      const auto eu = estimate_fp(g, uni, mc.estimator);
      const auto ei = estimate_fp(g, inter, mc.estimator);
      const double split = es.fp_hat + et.fp_hat;
      const double joined = eu.fp_hat + ei.fp_hat;
      const double margin = direction == Direction::Submodular ? joined - split : split - joined;
      const double se = std::sqrt(std::pow(es.standard_error(), 2) + std::pow(et.standard_error(), 2) +
                                  std::pow(eu.standard_error(), 2) + std::pow(ei.standard_error(), 2));
      ++verdict.comparisons;
      verdict.worst_margin = std::max(verdict.worst_margin, margin);
      if (margin > tol + 3.0 * se) {
        verdict.record({verdict.instance, s.nodes(), t.nodes(), split, joined});
      } else if (margin > tol) {
        ++verdict.inconclusive_count;
      }
    }
  }
  verdict.expected_to_hold = expected;
  return verdict;
}

Verdict check_loopy_equivalence(const FitnessGraph& g, double tol, const ExactOptions& exact) {
  const auto base = exact_all(g, exact);
  const auto loopy = exact_all_loopy(loopy_kernel(g), exact);
  Verdict verdict;
  verdict.property = "loopy";
  verdict.tolerance = tol;
  verdict.instances_checked = 1;
  for (std::uint64_t mask = 0; mask < base.fp.size(); ++mask) {
    ++verdict.comparisons;
    const double diff = std::abs(base.fp[mask] - loopy.fp[mask]);
    verdict.worst_margin = std::max(verdict.worst_margin, diff);
    if (diff >= tol) {
      verdict.record({verdict.instance, members(mask), members(mask), base.fp[mask], loopy.fp[mask]});
    }
  }
  return verdict;
}

Verdict check_time_bound(const FitnessGraph& g, std::size_t runs, std::size_t seed_sets,
                         std::uint64_t master_seed) {
  const auto bound = static_cast<double>(biased_step_bound(g));  // throws NotApplicable
  Verdict verdict;
  verdict.property = "timebound";
  verdict.seed = master_seed;
  verdict.instances_checked = 1;
  if (g.size() < 2) return verdict;
  Rng rng = make_stream(master_seed, 0x7157);
  for (std::size_t i = 0; i < seed_sets; ++i) {
    const auto seed = random_subset(g.size(), rng, true);
    EstimatorConfig config;
    config.fixed_runs = runs;
    config.master_seed = stream_seed(master_seed, i);
    const auto est = estimate_fp(g, seed, config);
    ++verdict.comparisons;
    verdict.worst_margin = std::max(verdict.worst_margin, est.mean_steps - bound);
    if (est.capped_runs > 0 || est.mean_steps > bound) {
      verdict.record({verdict.instance, seed.nodes(), {}, est.mean_steps, bound});
    }
  }
  return verdict;
}

}  // namespace hmoran
