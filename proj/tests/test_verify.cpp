#include <doctest.h>

#include "hmoran/error.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/generators.hpp"
#include "hmoran/verify.hpp"

using namespace hmoran;

namespace {

FitnessGraph graph_for(std::uint64_t stream, std::size_t n, bool directed, FitnessRegime regime) {
  Rng rng = make_stream(4242, stream);
  RandomGraphOptions options;
  options.n = n;
  options.directed = directed;
  options.regime = regime;
  options.max_ratio = 3.0;
  return random_fitness_graph(options, rng);
}

}  // namespace

TEST_CASE("monotonicity") {
  SUBCASE("neutral K3") {
    const auto v = check_monotonicity(complete_graph(3), CheckMode::Exact);
    CHECK(v.passed());
    CHECK(v.comparisons == 27 - 8);  // 3^n pairs S subset-of S' minus the n-fold diagonal
    CHECK(v.violations.empty());
  }
  SUBCASE("random graphs up to n = 6") {
    for (std::uint64_t s = 0; s < 12; ++s) {
      const auto g = graph_for(s, 2 + s % 5, s % 2 == 1, static_cast<FitnessRegime>(s % 4));
      CHECK(check_monotonicity(g, CheckMode::Exact).passed());
    }
  }
  SUBCASE("a corrupted table is caught with a witness") {
    auto table = exact_all(cycle_graph(4)).fp;
    table[0b0111] = table[0b0011] - 0.01;
    const auto v = check_monotonicity_table(table, 4, 1e-9);
    CHECK(v.status() == Status::Fail);
    REQUIRE_FALSE(v.violations.empty());
    bool found = false;
    for (const auto& w : v.violations) {
      found = found || (w.first == std::vector<NodeId>{0, 1} && w.second == std::vector<NodeId>{0, 1, 2});
    }
    CHECK(found);
    CHECK(v.worst_margin == doctest::Approx(0.01));
  }
  SUBCASE("Monte Carlo mode raises no false alarms") {
    const auto g = graph_for(77, 6, false, FitnessRegime::MutantBiased);
    McCheckOptions mc;
    mc.samples = 12;
    mc.estimator.fixed_runs = 400;
    const auto v = check_monotonicity(g, CheckMode::MonteCarlo, 1e-9, mc);
    CHECK(v.status() != Status::Fail);
    CHECK(v.comparisons > 0);
  }
}

TEST_CASE("submodularity") {
  SUBCASE("neutral graphs are modular") {
    const auto g = graph_for(1, 6, false, FitnessRegime::Neutral);
    const auto sub = check_submodularity(g, CheckMode::Exact);
    CHECK(sub.passed());
    CHECK(sub.worst_margin < 1e-12);
    CHECK(sub.worst_margin > -1e-12);
  }
  SUBCASE("mutant-biased graphs") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto g = graph_for(10 + s, 3 + s % 5, s % 2 == 1, FitnessRegime::MutantBiased);
      const auto v = check_submodularity(g, CheckMode::Exact);
      CHECK(v.property == "submodular");
      CHECK(v.expected_to_hold);
      CHECK(v.passed());
    }
  }
  SUBCASE("resident-biased graphs are supermodular") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto g = graph_for(30 + s, 3 + s % 5, s % 2 == 1, FitnessRegime::ResidentBiased);
      const auto v = check_submodularity(g, CheckMode::Exact);
      CHECK(v.property == "supermodular");
      CHECK(v.passed());
    }
  }
  SUBCASE("non-biased graphs are not expected to pass") {
    const auto g = graph_for(5, 5, true, FitnessRegime::Arbitrary);
    CHECK_FALSE(check_submodularity(g, CheckMode::Exact).expected_to_hold);
  }
  SUBCASE("table checker negative control") {
    // fp(S) = (|S|/4)^2 is strictly supermodular.
    std::vector<double> table(16);
    for (std::uint64_t m = 0; m < 16; ++m) table[m] = std::pow(std::popcount(m) / 4.0, 2);
    CHECK(check_submodularity_table(table, 4, 1e-9, Direction::Submodular).status() == Status::Fail);
    CHECK(check_submodularity_table(table, 4, 1e-9, Direction::Supermodular).passed());
  }
}

TEST_CASE("loopy equivalence") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = graph_for(50 + s, 2 + s % 5, s % 2 == 0, static_cast<FitnessRegime>(s % 4));
    const auto v = check_loopy_equivalence(g);
    CHECK(v.passed());
    CHECK(v.worst_margin < 1e-10);
  }
  CHECK(check_loopy_equivalence(build_graph({}, false, {1.5}, {1.0})).passed());
}

TEST_CASE("time bound") {
  const auto k2 = check_time_bound(complete_graph(2), 500, 1, 3);
  CHECK(k2.passed());
  CHECK(k2.worst_margin == doctest::Approx(1.0 - 64.0));
  const auto star = star_graph(4).with_fitness({1.5, 1.2, 1.0, 1.1}, {1, 1, 1, 1});
  const auto v = check_time_bound(star, 2000, 5, 9);
  CHECK(v.passed());
  CHECK(v.worst_margin < -1000.0);
  const auto directed = graph_for(1, 4, true, FitnessRegime::MutantBiased);
  try {
    check_time_bound(directed, 10, 1, 1);
    FAIL("expected NotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotApplicable);
  }
}

TEST_CASE("verdicts are reproducible from their seed") {
  const auto g = graph_for(3, 6, false, FitnessRegime::MutantBiased);
  McCheckOptions mc;
  mc.samples = 6;
  mc.seed = 17;
  mc.estimator.fixed_runs = 300;
  const auto a = check_submodularity(g, CheckMode::MonteCarlo, 1e-9, mc);
  const auto b = check_submodularity(g, CheckMode::MonteCarlo, 1e-9, mc);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.inconclusive_count == b.inconclusive_count);
  CHECK(a.violation_count == b.violation_count);
}
