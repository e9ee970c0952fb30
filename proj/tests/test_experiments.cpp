#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hmoran/error.hpp"
#include "hmoran/experiments.hpp"
#include "hmoran/generators.hpp"

using namespace hmoran;

TEST_CASE("fitness sampling") {
  const auto base = cycle_graph(10000);
  Rng rng = make_stream(1, 0);
  const double m_max = 1.5;
  const auto g = sample_fitness(base, m_max, rng);
  CHECK(is_mutant_biased(g));
  double sum = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) {
    CHECK(g.resident_fitness(u) == 1.0);
    CHECK(g.mutant_fitness(u) >= 1.0);
    CHECK(g.mutant_fitness(u) <= m_max);
    sum += g.mutant_fitness(u);
  }
  const double mean = sum / double(g.size());
  const double se = (m_max - 1.0) / std::sqrt(12.0 * double(g.size()));
  CHECK(std::abs(mean - (1.0 + m_max) / 2.0) <= 3.0 * se);

  CHECK(is_neutral(sample_fitness(cycle_graph(5), 1.0, rng)));
  try {
    sample_fitness(base, 0.9, rng);
    FAIL("expected BadRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadRange);
  }
}

namespace {

ExperimentSpec small_spec() {
  Rng rng = make_stream(5, 5);
  RandomGraphOptions options;
  options.n = 12;
  options.edge_probability = 0.25;
  ExperimentSpec spec;
  spec.dataset = "synthetic";
  spec.graph = random_fitness_graph(options, rng);
  spec.k_grid = {0, 1, 3};
  spec.m_max_grid = {1.05, 2.0};
  spec.methods = {Method::Greedy, Method::Random, Method::Degree, Method::Closeness, Method::PageRank};
  spec.runs = 300;
  spec.selection_runs = 100;
  spec.master_seed = 99;
  return spec;
}

}  // namespace

TEST_CASE("sweep rows") {
  const auto spec = small_spec();
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 5 * 3 * 2);
  // (method, k, m_max) order
  CHECK(rows[0].method == Method::Greedy);
  CHECK(rows[0].k == 0);
  CHECK(*rows[0].m_max == 1.05);
  CHECK(*rows[1].m_max == 2.0);
  CHECK(rows[2].k == 1);
  CHECK(rows[6].method == Method::Random);
  for (const auto& row : rows) {
    if (row.k == 0) {
      CHECK(row.estimate.fp_hat == 0.0);
      CHECK(row.seeds.empty());
    } else {
      CHECK(row.seeds.size() == row.k);
      CHECK(row.estimate.runs == 300);
    }
  }
  // Deterministic methods give nested seed sets across k.
  for (std::size_t i = 0; i + 2 < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[i + 2];
    if (a.method == b.method && a.method != Method::Random && a.m_max == b.m_max && a.k < b.k) {
      CHECK(std::equal(a.seeds.begin(), a.seeds.end(), b.seeds.begin()));
    }
  }
}

TEST_CASE("sweep CSV is byte-identical on rerun") {
  const auto spec = small_spec();
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(spec), spec.graph);
  write_sweep_csv(b, run_sweep(spec), spec.graph);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("dataset,method,k,m_max,fp_hat,ci_low,ci_high", 0) == 0);
  auto other = spec;
  other.master_seed = 100;
  std::ostringstream c;
  write_sweep_csv(c, run_sweep(other), other.graph);
  CHECK(c.str() != a.str());
}

TEST_CASE("explicit landscape") {
  auto spec = small_spec();
  spec.m_max_grid.clear();
  spec.methods = {Method::Degree};
  const auto rows = run_sweep(spec);
  CHECK(rows.size() == 3);
  CHECK_FALSE(rows[1].m_max.has_value());
}

TEST_CASE("spec validation") {
  auto spec = small_spec();
  spec.k_grid.clear();
  CHECK_THROWS_AS(run_sweep(spec), Error);
  spec = small_spec();
  spec.m_max_grid = {0.5};
  CHECK_THROWS_AS(run_sweep(spec), Error);
}
