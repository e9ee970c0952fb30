#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hmoran/centrality.hpp"
#include "hmoran/error.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/generators.hpp"
#include "hmoran/select.hpp"
#include "support.hpp"

using namespace hmoran;

namespace {

FitnessGraph graph_for(std::uint64_t stream, std::size_t n, bool directed,
                       FitnessRegime regime = FitnessRegime::MutantBiased) {
  Rng rng = make_stream(31337, stream);
  RandomGraphOptions options;
  options.n = n;
  options.directed = directed;
  options.regime = regime;
  options.max_ratio = 3.0;
  return random_fitness_graph(options, rng);
}

// Dense PageRank: solve (I - d P^T) pi = (1 - d)/n.
std::vector<double> pagerank_reference(const FitnessGraph& g, double d) {
  const std::size_t n = g.size();
  testing::Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& arc : g.out_arcs(u)) a[arc.target][u] -= d * arc.weight;
  }
  return testing::gauss_solve(a, std::vector<double>(n, (1.0 - d) / double(n)));
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {Method::Greedy, Method::Random, Method::Degree, Method::Closeness, Method::PageRank}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("betweenness"), Error);
}

TEST_CASE("k_smallest breaks ties by id") {
  const std::vector<double> score{3, 1, 2, 1, 0};
  CHECK(k_smallest(score, 3) == std::vector<NodeId>{4, 1, 3});
  CHECK(k_smallest(score, 10).size() == 5);
  CHECK(k_smallest(score, 0).empty());
}

TEST_CASE("degree baseline on a star picks leaves") {
  const auto g = star_graph(6);
  CHECK(baseline_min_degree(g, 2).seeds == std::vector<NodeId>{1, 2});
  CHECK(baseline_min_degree(g, 6).seeds.back() == 0);
}

TEST_CASE("closeness matches all-pairs distances") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = graph_for(s, 5 + s, s % 2 == 1);
    const auto d = testing::floyd_warshall(g.size(), testing::arcs_of(g));
    const auto c = closeness(g);
    const auto cs = closeness_serial(g);
    for (std::size_t u = 0; u < g.size(); ++u) {
      const double total = std::accumulate(d[u].begin(), d[u].end(), 0.0);
      CHECK(c[u] == doctest::Approx(double(g.size() - 1) / total).epsilon(1e-14));
      CHECK(cs[u] == c[u]);
    }
  }
}

TEST_CASE("PageRank") {
  SUBCASE("uniform on a cycle") {
    const auto pr = pagerank(cycle_graph(7));
    for (double p : pr) CHECK(p == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("matches a direct solve") {
    for (std::uint64_t s = 0; s < 8; ++s) {
      const auto g = graph_for(50 + s, 6 + s, true);
      const auto pr = pagerank(g);
      const auto ref = pagerank_reference(g, 0.85);
      for (std::size_t u = 0; u < g.size(); ++u) CHECK(pr[u] == doctest::Approx(ref[u]).epsilon(1e-9));
    }
  }
  SUBCASE("iteration cap") {
    PageRankOptions options;
    options.max_iterations = 2;
    options.tolerance = 1e-300;
    CHECK_THROWS_AS(pagerank(graph_for(1, 8, true), options), Error);
  }
  SUBCASE("baseline picks the smallest ranks") {
    const auto g = star_graph(5);
    const auto seeds = baseline_min_pagerank(g, 4).seeds;
    CHECK(seeds == std::vector<NodeId>{1, 2, 3, 4});
  }
}

TEST_CASE("random baseline") {
  SUBCASE("distinct nodes, k clamped") {
    Rng rng = make_stream(9, 9);
    const auto g = cycle_graph(6);
    for (int i = 0; i < 50; ++i) {
      auto s = baseline_random(g, 4, rng).seeds;
      std::sort(s.begin(), s.end());
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
    CHECK(baseline_random(g, 10, rng).seeds.size() == 6);
  }
  SUBCASE("uniform over k-subsets (chi-square)") {
    Rng rng = make_stream(10, 0);
    const auto g = cycle_graph(5);
    const std::size_t draws = 20000;
    std::vector<std::size_t> counts(32, 0);
    for (std::size_t i = 0; i < draws; ++i) {
      std::uint64_t mask = 0;
      for (NodeId u : baseline_random(g, 2, rng).seeds) mask |= 1ULL << u;
      ++counts[mask];
    }
    const double expected = draws / testing::binomial(5, 2);
    double chi2 = 0.0;
    std::size_t cells = 0;
    for (std::uint64_t m = 0; m < 32; ++m) {
      if (std::popcount(m) != 2) {
        CHECK(counts[m] == 0);
        continue;
      }
      ++cells;
      chi2 += std::pow(double(counts[m]) - expected, 2) / expected;
    }
    CHECK(cells == 10);
    CHECK(chi2 < 27.88);  // chi-square, 9 degrees of freedom, p = 0.001
  }
}

TEST_CASE("greedy with the exact evaluator") {
  SUBCASE("lazy and plain pick the same seeds") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto g = graph_for(100 + s, 5 + s % 4, s % 2 == 1);
      const ExactOracle oracle(g);
      GreedyOptions plain;
      plain.lazy = false;
      const auto a = greedy_select(g, 4, oracle);
      const auto b = greedy_select(g, 4, oracle, plain);
      CHECK(a.seeds == b.seeds);
      for (std::size_t i = 0; i < a.gains.size(); ++i) {
        CHECK(a.gains[i] == doctest::Approx(b.gains[i]).epsilon(1e-13));
      }
    }
  }
  SUBCASE("lazy and plain agree on symmetric graphs with exact ties") {
    const auto g = cycle_graph(6).with_fitness(std::vector<double>(6, 1.5), std::vector<double>(6, 1.0));
    const ExactOracle oracle(g);
    GreedyOptions plain;
    plain.lazy = false;
    CHECK(greedy_select(g, 3, oracle).seeds == greedy_select(g, 3, oracle, plain).seeds);
  }
  SUBCASE("guarantee against the exhaustive optimum") {
    for (std::uint64_t s = 0; s < 15; ++s) {
      const auto g = graph_for(300 + s, 6 + s % 3, s % 2 == 0);
      const ExactOracle oracle(g);
      for (std::size_t k = 1; k <= 3; ++k) {
        const auto greedy = greedy_select(g, k, oracle);
        const auto opt = exhaustive_opt(oracle.table().fp, g.size(), k);
        CHECK(greedy.fp_final->fp_hat >= (1.0 - std::exp(-1.0)) * opt.fp);
        CHECK(greedy.fp_final->fp_hat <= opt.fp);
      }
    }
  }
  SUBCASE("gains sum to the final value and k is clamped") {
    const auto g = graph_for(7, 5, false);
    const ExactOracle oracle(g);
    const auto r = greedy_select(g, 9, oracle);
    CHECK(r.seeds.size() == 5);
    CHECK(std::accumulate(r.gains.begin(), r.gains.end(), 0.0) == doctest::Approx(1.0));
    CHECK(greedy_select(g, 0, oracle).seeds.empty());
  }
}

TEST_CASE("Monte Carlo oracle") {
  const auto g = graph_for(5, 8, false);
  EstimatorConfig config;
  config.fixed_runs = 500;
  config.master_seed = 3;
  const MonteCarloOracle oracle(g, config);
  const Configuration base = Configuration::from_mask(8, 0b1);
  const std::vector<NodeId> candidates{1, 2, 5};
  const auto values = oracle.evaluate_extensions(base, candidates);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto s = base;
    s.insert(candidates[i]);
    CHECK(values[i] == oracle.evaluate(s));
  }
  const auto lazy = greedy_select(g, 3, oracle);
  CHECK(lazy.seeds.size() == 3);
  CHECK(lazy.fp_final.has_value());
  CHECK(greedy_select(g, 3, oracle).seeds == lazy.seeds);
}
