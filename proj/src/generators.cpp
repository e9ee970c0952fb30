#include "hmoran/generators.hpp"

#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

namespace {

double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

FitnessGraph unit(std::size_t n, const std::vector<WeightedEdge>& edges) {
  return build_graph(edges, false, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0));
}

}  // namespace

FitnessGraph random_fitness_graph(const RandomGraphOptions& options, Rng& rng) {
  const std::size_t n = options.n;
  if (n == 0) throw Error(ErrorCode::BadInput, "random graph needs n >= 1");
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  if (options.directed) {
    for (std::size_t i = 0; i < n && n > 1; ++i) present[order[i]][order[(i + 1) % n]] = 1;
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      const NodeId a = order[i];
      const NodeId b = order[uniform_index(rng, i)];
      present[a][b] = present[b][a] = 1;
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v || present[u][v]) continue;
      if (!options.directed && v < u) continue;
      if (uniform01(rng) < options.edge_probability) {
        present[u][v] = 1;
        if (!options.directed) present[v][u] = 1;
      }
    }
  }

  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    if (options.directed) {
      std::vector<WeightedEdge> row;
      double sum = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        if (!present[u][v]) continue;
        const double w = uniform_in(rng, 0.1, 1.0);
        row.push_back({u, v, w});
        sum += w;
      }
      for (auto& e : row) e.weight /= sum;
      edges.insert(edges.end(), row.begin(), row.end());
    } else {
      for (NodeId v = u + 1; v < n; ++v) {
        if (present[u][v]) edges.push_back({u, v, 1.0});
      }
    }
  }

  std::vector<double> m(n), r(n);
  for (std::size_t u = 0; u < n; ++u) {
    switch (options.regime) {
      case FitnessRegime::Neutral:
        r[u] = m[u] = uniform_in(rng, 0.5, 2.0);
        break;
      case FitnessRegime::MutantBiased:
        r[u] = uniform_in(rng, 0.5, 1.5);
        m[u] = r[u] * uniform_in(rng, 1.0, options.max_ratio);
        break;
      case FitnessRegime::ResidentBiased:
        r[u] = uniform_in(rng, 0.5, 1.5);
        m[u] = r[u] / uniform_in(rng, 1.0, options.max_ratio);
        break;
      case FitnessRegime::Arbitrary:
        r[u] = uniform_in(rng, 0.5, 2.0);
        m[u] = uniform_in(rng, 0.5, 2.0);
        break;
    }
  }
  return build_graph(edges, options.directed, std::move(m), std::move(r));
}

std::string describe(const RandomGraphOptions& options) {
  constexpr const char* kRegime[] = {"neutral", "mutant-biased", "resident-biased", "arbitrary"};
  return fmt::format("random n={} {} p={} {} ratio={}", options.n,
                     options.directed ? "directed" : "undirected", options.edge_probability,
                     kRegime[static_cast<int>(options.regime)], options.max_ratio);
}

FitnessGraph complete_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  }
  return unit(n, edges);
}

FitnessGraph star_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
  return unit(n, edges);
}

FitnessGraph cycle_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) edges.push_back({u, static_cast<NodeId>((u + 1) % n), 1.0});
  return unit(n, edges);
}

FitnessGraph path_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
  return unit(n, edges);
}

}  // namespace hmoran
