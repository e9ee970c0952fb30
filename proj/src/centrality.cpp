#include "hmoran/centrality.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

namespace {

double closeness_of(const FitnessGraph& g, NodeId source, std::vector<std::uint32_t>& dist,
                    std::vector<NodeId>& queue) {
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  std::uint64_t sum = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    sum += dist[u];
    for (const auto& a : g.out_arcs(u)) {
      if (dist[a.target] == kUnseen) {
        dist[a.target] = dist[u] + 1;
        queue.push_back(a.target);
      }
    }
  }
  if (sum == 0) return 0.0;
  return static_cast<double>(g.size() - 1) / static_cast<double>(sum);
}

}  // namespace

std::vector<double> closeness(const FitnessGraph& g) {
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<double> score(g.size(), 0.0);
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(g.size());
    std::vector<NodeId> queue;
    queue.reserve(g.size());
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t u = 0; u < n; ++u) {
      score[static_cast<std::size_t>(u)] = closeness_of(g, static_cast<NodeId>(u), dist, queue);
    }
  }
  return score;
}

std::vector<double> closeness_serial(const FitnessGraph& g) {
  std::vector<double> score(g.size(), 0.0);
  std::vector<std::uint32_t> dist(g.size());
  std::vector<NodeId> queue;
  for (NodeId u = 0; u < g.size(); ++u) score[u] = closeness_of(g, u, dist, queue);
  return score;
}

std::vector<double> pagerank(const FitnessGraph& g, const PageRankOptions& options) {
  const std::size_t n = g.size();
  const double teleport = (1.0 - options.damping) / static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double pulled = 0.0;
      for (const auto& in : g.in_arcs(v)) pulled += rank[in.source] * in.weight;
      next[v] = teleport + options.damping * pulled;
    }
    // A single node has no arcs; keep the distribution normalized regardless.
    double total = 0.0;
    for (double x : next) total += x;
    for (NodeId v = 0; v < n; ++v) {
      next[v] /= total;
      change += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    if (change < options.tolerance) return rank;
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("PageRank did not reach tolerance {} in {} iterations",
                          options.tolerance, options.max_iterations));
}

}  // namespace hmoran
