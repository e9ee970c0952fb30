#pragma once

#include <cstddef>
#include <vector>

#include "hmoran/graph.hpp"

namespace hmoran {

/// (n-1) / sum_v dist(u,v) over unweighted outgoing shortest paths. One BFS per
/// source, sources spread over OpenMP threads.
std::vector<double> closeness(const FitnessGraph& g);
std::vector<double> closeness_serial(const FitnessGraph& g);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;  // L1 change between iterations
  std::size_t max_iterations = 10000;
};

/// Power iteration on the arc weights w; scores sum to one.
std::vector<double> pagerank(const FitnessGraph& g, const PageRankOptions& options = {});

}  // namespace hmoran
