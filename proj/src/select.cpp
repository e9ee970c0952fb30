#include "hmoran/select.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Greedy: return "greedy";
    case Method::Random: return "random";
    case Method::Degree: return "degree";
    case Method::Closeness: return "closeness";
    case Method::PageRank: return "pagerank";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::Greedy, Method::Random, Method::Degree, Method::Closeness,
                 Method::PageRank}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::BadInput, fmt::format("unknown selection method '{}'", name));
}

std::vector<double> FixationOracle::evaluate_extensions(const Configuration& base,
                                                        std::span<const NodeId> candidates) const {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (NodeId u : candidates) {
    Configuration s = base;
    s.insert(u);
    out.push_back(evaluate(s));
  }
  return out;
}

ExactOracle::ExactOracle(const FitnessGraph& g, const ExactOptions& options)
    : table_(exact_all(g, options)) {}

FixationEstimate ExactOracle::estimate(const Configuration& seeds) const {
  FixationEstimate est;
  est.fp_hat = est.ci_low = est.ci_high = evaluate(seeds);
  return est;
}

FixationEstimate MonteCarloOracle::estimate(const Configuration& seeds) const {
  return estimate_fp(*graph_, seeds, config_);
}

std::vector<double> MonteCarloOracle::evaluate_extensions(
    const Configuration& base, std::span<const NodeId> candidates) const {
  std::vector<double> out(candidates.size());
  const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    Configuration s = base;
    s.insert(candidates[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = estimate_fp_serial(*graph_, s, config_).fp_hat;
  }
  return out;
}

namespace {

SelectionResult greedy_plain(const FitnessGraph& g, std::size_t k, const FixationOracle& oracle) {
  SelectionResult result;
  Configuration current(g.size());
  double current_fp = oracle.evaluate(current);
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < g.size(); ++u) {
      if (!current.contains(u)) candidates.push_back(u);
    }
    const auto values = oracle.evaluate_extensions(current, candidates);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[best]) best = i;
    }
    current.insert(candidates[best]);
    result.seeds.push_back(candidates[best]);
    result.gains.push_back(values[best] - current_fp);
    current_fp = values[best];
  }
  return result;
}

struct LazyEntry {
  double gain;
  NodeId node;
  std::size_t round;  // round in which `gain` was computed
  double value;       // fp(S + node) in that round
};

struct LazyOrder {
  bool operator()(const LazyEntry& a, const LazyEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

SelectionResult greedy_lazy(const FitnessGraph& g, std::size_t k, const FixationOracle& oracle,
                            double margin) {
  SelectionResult result;
  Configuration current(g.size());
  double current_fp = oracle.evaluate(current);

  std::vector<NodeId> all(g.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  const auto first = oracle.evaluate_extensions(current, all);
  std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyOrder> heap;
  for (NodeId u = 0; u < g.size(); ++u) heap.push({first[u] - current_fp, u, 0, first[u]});

  for (std::size_t round = 0; round < k; ++round) {
    while (true) {
      // Refresh the top until it is current, then refresh every stale entry whose
      // bound is within `margin` of it.
      while (heap.top().round != round) {
        auto e = heap.top();
        heap.pop();
        const NodeId u = e.node;
        const auto v = oracle.evaluate_extensions(current, std::span(&u, 1));
        heap.push({v[0] - current_fp, u, round, v[0]});
      }
      std::vector<LazyEntry> held;
      std::vector<NodeId> stale;
      const double threshold = heap.top().gain - margin;
      while (!heap.empty() && heap.top().gain >= threshold) {
        auto e = heap.top();
        heap.pop();
        if (e.round == round) {
          held.push_back(e);
        } else {
          stale.push_back(e.node);
        }
      }
      if (!stale.empty()) {
        const auto v = oracle.evaluate_extensions(current, stale);
        for (std::size_t i = 0; i < stale.size(); ++i) {
          heap.push({v[i] - current_fp, stale[i], round, v[i]});
        }
      }
      for (const auto& e : held) heap.push(e);
      if (stale.empty()) break;
    }
    // Everything within the margin is fresh now; choose as the plain scan would, by the
    // largest fp(S + u) and then the smallest id.
    std::vector<LazyEntry> near;
    const double threshold = heap.top().gain - margin;
    while (!heap.empty() && heap.top().gain >= threshold) {
      near.push_back(heap.top());
      heap.pop();
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < near.size(); ++i) {
      if (near[i].value > near[best].value ||
          (near[i].value == near[best].value && near[i].node < near[best].node)) {
        best = i;
      }
    }
    for (std::size_t i = 0; i < near.size(); ++i) {
      if (i != best) heap.push(near[i]);
    }
    const auto pick = near[best];
    current.insert(pick.node);
    result.seeds.push_back(pick.node);
    result.gains.push_back(pick.value - current_fp);
    current_fp = pick.value;
  }
  return result;
}

}  // namespace

SelectionResult greedy_select(const FitnessGraph& g, std::size_t k, const FixationOracle& oracle,
                              const GreedyOptions& options) {
  k = std::min(k, g.size());
  SelectionResult result = options.lazy && is_mutant_biased(g)
                               ? greedy_lazy(g, k, oracle, options.tie_margin)
                               : greedy_plain(g, k, oracle);
  result.method = Method::Greedy;
  result.fp_final = oracle.estimate(Configuration::from_nodes(g.size(), result.seeds));
  return result;
}

std::vector<NodeId> k_smallest(std::span<const double> score, std::size_t k) {
  std::vector<NodeId> order(score.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&score](NodeId a, NodeId b) { return score[a] < score[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

SelectionResult baseline_random(const FitnessGraph& g, std::size_t k, Rng& rng) {
  std::vector<NodeId> pool(g.size());
  std::iota(pool.begin(), pool.end(), NodeId{0});
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  SelectionResult result;
  result.method = Method::Random;
  result.seeds = std::move(pool);
  return result;
}

SelectionResult baseline_min_degree(const FitnessGraph& g, std::size_t k) {
  std::vector<double> degree(g.size());
  for (NodeId u = 0; u < g.size(); ++u) degree[u] = static_cast<double>(g.out_degree(u));
  SelectionResult result;
  result.method = Method::Degree;
  result.seeds = k_smallest(degree, k);
  return result;
}

SelectionResult baseline_min_closeness(const FitnessGraph& g, std::size_t k) {
  SelectionResult result;
  result.method = Method::Closeness;
  result.seeds = k_smallest(closeness(g), k);
  return result;
}

SelectionResult baseline_min_pagerank(const FitnessGraph& g, std::size_t k,
                                      const PageRankOptions& options) {
  SelectionResult result;
  result.method = Method::PageRank;
  result.seeds = k_smallest(pagerank(g, options), k);
  return result;
}

}  // namespace hmoran
