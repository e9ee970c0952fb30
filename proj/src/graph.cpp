#include "hmoran/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

namespace {

constexpr double kRenormalizeTolerance = 1e-9;
constexpr double kExactTolerance = 1e-12;

void validate_fitness(std::span<const double> m, std::span<const double> r) {
  if (m.size() != r.size()) {
    throw Error(ErrorCode::BadInput,
                fmt::format("fitness vectors differ in length ({} vs {})", m.size(), r.size()));
  }
  if (m.empty()) throw Error(ErrorCode::BadInput, "graph must have at least one node");
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (!(m[u] > 0.0) || !std::isfinite(m[u]) || !(r[u] > 0.0) || !std::isfinite(r[u])) {
      throw Error(ErrorCode::NonPositiveFitness,
                  fmt::format("node {} has m={} r={}", u, m[u], r[u]));
    }
  }
}

std::vector<std::vector<NodeId>> adjacency(std::size_t n, std::span<const WeightedEdge> arcs,
                                           bool reversed) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& a : arcs) {
    if (reversed) {
      adj[a.to].push_back(a.from);
    } else {
      adj[a.from].push_back(a.to);
    }
  }
  return adj;
}

std::size_t reach_count(const std::vector<std::vector<NodeId>>& adj, NodeId start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<NodeId> stack{start};
  seen[start] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count;
}

}  // namespace

double FitnessGraph::weight(NodeId u, NodeId v) const {
  for (const auto& a : out_arcs(u)) {
    if (a.target == v) return a.weight;
  }
  return 0.0;
}

NodeId FitnessGraph::sample_target(NodeId u, double uniform) const {
  const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  // cumulative_ stores running sums scaled so the last entry of each row is exactly 1.
  auto it = std::upper_bound(first, last, uniform);
  if (it == last) --it;
  return arcs_[static_cast<std::size_t>(it - cumulative_.begin())].target;
}

std::string FitnessGraph::label(NodeId u) const {
  if (u < labels_.size()) return labels_[u];
  return std::to_string(u);
}

FitnessGraph FitnessGraph::with_fitness(std::vector<double> m, std::vector<double> r) const {
  validate_fitness(m, r);
  if (m.size() != size()) {
    throw Error(ErrorCode::BadInput,
                fmt::format("fitness vectors have {} entries for {} nodes", m.size(), size()));
  }
  FitnessGraph g = *this;
  g.mutant_ = std::move(m);
  g.resident_ = std::move(r);
  return g;
}

FitnessGraph build_graph(std::span<const WeightedEdge> edges, bool directed,
                         std::vector<double> m, std::vector<double> r,
                         std::vector<std::string> labels) {
  validate_fitness(m, r);
  const std::size_t n = m.size();
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::BadInput, "label table does not match node count");
  }

  std::vector<WeightedEdge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  // Nodes that list out-arcs; a listed node whose weights are all zero is dangling, an
  // unlisted one is reported by the connectivity check.
  std::vector<bool> listed(n, false);
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n) {
      throw Error(ErrorCode::BadInput,
                  fmt::format("edge ({}, {}) references a node outside [0, {})", e.from, e.to, n));
    }
    if (e.from == e.to) {
      throw Error(ErrorCode::SelfLoop, fmt::format("self-loop at node {}", e.from));
    }
    if (directed) {
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
        throw Error(ErrorCode::BadDistribution,
                    fmt::format("arc ({}, {}) has weight {}", e.from, e.to, e.weight));
      }
      listed[e.from] = true;
      if (e.weight == 0.0) continue;
      arcs.push_back(e);
    }
  }

  if (!directed) {
    std::set<std::pair<NodeId, NodeId>> unique;
    for (const auto& e : edges) unique.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [a, b] : unique) {
      ++degree[a];
      ++degree[b];
    }
    for (const auto& [a, b] : unique) {
      arcs.push_back({a, b, 1.0 / static_cast<double>(degree[a])});
      arcs.push_back({b, a, 1.0 / static_cast<double>(degree[b])});
    }
  }

  std::sort(arcs.begin(), arcs.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].from == arcs[i - 1].from && arcs[i].to == arcs[i - 1].to) {
      throw Error(ErrorCode::MultiEdge,
                  fmt::format("arc ({}, {}) listed more than once", arcs[i].from, arcs[i].to));
    }
  }

  FitnessGraph g;
  g.directed_ = directed;
  g.offsets_.assign(n + 1, 0);
  for (const auto& a : arcs) ++g.offsets_[a.from + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  if (n > 1) {
    for (NodeId u = 0; u < n; ++u) {
      if (g.offsets_[u + 1] == g.offsets_[u] && listed[u]) {
        throw Error(ErrorCode::DanglingNode, fmt::format("node {} lists only zero-weight arcs", u));
      }
    }
  }

  g.arcs_.reserve(arcs.size());
  for (const auto& a : arcs) g.arcs_.push_back({a.to, a.weight});

  if (directed) {
    for (NodeId u = 0; u < n; ++u) {
      double sum = 0.0;
      if (g.offsets_[u + 1] == g.offsets_[u]) continue;
      for (std::size_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i) sum += g.arcs_[i].weight;
      const double dev = std::abs(sum - 1.0);
      if (dev > kRenormalizeTolerance) {
        throw Error(ErrorCode::BadDistribution,
                    fmt::format("out-weights of node {} sum to {}", u, sum));
      }
      if (dev > kExactTolerance) {
        for (std::size_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i) g.arcs_[i].weight /= sum;
      }
    }
  }

  if (!is_strongly_connected(n, arcs)) {
    throw Error(ErrorCode::NotStronglyConnected, "some node cannot reach every other node");
  }

  g.cumulative_.resize(g.arcs_.size());
  for (NodeId u = 0; u < n; ++u) {
    double run = 0.0;
    const std::size_t lo = g.offsets_[u];
    const std::size_t hi = g.offsets_[u + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      run += g.arcs_[i].weight;
      g.cumulative_[i] = run;
    }
    for (std::size_t i = lo; i < hi; ++i) g.cumulative_[i] /= run;
    if (hi > lo) g.cumulative_[hi - 1] = 1.0;
  }

  g.in_offsets_.assign(n + 1, 0);
  for (const auto& a : arcs) ++g.in_offsets_[a.to + 1];
  std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(), g.in_offsets_.begin());
  g.in_arcs_.resize(arcs.size());
  std::vector<std::size_t> fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i) {
      const auto& a = g.arcs_[i];
      g.in_arcs_[fill[a.target]++] = {u, a.weight};
    }
  }

  g.mutant_ = std::move(m);
  g.resident_ = std::move(r);
  g.labels_ = std::move(labels);
  return g;
}

bool is_mutant_biased(const FitnessGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    if (g.mutant_fitness(u) < g.resident_fitness(u)) return false;
  }
  return true;
}

bool is_resident_biased(const FitnessGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    if (g.mutant_fitness(u) > g.resident_fitness(u)) return false;
  }
  return true;
}

bool is_neutral(const FitnessGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    if (g.mutant_fitness(u) != g.resident_fitness(u)) return false;
  }
  return true;
}

FitnessGraph make_positional(const FitnessGraph& base, std::span<const NodeId> active,
                             double delta) {
  if (!(delta >= 0.0)) {
    throw Error(ErrorCode::NegativeDelta, fmt::format("delta = {}", delta));
  }
  const std::size_t n = base.size();
  std::vector<double> m(n, 1.0);
  std::vector<double> r(n, 1.0);
  for (NodeId u : active) {
    if (u >= n) throw Error(ErrorCode::BadInput, fmt::format("active node {} out of range", u));
    m[u] = 1.0 + delta;
  }
  return base.with_fitness(std::move(m), std::move(r));
}

FitnessSummary summary(const FitnessGraph& g) {
  const auto m = g.mutant_fitness();
  const auto r = g.resident_fitness();
  const double m_max = *std::max_element(m.begin(), m.end());
  const double r_min = *std::min_element(r.begin(), r.end());
  const double r_max = *std::max_element(r.begin(), r.end());
  return {m_max, r_min, std::max(m_max, r_max)};
}

bool is_strongly_connected(std::size_t n, std::span<const WeightedEdge> arcs) {
  if (n <= 1) return true;
  return reach_count(adjacency(n, arcs, false), 0) == n &&
         reach_count(adjacency(n, arcs, true), 0) == n;
}

std::vector<std::uint32_t> strongly_connected_components(std::size_t n,
                                                         std::span<const WeightedEdge> arcs) {
  const auto adj = adjacency(n, arcs, false);
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::uint32_t next_index = 0;
  std::uint32_t next_comp = 0;

  struct Frame {
    NodeId node;
    std::size_t child;
  };
  std::vector<Frame> call;
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& f = call.back();
      const NodeId u = f.node;
      if (f.child < adj[u].size()) {
        const NodeId v = adj[u][f.child++];
        if (index[v] == kUnset) {
          index[v] = low[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = 1;
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != u);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        const NodeId parent = call.back().node;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }
  return comp;
}

}  // namespace hmoran
