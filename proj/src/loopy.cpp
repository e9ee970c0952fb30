#include "hmoran/loopy.hpp"

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

LoopyKernel::LoopyKernel(const FitnessGraph& g) : graph_(&g), f_max_(summary(g).f_max) {}

double LoopyKernel::weight(bool u_mutant, NodeId u, NodeId v) const {
  const double f = u_mutant ? graph_->mutant_fitness(u) : graph_->resident_fitness(u);
  const double scale = f / f_max_;
  // Base graphs never store self-loops, so w(u,u) = 0 here.
  if (u == v) return 1.0 - scale;
  return scale * graph_->weight(u, v);
}

LoopyKernel loopy_kernel(const FitnessGraph& g) { return LoopyKernel(g); }

StepOutcome loopy_step(const LoopyKernel& kernel, Configuration& x, Rng& rng) {
  const auto& g = kernel.base();
  const auto u = static_cast<NodeId>(uniform_index(rng, g.size()));
  const bool mutant = x.contains(u);
  const double move = 1.0 - kernel.self_loop(mutant, u);
  if (uniform01(rng) >= move || g.out_degree(u) == 0) return {u, u, false};
  const NodeId v = g.sample_target(u, uniform01(rng));
  const bool changed = x.contains(v) != mutant;
  x.assign(v, mutant);
  return {u, v, changed};
}

std::vector<Transition> loopy_transition_row(const LoopyKernel& kernel, std::uint64_t mask) {
  const auto& g = kernel.base();
  const std::size_t n = g.size();
  if (n > 63) throw Error(ErrorCode::TooLarge, "transition rows need n <= 63");
  auto mutant = [mask](NodeId u) { return ((mask >> u) & 1ULL) != 0; };
  const double pick = 1.0 / static_cast<double>(n);

  std::vector<double> flip(n, 0.0);
  double stay = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const bool mu = mutant(u);
    stay += pick * kernel.self_loop(mu, u);
    for (const auto& a : g.out_arcs(u)) {
      const double p = pick * kernel.weight(mu, u, a.target);
      if (mutant(a.target) != mu) {
        flip[a.target] += p;
      } else {
        stay += p;
      }
    }
  }
  std::vector<Transition> row;
  row.push_back({mask, stay});
  for (NodeId v = 0; v < n; ++v) {
    if (flip[v] > 0.0) row.push_back({mask ^ (1ULL << v), flip[v]});
  }
  return row;
}

TwoGraphsView export_two_graphs(const LoopyKernel& kernel) {
  const auto& g = kernel.base();
  TwoGraphsView view;
  view.mutant_rows.resize(g.size());
  view.resident_rows.resize(g.size());
  for (NodeId u = 0; u < g.size(); ++u) {
    for (bool mu : {true, false}) {
      auto& row = mu ? view.mutant_rows[u] : view.resident_rows[u];
      row.push_back({u, kernel.self_loop(mu, u)});
      for (const auto& a : g.out_arcs(u)) row.push_back({a.target, kernel.weight(mu, u, a.target)});
    }
  }
  return view;
}

}  // namespace hmoran
