#include "hmoran/moran.hpp"

#include <bit>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

namespace {

constexpr std::uint64_t kRebuildInterval = 1ULL << 20;

void require_undirected(const FitnessGraph& g, const char* what) {
  if (g.directed()) {
    throw Error(ErrorCode::DirectedGraphUnsupported,
                fmt::format("{} needs an undirected graph (d(u) is the degree)", what));
  }
}

}  // namespace

StepOutcome step(const FitnessGraph& g, Configuration& x, Rng& rng) {
  const std::size_t n = g.size();
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) total += fitness_of(g, x, u);

  double t = uniform01(rng) * total;
  NodeId u = 0;
  for (; u + 1 < n; ++u) {
    const double f = fitness_of(g, x, u);
    if (t < f) break;
    t -= f;
  }
  const double pick = uniform01(rng);
  if (g.out_degree(u) == 0) return {u, u, false};
  const NodeId v = g.sample_target(u, pick);
  const bool mutant = x.contains(u);
  const bool changed = x.contains(v) != mutant;
  x.assign(v, mutant);
  return {u, v, changed};
}

MoranSimulator::MoranSimulator(const FitnessGraph& g)
    : graph_(&g), state_(g.size()), fitness_(g.size()), tree_(g.size() + 1) {
  top_bit_ = std::bit_floor(g.size());
  reset(state_);
}

void MoranSimulator::reset(const Configuration& seed) {
  state_ = seed;
  for (NodeId u = 0; u < graph_->size(); ++u) fitness_[u] = fitness_of(*graph_, state_, u);
  rebuild();
}

void MoranSimulator::rebuild() {
  const std::size_t n = fitness_.size();
  std::fill(tree_.begin(), tree_.end(), 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    tree_[i] += fitness_[i - 1];
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= n) tree_[parent] += tree_[i];
  }
  total_ = 0.0;
  for (double f : fitness_) total_ += f;
  since_rebuild_ = 0;
}

void MoranSimulator::set_fitness(NodeId u, double value) {
  const double delta = value - fitness_[u];
  fitness_[u] = value;
  total_ += delta;
  for (std::size_t i = u + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
}

NodeId MoranSimulator::find(double target) const {
  const std::size_t n = fitness_.size();
  std::size_t pos = 0;
  for (std::size_t b = top_bit_; b != 0; b >>= 1) {
    const std::size_t next = pos + b;
    if (next <= n && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  return static_cast<NodeId>(pos < n ? pos : n - 1);
}

StepOutcome MoranSimulator::step(Rng& rng) {
  if (++since_rebuild_ >= kRebuildInterval) rebuild();
  const NodeId u = find(uniform01(rng) * total_);
  const double pick = uniform01(rng);
  if (graph_->out_degree(u) == 0) return {u, u, false};
  const NodeId v = graph_->sample_target(u, pick);
  const bool mutant = state_.contains(u);
  if (state_.contains(v) == mutant) return {u, v, false};
  state_.assign(v, mutant);
  set_fitness(v, mutant ? graph_->mutant_fitness(v) : graph_->resident_fitness(v));
  return {u, v, true};
}

TrajectoryStats run_to_absorption(const FitnessGraph& g, const Configuration& seed, Rng& rng,
                                  std::uint64_t step_cap, const TraceOptions& trace) {
  if (step_cap == 0) throw Error(ErrorCode::BadInput, "step_cap must be positive");
  if (seed.universe_size() != g.size()) {
    throw Error(ErrorCode::BadInput, "seed configuration does not match graph size");
  }
  TrajectoryStats stats;
  double phi = 0.0;
  const std::uint64_t stride = trace.stride == 0 ? 1 : trace.stride;
  if (trace.record_potential) {
    require_undirected(g, "potential tracing");
    phi = potential_phi(g, seed);
    stats.potential_trace.push_back(phi);
  }

  if (seed.absorbing()) {
    stats.outcome = seed.is_full() ? Outcome::Fixation : Outcome::Extinction;
    return stats;
  }

  MoranSimulator sim(g);
  sim.reset(seed);
  std::uint64_t steps = 0;
  while (!sim.state().absorbing() && steps < step_cap) {
    const auto out = sim.step(rng);
    ++steps;
    if (trace.record_potential) {
      if (out.changed) {
        const double term = g.mutant_fitness(out.target) /
                            static_cast<double>(g.out_degree(out.target));
        phi += sim.state().contains(out.target) ? term : -term;
      }
      if (steps % stride == 0) stats.potential_trace.push_back(phi);
    }
  }
  stats.steps = steps;
  if (sim.state().is_full()) {
    stats.outcome = Outcome::Fixation;
  } else if (sim.state().empty()) {
    stats.outcome = Outcome::Extinction;
  } else {
    stats.outcome = Outcome::CapHit;
  }
  if (trace.record_potential && steps % stride != 0) stats.potential_trace.push_back(phi);
  return stats;
}

double potential_phi(const FitnessGraph& g, const Configuration& x) {
  require_undirected(g, "potential_phi");
  double phi = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) {
    if (x.contains(u)) phi += g.mutant_fitness(u) / static_cast<double>(g.out_degree(u));
  }
  return phi;
}

double expected_potential_drift(const FitnessGraph& g, const Configuration& x) {
  require_undirected(g, "expected_potential_drift");
  double total = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) total += fitness_of(g, x, u);
  double drift = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) {
    const bool mu = x.contains(u);
    const double fu = fitness_of(g, x, u) / total;
    for (const auto& a : g.out_arcs(u)) {
      if (x.contains(a.target) == mu) continue;
      const double term = g.mutant_fitness(a.target) /
                          static_cast<double>(g.out_degree(a.target));
      drift += fu * a.weight * (mu ? term : -term);
    }
  }
  return drift;
}

std::vector<Transition> transition_row(const FitnessGraph& g, std::uint64_t mask) {
  const std::size_t n = g.size();
  if (n > 63) throw Error(ErrorCode::TooLarge, "transition rows need n <= 63");
  auto mutant = [mask](NodeId u) { return ((mask >> u) & 1ULL) != 0; };
  auto fit = [&](NodeId u) { return mutant(u) ? g.mutant_fitness(u) : g.resident_fitness(u); };

  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) total += fit(u);

  std::vector<Transition> row;
  row.push_back({mask, 0.0});
  double stay = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    double flip = 0.0;
    for (const auto& in : g.in_arcs(v)) {
      const double p = fit(in.source) * in.weight;
      if (mutant(in.source) != mutant(v)) {
        flip += p;
      } else {
        stay += p;
      }
    }
    if (flip > 0.0) row.push_back({mask ^ (1ULL << v), flip / total});
  }
  row.front().probability = stay / total;
  if (n == 1) row.front().probability = 1.0;
  return row;
}

}  // namespace hmoran
