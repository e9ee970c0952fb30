#include "hmoran/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "hmoran/error.hpp"

namespace hmoran {

SetCoverInstance make_instance(std::vector<std::vector<int>> sets, std::size_t k) {
  SetCoverInstance inst;
  std::set<int> universe;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto& s = sets[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw Error(ErrorCode::EmptySet, fmt::format("set {} is empty", i + 1));
    universe.insert(s.begin(), s.end());
  }
  if (sets.empty()) throw Error(ErrorCode::EmptySet, "instance has no sets");
  inst.universe.assign(universe.begin(), universe.end());
  inst.sets = std::move(sets);
  inst.k = k;
  return inst;
}

double ReductionParams::x() const { return std::exp(log_x); }

FitnessGraph build_reduction_graph(const SetCoverInstance& instance,
                                   const ReductionParams& params) {
  const std::size_t sets = instance.sets.size();
  const std::size_t n = instance.node_count();
  const double x = params.x();
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::ParamsOverflow,
                fmt::format("x = e^{} is not representable as a double", params.log_x));
  }
  if (!(params.y > 0.0) || params.y > 1.0 || x < 1.0) {
    throw Error(ErrorCode::BadInput, fmt::format("need x >= 1 >= y > 0 (x={}, y={})", x, params.y));
  }

  std::vector<WeightedEdge> edges;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sets; ++i) {
    const auto& s = instance.sets[i];
    if (s.empty()) throw Error(ErrorCode::EmptySet, fmt::format("set {} is empty", i + 1));
    for (int e : s) {
      const auto pos = std::lower_bound(instance.universe.begin(), instance.universe.end(), e);
      if (pos == instance.universe.end() || *pos != e) {
        throw Error(ErrorCode::BadInput, fmt::format("element {} missing from universe", e));
      }
      const auto v = static_cast<NodeId>(sets + static_cast<std::size_t>(pos - instance.universe.begin()));
      edges.push_back({static_cast<NodeId>(i), v, 1.0 / static_cast<double>(s.size())});
    }
    labels.push_back(fmt::format("S{}", i + 1));
  }
  for (std::size_t j = 0; j < instance.universe.size(); ++j) {
    for (std::size_t i = 0; i < sets; ++i) {
      edges.push_back({static_cast<NodeId>(sets + j), static_cast<NodeId>(i),
                       1.0 / static_cast<double>(sets)});
    }
    labels.push_back(fmt::format("e{}", instance.universe[j]));
  }

  std::vector<double> m(n, params.y);
  std::fill(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(sets), x);
  return build_graph(edges, true, std::move(m), std::vector<double>(n, 1.0), std::move(labels));
}

GadgetBounds gadget_bounds(std::size_t n, double log_x, double y) {
  if (n < 2) throw Error(ErrorCode::BadInput, "bounds need n >= 2");
  const auto nd = static_cast<double>(n);
  GadgetBounds b{};
  b.log_not_cover_escape = -nd * std::log1p(nd * (nd - 1.0) * y);
  b.upper_if_not_cover = -std::expm1(b.log_not_cover_escape);

  // p* = (x / (x + n^2))^n, evaluated through n^2/x to survive huge x.
  const double n2_over_x = std::exp(2.0 * std::log(nd) - log_x);
  const double log_p_star = -nd * std::log1p(n2_over_x);
  const double p_star = std::exp(log_p_star);
  const double miss = -std::expm1(log_p_star);
  const double q = y / (nd * nd);
  // x2 = q p* / ((1 - p*) + q p*) = 1 / (1 + (1 - p*) / (q p*))
  const double ratio = p_star > 0.0 ? miss / (q * p_star) : std::numeric_limits<double>::infinity();
  b.log_lower_if_cover = -nd * std::log1p(ratio);
  b.lower_if_cover = std::exp(b.log_lower_if_cover);
  b.cover_gap = -std::expm1(b.log_lower_if_cover);
  return b;
}

namespace {

bool general_ok(std::size_t n, double log_x, double y, double eps) {
  const auto b = gadget_bounds(n, log_x, y);
  return b.upper_if_not_cover <= eps && b.cover_gap < eps;
}

double x_for(std::size_t n, double y, double c) {
  const double n3 = std::pow(static_cast<double>(n), 3.0);
  return n3 / std::log1p(c * y / n3);
}

}  // namespace

ReductionParams params_general(std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::EpsOutOfRange, fmt::format("eps = {} not in (0, 1/2)", eps));
  }
  if (n < 2) throw Error(ErrorCode::BadInput, "reduction graphs have at least two nodes");
  const auto nd = static_cast<double>(n);
  const double c = -std::log1p(-eps);  // ln(1 / (1 - eps))
  double y = c / (nd * nd * (nd - 1.0));
  double log_x = std::log(x_for(n, y, c));

  // The chain of inequalities leaves slack, so this normally succeeds first time; tighten
  // y and then x geometrically if rounding at small n says otherwise.
  for (int i = 0; i < 200 && gadget_bounds(n, log_x, y).upper_if_not_cover > eps; ++i) {
    y /= 2.0;
    log_x = std::log(x_for(n, y, c));
  }
  for (int i = 0; i < 200 && !general_ok(n, log_x, y, eps); ++i) log_x += std::log(2.0);
  if (!general_ok(n, log_x, y, eps)) {
    throw Error(ErrorCode::EpsOutOfRange,
                fmt::format("no valid parameters found for n={}, eps={}", n, eps));
  }
  return {log_x, y, Regime::General, std::nullopt};
}

ReductionParams params_mutant_biased(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadInput, "reduction graphs have at least two nodes");
  const auto nd = static_cast<double>(n);
  const double exponent = 2.0 * nd + 7.0;
  return {exponent * std::log(nd), 1.0, Regime::MutantBiased,
          ReductionParams::Power{nd, exponent}};
}

double cover_chain_absorption(double q, double p_star) {
  return q * p_star / (1.0 - (1.0 - q) * p_star);
}

double uncovered_extinction_bound(std::size_t n, std::size_t set_nodes, double y) {
  const auto nd = static_cast<double>(n);
  const double q = (1.0 / nd) / (1.0 / nd + (nd - 1.0) * y);
  return std::pow(q, static_cast<double>(set_nodes));
}

double cover_saturation_bound(std::size_t n, std::size_t element_nodes, double log_x) {
  const auto nd = static_cast<double>(n);
  const double n2_over_x = std::exp(2.0 * std::log(nd) - log_x);
  return std::exp(-static_cast<double>(element_nodes) * std::log1p(n2_over_x));
}

LogBound log_lower_bound(double zeta) {
  if (!(zeta > 0.0)) throw Error(ErrorCode::BadInput, "zeta must be positive");
  return {std::log1p(1.0 / zeta), 1.0 / (zeta + 1.0)};
}

double prob_bound_value(double beta, std::size_t n) {
  return std::exp(-static_cast<double>(n) * std::log1p(beta));
}

bool is_cover(const SetCoverInstance& instance, std::span<const NodeId> chosen) {
  std::set<int> covered;
  for (NodeId i : chosen) {
    if (i >= instance.sets.size()) {
      throw Error(ErrorCode::BadInput, fmt::format("set index {} out of range", i));
    }
    covered.insert(instance.sets[i].begin(), instance.sets[i].end());
  }
  return covered.size() == instance.universe.size();
}

}  // namespace hmoran
