// Independent reference computations for the tests. Nothing here calls the solver,
// centrality or connectivity code under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hmoran/graph.hpp"

namespace hmoran::testing {

using Matrix = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting; solves a x = b in place.
inline std::vector<double> gauss_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw std::runtime_error("singular");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// One-step transition matrix over all 2^n masks, built straight from the step rule:
/// pick u with probability f(u)/F, then v with probability w(u,v).
inline Matrix step_matrix(const FitnessGraph& g) {
  const std::size_t n = g.size();
  const std::size_t states = std::size_t{1} << n;
  Matrix p(states, std::vector<double>(states, 0.0));
  for (std::size_t mask = 0; mask < states; ++mask) {
    std::vector<double> f(n);
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      f[u] = (mask >> u & 1) ? g.mutant_fitness(static_cast<NodeId>(u))
                             : g.resident_fitness(static_cast<NodeId>(u));
      total += f[u];
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        const double w = g.weight(static_cast<NodeId>(u), static_cast<NodeId>(v));
        if (w == 0.0) continue;
        std::size_t next = mask & ~(std::size_t{1} << v);
        if (mask >> u & 1) next |= std::size_t{1} << v;
        p[mask][next] += f[u] / total * w;
      }
    }
  }
  return p;
}

/// Absorption into the full mask, solved on the raw one-step chain.
inline std::vector<double> reference_fp(const FitnessGraph& g) {
  const std::size_t states = std::size_t{1} << g.size();
  const auto p = step_matrix(g);
  const std::size_t full = states - 1;
  std::vector<double> fp(states, 0.0);
  fp[full] = 1.0;
  if (states <= 2) return fp;
  const std::size_t t = states - 2;
  Matrix a(t, std::vector<double>(t, 0.0));
  std::vector<double> b(t, 0.0);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t s = i + 1;
    a[i][i] = 1.0;
    for (std::size_t j = 0; j < t; ++j) a[i][j] -= p[s][j + 1];
    b[i] = p[s][full];
  }
  const auto x = gauss_solve(a, b);
  for (std::size_t i = 0; i < t; ++i) fp[i + 1] = x[i];
  return fp;
}

/// Expected number of steps (including no-op steps) until absorption.
inline std::vector<double> reference_steps(const FitnessGraph& g) {
  const std::size_t states = std::size_t{1} << g.size();
  const auto p = step_matrix(g);
  std::vector<double> out(states, 0.0);
  if (states <= 2) return out;
  const std::size_t t = states - 2;
  Matrix a(t, std::vector<double>(t, 0.0));
  std::vector<double> b(t, 1.0);
  for (std::size_t i = 0; i < t; ++i) {
    a[i][i] = 1.0;
    for (std::size_t j = 0; j < t; ++j) a[i][j] -= p[i + 1][j + 1];
  }
  const auto x = gauss_solve(a, b);
  for (std::size_t i = 0; i < t; ++i) out[i + 1] = x[i];
  return out;
}

/// All-pairs hop distances; infinity when unreachable.
inline Matrix floyd_warshall(std::size_t n, const std::vector<WeightedEdge>& arcs) {
  const double inf = std::numeric_limits<double>::infinity();
  Matrix d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& a : arcs) d[a.from][a.to] = std::min(d[a.from][a.to], 1.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::vector<WeightedEdge> arcs_of(const FitnessGraph& g) {
  std::vector<WeightedEdge> out;
  for (NodeId u = 0; u < g.size(); ++u) {
    for (const auto& a : g.out_arcs(u)) out.push_back({u, a.target, a.weight});
  }
  return out;
}

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace hmoran::testing
