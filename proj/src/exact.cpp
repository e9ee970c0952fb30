#include "hmoran/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "hmoran/error.hpp"
#include "hmoran/moran.hpp"

namespace hmoran {

namespace {

using RowFn = std::function<std::vector<Transition>(std::uint64_t)>;

struct JumpRow {
  std::vector<Transition> moves;  // normalized over configuration changes
  double leave = 0.0;             // probability that one step changes the configuration
};

JumpRow to_jump_row(std::vector<Transition> row, std::uint64_t mask) {
  JumpRow out;
  for (const auto& t : row) {
    if (t.next != mask && t.probability > 0.0) {
      out.leave += t.probability;
      out.moves.push_back(t);
    }
  }
  for (auto& t : out.moves) t.probability /= out.leave;
  return out;
}

ExactResult solve_chain(std::size_t n, const RowFn& row_of, const ExactOptions& options) {
  if (n > options.max_nodes || n > 30) {
    throw Error(ErrorCode::TooLarge,
                fmt::format("exact solve over 2^{} configurations exceeds the cap of {} nodes", n,
                            options.max_nodes));
  }
  const std::uint64_t states = 1ULL << n;
  const std::uint64_t full = states - 1;
  ExactResult result;
  result.n = n;
  result.fp.assign(states, 0.0);
  result.fp[full] = 1.0;
  if (options.expected_steps) result.expected_steps.assign(states, 0.0);
  if (n <= 1) return result;

  // Transient states are masks 1 .. full-1, stored at index mask-1.
  const auto transient = static_cast<std::int64_t>(states - 2);
  std::vector<JumpRow> rows(static_cast<std::size_t>(transient));
#pragma omp parallel for schedule(dynamic, 64) if (options.parallel_assembly)
  for (std::int64_t i = 0; i < transient; ++i) {
    const auto mask = static_cast<std::uint64_t>(i + 1);
    rows[static_cast<std::size_t>(i)] = to_jump_row(row_of(mask), mask);
  }
  for (std::int64_t i = 0; i < transient; ++i) {
    if (!(rows[static_cast<std::size_t>(i)].leave > 0.0)) {
      throw Error(ErrorCode::SingularSystem,
                  fmt::format("configuration {:#x} can never change", i + 1));
    }
  }

  const int columns = options.expected_steps ? 2 : 1;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(transient, columns);
  for (std::int64_t i = 0; i < transient; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    for (const auto& t : row.moves) {
      if (t.next == full) rhs(i, 0) += t.probability;
    }
    if (columns == 2) rhs(i, 1) = 1.0 / row.leave;
  }

  Eigen::MatrixXd solution;
  if (n <= options.dense_cap) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(transient, transient);
    for (std::int64_t i = 0; i < transient; ++i) {
      for (const auto& t : rows[static_cast<std::size_t>(i)].moves) {
        if (t.next != 0 && t.next != full) a(i, static_cast<std::int64_t>(t.next - 1)) -= t.probability;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    solution = lu.solve(rhs);
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::int64_t i = 0; i < transient; ++i) {
      triplets.emplace_back(i, i, 1.0);
      for (const auto& t : rows[static_cast<std::size_t>(i)].moves) {
        if (t.next != 0 && t.next != full) {
          triplets.emplace_back(i, static_cast<std::int64_t>(t.next - 1), -t.probability);
        }
      }
    }
    rows.clear();
    Eigen::SparseMatrix<double> a(transient, transient);
    a.setFromTriplets(triplets.begin(), triplets.end());
    triplets.clear();
    a.makeCompressed();
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> iterative;
    iterative.setTolerance(options.iterative_tolerance);
    iterative.setMaxIterations(10000);
    iterative.compute(a);
    solution.resize(transient, columns);
    bool ok = iterative.info() == Eigen::Success;
    for (int c = 0; ok && c < columns; ++c) {
      Eigen::VectorXd col = iterative.solve(rhs.col(c));
      ok = iterative.info() == Eigen::Success;
      solution.col(c) = col;
    }
    if (!ok) {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> direct;
      direct.compute(a);
      if (direct.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularSystem, "sparse factorization failed");
      }
      solution = direct.solve(rhs);
    }
  }

  for (std::int64_t i = 0; i < transient; ++i) {
    const double h = solution(i, 0);
    if (!std::isfinite(h)) throw Error(ErrorCode::SingularSystem, "non-finite solution");
    result.fp[static_cast<std::size_t>(i + 1)] = std::clamp(h, 0.0, 1.0);
    if (columns == 2) result.expected_steps[static_cast<std::size_t>(i + 1)] = solution(i, 1);
  }
  return result;
}

}  // namespace

ExactResult exact_all(const FitnessGraph& g, const ExactOptions& options) {
  return solve_chain(
      g.size(), [&g](std::uint64_t mask) { return transition_row(g, mask); }, options);
}

ExactResult exact_all_loopy(const LoopyKernel& kernel, const ExactOptions& options) {
  return solve_chain(
      kernel.base().size(),
      [&kernel](std::uint64_t mask) { return loopy_transition_row(kernel, mask); }, options);
}

double exact_fixation(const FitnessGraph& g, const Configuration& seed,
                      const ExactOptions& options) {
  if (seed.universe_size() != g.size()) {
    throw Error(ErrorCode::BadInput, "seed configuration does not match graph size");
  }
  if (seed.empty()) return 0.0;
  if (seed.is_full()) return 1.0;
  return exact_all(g, options).fp_of(seed);
}

double neutral_closed_form(const FitnessGraph& g, const Configuration& seed) {
  if (g.directed()) throw Error(ErrorCode::NotUndirected, "closed form needs an undirected graph");
  if (!is_neutral(g)) throw Error(ErrorCode::NotNeutral, "closed form needs m(u) = r(u)");
  double num = 0.0;
  double den = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) {
    // f(u)/d(u) makes the weighted mutant count a martingale.
    const double c = g.mutant_fitness(u) / static_cast<double>(g.out_degree(u));
    den += c;
    if (seed.contains(u)) num += c;
  }
  return num / den;
}

SeedOptimum exhaustive_opt(std::span<const double> fp_table, std::size_t n, std::size_t k) {
  if (n > 30 || fp_table.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::TooLarge, "fixation table does not cover 2^n configurations");
  }
  k = std::min(k, n);
  std::uint64_t best_mask = 0;
  double best = fp_table[0];
  // Depth-first over sorted sequences visits sets in lexicographic order.
  std::vector<NodeId> chosen;
  std::function<void(NodeId, std::uint64_t)> visit = [&](NodeId next, std::uint64_t mask) {
    for (NodeId u = next; u < n; ++u) {
      const std::uint64_t m = mask | (1ULL << u);
      if (fp_table[m] > best) {
        best = fp_table[m];
        best_mask = m;
      }
      chosen.push_back(u);
      if (chosen.size() < k) visit(u + 1, m);
      chosen.pop_back();
    }
  };
  if (k > 0) visit(0, 0);
  return {Configuration::from_mask(n, best_mask), best};
}

SeedOptimum exhaustive_opt(const FitnessGraph& g, std::size_t k, const ExactOptions& options) {
  const auto table = exact_all(g, options);
  return exhaustive_opt(table.fp, g.size(), k);
}

}  // namespace hmoran
