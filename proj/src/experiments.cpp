#include "hmoran/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "hmoran/error.hpp"
#include "hmoran/io.hpp"

namespace hmoran {

namespace {

// Stream tags keep the fitness, baseline and estimation streams apart.
constexpr std::uint64_t kFitnessTag = 0xf17e55;
constexpr std::uint64_t kBaselineTag = 0xba5e;
constexpr std::uint64_t kEstimateTag = 0xe571;
constexpr std::uint64_t kSelectTag = 0x5e1e;

FixationEstimate empty_estimate() {
  FixationEstimate est;
  est.runs = 0;
  return est;
}

}  // namespace

FitnessGraph sample_fitness(const FitnessGraph& g, double m_max, Rng& rng) {
  if (!(m_max >= 1.0) || !std::isfinite(m_max)) {
    throw Error(ErrorCode::BadRange, fmt::format("m_max must be at least 1, got {}", m_max));
  }
  std::vector<double> m(g.size());
  for (auto& value : m) value = 1.0 + (m_max - 1.0) * uniform01(rng);
  return g.with_fitness(std::move(m), std::vector<double>(g.size(), 1.0));
}

void validate(const ExperimentSpec& spec) {
  if (spec.k_grid.empty()) throw Error(ErrorCode::BadInput, "k grid is empty");
  if (spec.methods.empty()) throw Error(ErrorCode::BadInput, "no selection methods given");
  if (spec.runs == 0) throw Error(ErrorCode::BadInput, "runs must be positive");
  for (double m_max : spec.m_max_grid) {
    if (!(m_max >= 1.0)) throw Error(ErrorCode::BadRange, fmt::format("m_max {} is below 1", m_max));
  }
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
  validate(spec);
  const auto& base = spec.graph;
  const std::size_t k_max =
      std::min(base.size(), *std::max_element(spec.k_grid.begin(), spec.k_grid.end()));

  std::vector<std::optional<double>> landscapes;
  if (spec.m_max_grid.empty()) {
    landscapes.emplace_back();
  } else {
    landscapes.assign(spec.m_max_grid.begin(), spec.m_max_grid.end());
  }

  EstimatorConfig estimate_config;
  estimate_config.fixed_runs = spec.runs;
  estimate_config.step_cap = spec.step_cap;
  estimate_config.master_seed = stream_seed(spec.master_seed, kEstimateTag);
  EstimatorConfig select_config = estimate_config;
  select_config.fixed_runs = spec.selection_runs ? spec.selection_runs : spec.runs;
  select_config.master_seed = stream_seed(spec.master_seed, kSelectTag);

  // (method index, k index, landscape index) -> row
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SweepRow> cells;
  for (std::size_t li = 0; li < landscapes.size(); ++li) {
    FitnessGraph g = base;
    if (landscapes[li]) {
      Rng rng = make_stream(stream_seed(spec.master_seed, kFitnessTag), li);
      g = sample_fitness(base, *landscapes[li], rng);
    }
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const Method method = spec.methods[mi];
      // Deterministic methods select once at the largest k; their size-k answer is the
      // prefix.
      std::vector<NodeId> prefix;
      switch (method) {
        case Method::Greedy:
          prefix = greedy_select(g, k_max, MonteCarloOracle(g, select_config)).seeds;
          break;
        case Method::Degree: prefix = baseline_min_degree(g, k_max).seeds; break;
        case Method::Closeness: prefix = baseline_min_closeness(g, k_max).seeds; break;
        case Method::PageRank: prefix = baseline_min_pagerank(g, k_max).seeds; break;
        case Method::Random: break;
      }
      for (std::size_t ki = 0; ki < spec.k_grid.size(); ++ki) {
        const std::size_t k = std::min(spec.k_grid[ki], base.size());
        std::vector<NodeId> seeds;
        if (method == Method::Random) {
          Rng rng = make_stream(stream_seed(spec.master_seed, kBaselineTag),
                                li * spec.k_grid.size() + ki);
          seeds = baseline_random(g, k, rng).seeds;
        } else {
          seeds.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(k));
        }
        const auto x = Configuration::from_nodes(g.size(), seeds);
        FixationEstimate est = x.empty() ? empty_estimate() : estimate_fp(g, x, estimate_config);
        if (x.empty()) {
          est.fp_hat = est.ci_low = est.ci_high = 0.0;
        }
        cells.emplace(std::make_tuple(mi, ki, li),
                      SweepRow{spec.dataset, method, spec.k_grid[ki], landscapes[li], est,
                               std::move(seeds)});
      }
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (auto& [key, row] : cells) rows.push_back(std::move(row));
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const FitnessGraph& g) {
  CsvWriter csv(out);
  csv.row({"dataset", "method", "k", "m_max", "fp_hat", "ci_low", "ci_high", "runs", "capped",
           "seed_set"});
  for (const auto& row : rows) {
    std::vector<std::string> labels;
    for (NodeId u : row.seeds) labels.push_back(g.label(u));
    csv.row({row.dataset, std::string(to_string(row.method)), std::to_string(row.k),
             row.m_max ? format_double(*row.m_max) : std::string(), format_double(row.estimate.fp_hat),
             format_double(row.estimate.ci_low), format_double(row.estimate.ci_high),
             std::to_string(row.estimate.runs), std::to_string(row.estimate.capped_runs),
             fmt::format("{}", fmt::join(labels, " "))});
  }
}

}  // namespace hmoran
