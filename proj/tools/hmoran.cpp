// Command-line front end: simulate, exact, estimate, select, sweep, verify, reduce.
#include <omp.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hmoran/error.hpp"
#include "hmoran/estimator.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/experiments.hpp"
#include "hmoran/generators.hpp"
#include "hmoran/io.hpp"
#include "hmoran/moran.hpp"
#include "hmoran/reductions.hpp"
#include "hmoran/select.hpp"
#include "hmoran/verify.hpp"

using namespace hmoran;
using json = nlohmann::json;

namespace {

struct Global {
  std::uint64_t seed = 0;
  int threads = 0;
  std::uint64_t step_cap = 0;
  std::size_t runs = 0;
  std::string out;
};

struct GraphArgs {
  std::string graph;
  std::string fitness;
  bool directed = false;
  bool largest_scc = false;
  double m_max = 0.0;  // > 0 samples m ~ U[1, m_max]
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--graph", args.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--fitness", args.fitness, "Fitness file (node m r)")->check(CLI::ExistingFile);
  cmd->add_flag("--directed", args.directed, "Treat rows as arcs when the file has no %directed line");
  cmd->add_flag("--largest-scc", args.largest_scc, "Keep only the largest strongly connected component");
  cmd->add_option("--m-max", args.m_max, "Sample m(u) ~ U[1, m_max] with r = 1 (uses --seed)");
}

FitnessGraph load_graph(const GraphArgs& args, const Global& global) {
  const auto skeleton = read_edge_list(args.graph, {args.directed, args.largest_scc});
  if (skeleton.dropped_nodes > 0) {
    std::cerr << fmt::format("warning: kept the largest strongly connected component ({} nodes, {} dropped)\n",
                             skeleton.size(), skeleton.dropped_nodes);
  }
  if (!args.fitness.empty()) {
    auto fv = read_fitness(args.fitness, skeleton.labels);
    return skeleton.build(std::move(fv.m), std::move(fv.r));
  }
  auto g = skeleton.build();
  if (args.m_max > 0.0) {
    Rng rng = make_stream(global.seed, 0);
    g = sample_fitness(g, args.m_max, rng);
  }
  return g;
}

Configuration parse_seeds(const FitnessGraph& g, const std::string& text) {
  std::unordered_map<std::string, NodeId> ids;
  for (NodeId u = 0; u < g.size(); ++u) ids.emplace(g.label(u), u);
  Configuration x(g.size());
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto it = ids.find(token);
    if (it == ids.end()) throw Error(ErrorCode::BadInput, fmt::format("unknown node '{}'", token));
    x.insert(it->second);
  }
  return x;
}

std::string seed_string(const FitnessGraph& g, const Configuration& x) {
  std::vector<std::string> labels;
  for (NodeId u : x.nodes()) labels.push_back(g.label(u));
  return fmt::format("{}", fmt::join(labels, " "));
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::BadInput, fmt::format("cannot write '{}'", path));
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

EstimatorConfig estimator_config(const Global& global, std::optional<double> eps,
                                 std::optional<double> delta) {
  EstimatorConfig config;
  config.master_seed = global.seed;
  config.step_cap = global.step_cap;
  if (global.runs > 0) config.fixed_runs = global.runs;
  config.epsilon = eps;
  config.delta = delta;
  return config;
}

json verdict_json(const Verdict& v) {
  json witnesses = json::array();
  for (const auto& w : v.violations) {
    witnesses.push_back({{"instance", w.instance}, {"first", w.first}, {"second", w.second},
                         {"lhs", w.lhs}, {"rhs", w.rhs}});
  }
  return {{"property", v.property},
          {"instance", v.instance},
          {"seed", v.seed},
          {"status", std::string(to_string(v.status()))},
          {"expected_to_hold", v.expected_to_hold},
          {"instances_checked", v.instances_checked},
          {"comparisons", v.comparisons},
          {"violation_count", v.violation_count},
          {"inconclusive_count", v.inconclusive_count},
          {"tolerance", v.tolerance},
          {"worst_margin", v.worst_margin},
          {"violations", witnesses}};
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& name : names) out.push_back(parse_method(name));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous Moran process: simulation, fixation probabilities and seed selection"};
  app.require_subcommand(1);
  Global global;
  app.add_option("--seed", global.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", global.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--step-cap", global.step_cap, "Per-trajectory step cap (0 = automatic)");
  app.add_option("--runs", global.runs, "Monte Carlo runs (0 = default or Hoeffding budget)");
  app.add_option("--out", global.out, "Output file (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run single trajectories");
  GraphArgs sim_graph;
  std::string sim_seeds;
  std::size_t sim_count = 1;
  std::uint64_t sim_stride = 0;
  add_graph_options(simulate, sim_graph);
  simulate->add_option("--seeds", sim_seeds, "Comma-separated initial mutants")->required();
  simulate->add_option("--trajectories", sim_count, "Number of trajectories");
  simulate->add_option("--trace-stride", sim_stride, "Record the potential every N steps (undirected only)");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact fixation probabilities (n <= 20)");
  GraphArgs exact_graph;
  std::string exact_seeds;
  bool exact_times = false;
  add_graph_options(exact, exact_graph);
  exact->add_option("--seeds", exact_seeds, "Comma-separated seed set (default: all seed sets)");
  exact->add_flag("--expected-steps", exact_times, "Also report expected absorption steps");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo fixation estimate");
  GraphArgs est_graph;
  std::string est_seeds;
  std::optional<double> est_eps, est_delta;
  add_graph_options(estimate, est_graph);
  estimate->add_option("--seeds", est_seeds, "Comma-separated seed set")->required();
  estimate->add_option("--epsilon", est_eps, "Additive error for the Hoeffding run count");
  estimate->add_option("--delta", est_delta, "Failure probability (also sets the interval level)");

  // select
  auto* select = app.add_subcommand("select", "Choose a seed set");
  GraphArgs sel_graph;
  std::size_t sel_k = 1;
  std::string sel_method = "greedy";
  bool sel_exact = false;
  add_graph_options(select, sel_graph);
  select->add_option("--k", sel_k, "Budget")->required();
  select->add_option("--method", sel_method, "greedy|random|degree|closeness|pagerank");
  select->add_flag("--exact", sel_exact, "Greedy with the exact evaluator (n <= 20)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "fp against k and m_max for several methods");
  GraphArgs sweep_graph;
  std::vector<std::size_t> sweep_k{1, 5, 10, 15, 20};
  std::vector<double> sweep_mmax;
  std::vector<std::string> sweep_methods{"greedy", "random", "degree", "closeness", "pagerank"};
  std::size_t sweep_selection_runs = 0;
  std::string sweep_dataset;
  add_graph_options(sweep, sweep_graph);
  sweep->add_option("--k", sweep_k, "k grid")->delimiter(',');
  sweep->add_option("--m-max-grid", sweep_mmax, "m_max grid (default: the graph's own fitness)")
      ->delimiter(',');
  sweep->add_option("--methods", sweep_methods, "Methods")->delimiter(',');
  sweep->add_option("--selection-runs", sweep_selection_runs, "Runs per greedy evaluation");
  sweep->add_option("--dataset", sweep_dataset, "Dataset name for the CSV (default: file name)");

  // verify
  auto* verify = app.add_subcommand("verify", "Audit structural properties on random graphs");
  std::string ver_property;
  std::size_t ver_n = 6;
  std::size_t ver_instances = 10;
  std::string ver_regime = "mutant-biased";
  bool ver_directed = false;
  std::string ver_mode = "exact";
  verify->add_option("--property", ver_property, "monotone|submodular|loopy|timebound")
      ->required()
      ->check(CLI::IsMember({"monotone", "submodular", "loopy", "timebound"}));
  verify->add_option("--n", ver_n, "Nodes per instance");
  verify->add_option("--instances", ver_instances, "Random instances");
  verify->add_option("--regime", ver_regime, "neutral|mutant-biased|resident-biased|arbitrary")
      ->check(CLI::IsMember({"neutral", "mutant-biased", "resident-biased", "arbitrary"}));
  verify->add_flag("--directed", ver_directed, "Directed random graphs");
  verify->add_option("--mode", ver_mode, "exact|mc")->check(CLI::IsMember({"exact", "mc"}));

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Set Cover hardness instance");
  std::string red_instance;
  std::string red_regime = "general";
  double red_eps = 0.25;
  std::string red_graph_out;
  bool red_exact = false;
  reduce->add_option("--instance", red_instance, "JSON instance {sets, k}")->required()->check(CLI::ExistingFile);
  reduce->add_option("--regime", red_regime, "general|biased")->check(CLI::IsMember({"general", "biased"}));
  reduce->add_option("--eps", red_eps, "Gap parameter for the general regime, in (0, 1/2)");
  reduce->add_option("--write-graph", red_graph_out, "Write the edge list and fitness (<path>, <path>.fitness)");
  reduce->add_flag("--exact", red_exact, "Solve exactly and compare every size-k seed set of set nodes");

  CLI11_PARSE(app, argc, argv);
  if (global.threads > 0) omp_set_num_threads(global.threads);

  try {
    Output output(global.out);
    auto& out = output.stream();

    if (*simulate) {
      const auto g = load_graph(sim_graph, global);
      const auto x = parse_seeds(g, sim_seeds);
      const std::uint64_t cap = global.step_cap ? global.step_cap : default_step_cap(g);
      CsvWriter csv(out);
      csv.row({"trajectory", "outcome", "steps", "potential_trace"});
      for (std::size_t i = 0; i < sim_count; ++i) {
        Rng rng = make_stream(global.seed, i);
        TraceOptions trace;
        if (sim_stride > 0) {
          trace.record_potential = true;
          trace.stride = sim_stride;
        }
        const auto stats = run_to_absorption(g, x, rng, cap, trace);
        std::vector<std::string> phi;
        for (double p : stats.potential_trace) phi.push_back(format_double(p));
        const char* outcome = stats.fixed() ? "fixation" : stats.capped() ? "cap" : "extinction";
        csv.row({std::to_string(i), outcome, std::to_string(stats.steps),
                 fmt::format("{}", fmt::join(phi, " "))});
      }
    } else if (*exact) {
      const auto g = load_graph(exact_graph, global);
      ExactOptions options;
      options.expected_steps = exact_times;
      const auto result = exact_all(g, options);
      CsvWriter csv(out);
      if (exact_times) {
        csv.row({"seed_set", "fp", "expected_steps"});
      } else {
        csv.row({"seed_set", "fp"});
      }
      const auto emit = [&](std::uint64_t mask) {
        const auto x = Configuration::from_mask(g.size(), mask);
        std::vector<std::string> fields{seed_string(g, x), format_double(result.fp[mask])};
        if (exact_times) fields.push_back(format_double(result.expected_steps[mask]));
        csv.row(fields);
      };
      if (!exact_seeds.empty()) {
        emit(parse_seeds(g, exact_seeds).mask());
      } else {
        for (std::uint64_t mask = 0; mask < result.fp.size(); ++mask) emit(mask);
      }
    } else if (*estimate) {
      const auto g = load_graph(est_graph, global);
      const auto x = parse_seeds(g, est_seeds);
      const auto est = estimate_fp(g, x, estimator_config(global, est_eps, est_delta));
      CsvWriter csv(out);
      csv.row({"seed_set", "fp_hat", "ci_low", "ci_high", "runs", "capped", "mean_steps", "seed"});
      csv.row({seed_string(g, x), format_double(est.fp_hat), format_double(est.ci_low),
               format_double(est.ci_high), std::to_string(est.runs), std::to_string(est.capped_runs),
               format_double(est.mean_steps), std::to_string(global.seed)});
    } else if (*select) {
      const auto g = load_graph(sel_graph, global);
      const Method method = parse_method(sel_method);
      SelectionResult result;
      const auto config = estimator_config(global, std::nullopt, std::nullopt);
      switch (method) {
        case Method::Greedy:
          if (sel_exact) {
            result = greedy_select(g, sel_k, ExactOracle(g));
          } else {
            result = greedy_select(g, sel_k, MonteCarloOracle(g, config));
          }
          break;
        case Method::Random: {
          Rng rng = make_stream(global.seed, 0);
          result = baseline_random(g, sel_k, rng);
          break;
        }
        case Method::Degree: result = baseline_min_degree(g, sel_k); break;
        case Method::Closeness: result = baseline_min_closeness(g, sel_k); break;
        case Method::PageRank: result = baseline_min_pagerank(g, sel_k); break;
      }
      FixationEstimate final_est;
      const auto x = Configuration::from_nodes(g.size(), result.seeds);
      if (result.fp_final) {
        final_est = *result.fp_final;
      } else if (!x.empty()) {
        final_est = estimate_fp(g, x, config);
      }
      CsvWriter csv(out);
      csv.row({"rank", "node", "gain"});
      for (std::size_t i = 0; i < result.seeds.size(); ++i) {
        csv.row({std::to_string(i + 1), g.label(result.seeds[i]),
                 i < result.gains.size() ? format_double(result.gains[i]) : std::string()});
      }
      std::cerr << fmt::format("{} k={} fp={} [{}, {}]\n", to_string(method), result.seeds.size(),
                               final_est.fp_hat, final_est.ci_low, final_est.ci_high);
    } else if (*sweep) {
      ExperimentSpec spec;
      spec.graph = load_graph(sweep_graph, global);
      spec.dataset = sweep_dataset.empty() ? std::filesystem::path(sweep_graph.graph).stem().string()
                                           : sweep_dataset;
      spec.k_grid = sweep_k;
      spec.m_max_grid = sweep_mmax;
      spec.methods = parse_methods(sweep_methods);
      spec.runs = global.runs ? global.runs : kDefaultRuns;
      spec.selection_runs = sweep_selection_runs;
      spec.step_cap = global.step_cap;
      spec.master_seed = global.seed;
      const auto rows = run_sweep(spec);
      write_sweep_csv(out, rows, spec.graph);
    } else if (*verify) {
      RandomGraphOptions options;
      options.n = ver_n;
      options.directed = ver_directed;
      options.regime = ver_regime == "neutral"           ? FitnessRegime::Neutral
                       : ver_regime == "resident-biased" ? FitnessRegime::ResidentBiased
                       : ver_regime == "arbitrary"       ? FitnessRegime::Arbitrary
                                                         : FitnessRegime::MutantBiased;
      const CheckMode mode = ver_mode == "mc" ? CheckMode::MonteCarlo : CheckMode::Exact;
      McCheckOptions mc;
      mc.seed = global.seed;
      mc.estimator = estimator_config(global, std::nullopt, std::nullopt);
      Verdict total;
      total.property = ver_property;
      total.seed = global.seed;
      json instances = json::array();
      for (std::size_t i = 0; i < ver_instances; ++i) {
        Rng rng = make_stream(global.seed, i);
        const auto g = random_fitness_graph(options, rng);
        Verdict v;
        if (ver_property == "monotone") {
          v = check_monotonicity(g, mode, 1e-9, mc);
        } else if (ver_property == "submodular") {
          v = check_submodularity(g, mode, 1e-9, mc);
        } else if (ver_property == "loopy") {
          v = check_loopy_equivalence(g);
        } else {
          v = check_time_bound(g, global.runs ? global.runs : 1000, 4, stream_seed(global.seed, i));
        }
        v.instance = fmt::format("{} stream={}", describe(options), i);
        v.seed = global.seed;
        for (auto& w : v.violations) w.instance = v.instance;
        total.tolerance = v.tolerance;
        total.expected_to_hold = total.expected_to_hold && v.expected_to_hold;
        total.merge(v);
        instances.push_back(verdict_json(v));
      }
      json doc = verdict_json(total);
      doc["instance"] = describe(options);
      doc["instances"] = instances;
      out << doc.dump(2) << '\n';
    } else if (*reduce) {
      const auto instance = read_set_cover(red_instance);
      const std::size_t n = instance.node_count();
      const auto params = red_regime == "general" ? params_general(n, red_eps) : params_mutant_biased(n);
      const auto bounds = gadget_bounds(n, params.log_x, params.y);
      json doc = {{"n", n},
                  {"sets", instance.sets.size()},
                  {"elements", instance.universe.size()},
                  {"k", instance.k},
                  {"regime", red_regime},
                  {"log_x", params.log_x},
                  {"x", params.x()},
                  {"y", params.y},
                  {"upper_if_not_cover", bounds.upper_if_not_cover},
                  {"lower_if_cover", bounds.lower_if_cover},
                  {"cover_gap", bounds.cover_gap}};
      if (params.x_power) {
        doc["x_base"] = params.x_power->base;
        doc["x_exponent"] = params.x_power->exponent;
      }
      if (red_regime == "general") doc["eps"] = red_eps;
      if (!red_graph_out.empty() || red_exact) {
        const auto g = build_reduction_graph(instance, params);
        doc["arcs"] = g.arc_count();
        if (!red_graph_out.empty()) {
          std::ofstream edges(red_graph_out);
          write_edge_list(edges, g);
          std::ofstream fitness(red_graph_out + ".fitness");
          write_fitness(fitness, g);
        }
        if (red_exact) {
          const auto table = exact_all(g);
          json sets = json::array();
          const std::size_t s = instance.sets.size();
          for (std::uint64_t mask = 0; mask < (1ULL << s); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != instance.k) continue;
            const auto chosen = Configuration::from_mask(s, mask).nodes();
            sets.push_back({{"seed_set", seed_string(g, Configuration::from_nodes(g.size(), chosen))},
                            {"cover", is_cover(instance, chosen)},
                            {"fp", table.fp[mask]}});
          }
          doc["seed_sets"] = sets;
        }
      }
      out << doc.dump(2) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
