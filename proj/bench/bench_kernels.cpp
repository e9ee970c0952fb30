// Wall-clock comparison of the OpenMP kernels against their serial references.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <fmt/format.h>

#include "hmoran/centrality.hpp"
#include "hmoran/estimator.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/generators.hpp"

using namespace hmoran;

namespace {

constexpr int kRepeats = 3;

// Best of kRepeats after one untimed warm-up call.
template <class F>
double seconds(F&& f) {
  f();
  double best = 1e300;
  for (int i = 0; i < kRepeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  fmt::print("{:<28} serial {:9.4f}s  parallel {:9.4f}s  speedup {:5.2f}x\n", name, serial, parallel,
             serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t runs = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 5000;
  fmt::print("threads: {}\n", omp_get_max_threads());

  Rng rng = make_stream(7, 0);
  RandomGraphOptions options;
  options.n = 50;
  options.edge_probability = 0.1;
  options.max_ratio = 1.1;
  const auto g = random_fitness_graph(options, rng);
  Configuration seed(g.size());
  seed.insert(0);
  seed.insert(1);

  EstimatorConfig config;
  config.fixed_runs = runs;
  config.master_seed = 42;
  FixationEstimate a, b;
  const double t_serial = seconds([&] { a = estimate_fp_serial(g, seed, config); });
  const double t_parallel = seconds([&] { b = estimate_fp(g, seed, config); });
  report("estimate_fp (n=50)", t_serial, t_parallel);
  if (a.fixations != b.fixations) {
    std::cerr << "serial and parallel estimates differ\n";
    return 1;
  }

  options.n = 2000;
  options.edge_probability = 0.005;
  const auto big = random_fitness_graph(options, rng);
  std::vector<double> c1, c2;
  report("closeness (n=2000)", seconds([&] { c1 = closeness_serial(big); }),
         seconds([&] { c2 = closeness(big); }));
  if (c1 != c2) {
    std::cerr << "serial and parallel closeness differ\n";
    return 1;
  }

  options.n = 14;
  options.edge_probability = 0.3;
  const auto small = random_fitness_graph(options, rng);
  ExactOptions serial_options;
  serial_options.parallel_assembly = false;
  ExactResult r1, r2;
  report("exact_all (n=14)", seconds([&] { r1 = exact_all(small, serial_options); }),
         seconds([&] { r2 = exact_all(small); }));
  return 0;
}
