#include <doctest.h>

#include <bit>
#include <cmath>

#include "hmoran/error.hpp"
#include "hmoran/exact.hpp"
#include "hmoran/reductions.hpp"
#include "support.hpp"

using namespace hmoran;

namespace {

SetCoverInstance three_sets() { return make_instance({{1, 4}, {1, 2, 4}, {3, 5}}, 2); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an hmoran::Error");
  return ErrorCode::BadInput;
}

// Both bounds straight from their product forms, for moderate parameters.
double upper_direct(double n, double y) { return 1.0 - std::pow((1.0 / n) / (1.0 / n + (n - 1.0) * y), n); }
double lower_direct(double n, double x, double y) {
  const double p = std::pow((x / n) / (x / n + n), n);
  const double q = y / (n * n);
  return std::pow(q * p / (1.0 - (1.0 - q) * p), n);
}

}  // namespace

TEST_CASE("instance validation") {
  const auto inst = three_sets();
  CHECK(inst.universe == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(inst.node_count() == 8);
  CHECK(code_of([] { make_instance({{1}, {}}, 1); }) == ErrorCode::EmptySet);
  CHECK(code_of([] { make_instance({}, 1); }) == ErrorCode::EmptySet);
}

TEST_CASE("reduction graph on the three-set example instance") {
  const auto inst = three_sets();
  const auto g = build_reduction_graph(inst, params_general(8, 0.4));
  CHECK(g.size() == 8);
  CHECK(g.arc_count() == 22);  // 2 + 3 + 2 set->element arcs, 5 * 3 element->set arcs
  CHECK(g.directed());
  CHECK(g.label(0) == "S1");
  CHECK(g.label(3) == "e1");
  CHECK(g.weight(1, 4) == doctest::Approx(1.0 / 3.0));
  CHECK(g.weight(4, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(g.weight(0, 4) == 0.0);  // element 2 is not in S1
  const auto p = params_general(8, 0.4);
  CHECK(g.mutant_fitness(0) == doctest::Approx(p.x()));
  CHECK(g.mutant_fitness(5) == p.y);
  for (NodeId u = 0; u < 8; ++u) CHECK(g.resident_fitness(u) == 1.0);
}

TEST_CASE("singleton instance gives a two-node pair") {
  const auto inst = make_instance({{1}}, 1);
  const auto g = build_reduction_graph(inst, params_general(2, 0.2));
  CHECK(g.size() == 2);
  CHECK(g.arc_count() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
}

TEST_CASE("mutant-biased regime") {
  const auto p = params_mutant_biased(8);
  CHECK(p.y == 1.0);
  REQUIRE(p.x_power.has_value());
  CHECK(p.x_power->base == 8.0);
  CHECK(p.x_power->exponent == 23.0);
  CHECK(p.log_x == doctest::Approx(23.0 * std::log(8.0)));
  const auto g = build_reduction_graph(three_sets(), p);
  CHECK(is_mutant_biased(g));

  for (std::size_t n : {2, 3, 5, 8, 20, 100}) {
    const auto q = params_mutant_biased(n);
    const auto b = gadget_bounds(n, q.log_x, q.y);
    const double log_threshold = -2.0 * double(n) * std::log(double(n));  // ln n^{-2n}
    // Cover: 1 - lower < n^{-2n}. Not a cover: 1 - upper >= n^{-2n}.
    CHECK(std::log(b.cover_gap) < log_threshold);
    CHECK(b.log_not_cover_escape >= log_threshold);
  }
}

TEST_CASE("bounds against their direct forms") {
  for (double n : {2.0, 4.0, 8.0}) {
    for (double y : {1e-3, 0.1, 0.5, 1.0}) {
      for (double x : {1.0, 10.0, 1e4}) {
        const auto b = gadget_bounds(std::size_t(n), std::log(x), y);
        CHECK(b.upper_if_not_cover == doctest::Approx(upper_direct(n, y)).epsilon(1e-12));
        CHECK(b.lower_if_cover == doctest::Approx(lower_direct(n, x, y)).epsilon(1e-10));
        CHECK(b.cover_gap == doctest::Approx(1.0 - b.lower_if_cover).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("bound limits") {
  CHECK(gadget_bounds(8, std::log(100.0), 1e-14).upper_if_not_cover < 1e-11);
  CHECK(gadget_bounds(8, std::log(100.0), 0.0).upper_if_not_cover == 0.0);
  CHECK(gadget_bounds(8, 200.0, 1.0).lower_if_cover > 1.0 - 1e-12);
  CHECK(gadget_bounds(8, 2000.0, 1.0).cover_gap == 0.0);
}

TEST_CASE("bound monotonicity") {
  for (std::size_t n : {3, 6, 10}) {
    double prev = -1.0;
    for (double y = 1e-6; y <= 1.0; y *= 1.5) {
      const double u = gadget_bounds(n, 3.0, y).upper_if_not_cover;
      CHECK(u >= prev);
      if (u < 1.0) CHECK(u > prev);  // strictly increasing until it rounds to 1
      prev = u;
    }
    for (double y : {1e-3, 0.5, 1.0}) {
      double prev_lower = -1.0;
      for (double log_x = 0.0; log_x <= 40.0; log_x += 0.5) {
        const double l = gadget_bounds(n, log_x, y).lower_if_cover;
        CHECK(l >= prev_lower);
        prev_lower = l;
      }
    }
  }
}

TEST_CASE("general parameters") {
  CHECK(code_of([] { params_general(8, 0.5); }) == ErrorCode::EpsOutOfRange);
  CHECK(code_of([] { params_general(8, 0.0); }) == ErrorCode::EpsOutOfRange);
  for (std::size_t n : {2, 3, 8, 20, 100, 1000}) {
    for (double eps : {0.01, 0.1, 0.25, 0.4, 0.49}) {
      const auto p = params_general(n, eps);
      const auto b = gadget_bounds(n, p.log_x, p.y);
      CHECK(p.log_x >= 0.0);
      CHECK(p.y > 0.0);
      CHECK(p.y <= 1.0);
      CHECK(b.upper_if_not_cover <= eps);
      CHECK(b.lower_if_cover > 1.0 - eps);
    }
  }
  SUBCASE("y = Theta(1/n^3), x = O(n^10)") {
    const double eps = 0.25;
    for (std::size_t n = 10; n <= 100000; n *= 10) {
      const auto p = params_general(n, eps);
      const double nd = double(n);
      const double scaled = p.y * nd * nd * nd;
      CHECK(scaled > 0.1);
      CHECK(scaled < 10.0);
      CHECK(p.log_x <= 10.0 * std::log(nd) + std::log(100.0));
    }
  }
  SUBCASE("three-set example size, eps = 0.4") {
    const auto p = params_general(8, 0.4);
    const auto b = gadget_bounds(8, p.log_x, p.y);
    CHECK(b.lower_if_cover > b.upper_if_not_cover);
  }
}

TEST_CASE("cover predicate") {
  const auto inst = three_sets();
  const std::vector<NodeId> all{0, 1, 2};
  const std::vector<NodeId> none{};
  const std::vector<NodeId> s23{1, 2};
  const std::vector<NodeId> s13{0, 2};
  CHECK(is_cover(inst, all));
  CHECK_FALSE(is_cover(inst, none));
  CHECK(is_cover(inst, s23));
  CHECK_FALSE(is_cover(inst, s13));
}

TEST_CASE("helper bounds") {
  SUBCASE("four-state chain absorption") {
    // States: covering (advance to saturated with p, else fail), saturated (succeed with
    // q, else back to covering). Solve h_c = p h_s, h_s = q + (1 - q) h_c directly.
    for (double p : {0.1, 0.5, 0.99}) {
      for (double q : {0.01, 0.3, 1.0}) {
        testing::Matrix a{{1.0, -p}, {-(1.0 - q), 1.0}};
        const auto h = testing::gauss_solve(a, {0.0, q});
        CHECK(cover_chain_absorption(q, p) == doctest::Approx(h[0]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("log lower bound") {
    for (double z : {1e-3, 0.5, 1.0, 10.0, 1e6}) {
      const auto lb = log_lower_bound(z);
      CHECK(lb.value >= lb.bound);
      CHECK(lb.value == doctest::Approx(std::log(1.0 + 1.0 / z)));
    }
  }
  SUBCASE("probability bound") {
    for (std::size_t n : {1, 5, 50}) {
      for (double p : {0.5, 0.9, 0.999}) {
        CHECK(prob_bound_value(std::log(1.0 / p) / double(n), n) >= p);
      }
    }
  }
  SUBCASE("component bounds") {
    CHECK(uncovered_extinction_bound(8, 3, 0.01) == doctest::Approx(std::pow(0.125 / (0.125 + 0.07), 3)));
    CHECK(cover_saturation_bound(8, 5, std::log(1000.0)) ==
          doctest::Approx(std::pow((1000.0 / 8) / (1000.0 / 8 + 8), 5)));
  }
}

TEST_CASE("separation and bracketing on small instances") {
  const std::vector<SetCoverInstance> instances{
      three_sets(),
      make_instance({{1, 2}, {2, 3}, {3, 1}}, 2),
      make_instance({{1}, {2}, {1, 2}}, 1),
      make_instance({{1, 2, 3}, {1}, {2, 3}, {4}}, 2),
  };
  for (const auto& inst : instances) {
    const std::size_t n = inst.node_count();
    const auto params = params_general(n, 0.4);
    const auto g = build_reduction_graph(inst, params);
    const auto bounds = gadget_bounds(n, params.log_x, params.y);
    const auto table = exact_all(g);
    const std::size_t s = inst.sets.size();
    double worst_cover = 1.0;
    double best_other = 0.0;
    for (std::uint64_t mask = 1; mask < (1ULL << s); ++mask) {
      const auto chosen = Configuration::from_mask(s, mask).nodes();
      const double fp = table.fp[mask];
      if (is_cover(inst, chosen)) {
        CHECK(fp >= bounds.lower_if_cover);
        if (chosen.size() == inst.k) worst_cover = std::min(worst_cover, fp);
      } else {
        CHECK(fp <= bounds.upper_if_not_cover);
        if (chosen.size() == inst.k) best_other = std::max(best_other, fp);
      }
    }
    CHECK(worst_cover > best_other);
  }
}
