#include <cmath>

#include "doctest.h"

#include "coherence/exact.hpp"
#include "coherence/generators.hpp"
#include "coherence/simulate.hpp"
#include "oracles.hpp"

using namespace coherence;

namespace {

void check_close(const SimEstimate& e, double target) {
  CHECK(std::abs(e.value - target) <= 0.10 * target);
  CHECK(std::abs(e.value - target) <= 3.0 * e.std_error);
}

SimConfig budget(std::size_t trials = 50) {
  SimConfig c;
  c.dt = 1e-3;
  c.t_total = 200;
  c.trials = trials;
  c.seed = 2024;
  return c;
}

}  // namespace

TEST_CASE("power iteration finds the top eigenvalue") {
  CHECK(largest_eigenvalue(oracle::complete(3)) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(largest_eigenvalue(oracle::path(2)) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(largest_eigenvalue(oracle::path(3)) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("first order on K3 and P2") {
  check_close(simulate_first_order(oracle::complete(3), budget()), 1.0 / 9);
  check_close(simulate_first_order(oracle::path(2), budget()), 1.0 / 8);
}

TEST_CASE("first order on PSFW G_2") {
  const double target = exact::to_double(exact::psfw_theorem1(2).h_fo);
  check_close(simulate_first_order(psfw_iterative(2).graph, budget(30)), target);
}

TEST_CASE("second order on K3 and P3") {
  check_close(simulate_second_order(oracle::complete(3), budget()), 1.0 / 27);
  check_close(simulate_second_order(oracle::path(3), budget()), 5.0 / 27);
}

TEST_CASE("estimates are reproducible and schedule independent") {
  SimConfig c = budget(6);
  c.t_total = 20;
  const auto g = oracle::complete(4);
  const auto a = simulate_second_order(g, c);
  const auto b = simulate_second_order(g, c);
  const auto s = simulate_second_order_serial(g, c);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value == s.value);
  CHECK(simulate_first_order(g, c).value == simulate_first_order_serial(g, c).value);
  c.seed = 2025;
  CHECK(simulate_second_order(g, c).value != a.value);
  CHECK(a.trials_used == 6);
  CHECK(a.steps_used == 20000);
}

TEST_CASE("halving dt does not move the estimate") {
  SimConfig c = budget(40);
  c.t_total = 100;
  const auto g = oracle::complete(3);
  const auto a = simulate_first_order(g, c);
  c.dt /= 2;
  const auto b = simulate_first_order(g, c);
  CHECK(std::abs(a.value - b.value) <= 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("config validation") {
  const auto g = oracle::complete(3);
  SimConfig c = budget(2);
  c.dt = 0.05;
  CHECK_THROWS_WITH(simulate_first_order(g, c), doctest::Contains("--dt 0.01"));
  c = budget(2);
  c.burn_in = 1.0;
  CHECK_THROWS(simulate_first_order(g, c));
  c = budget(0);
  CHECK_THROWS(simulate_first_order(g, c));
  const auto split = build_graph(std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {2, 3}}).graph;
  CHECK_THROWS_WITH(simulate_second_order(split, budget(2)), "graph not connected");
}
