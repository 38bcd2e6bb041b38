#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "efo/additive.hpp"
#include "efo/envy.hpp"
#include "efo/instances.hpp"
#include "efo/oracle.hpp"
#include "helpers.hpp"

using namespace efo;
using testing::error_with;
using testing::make_additive;
using testing::R;

namespace {

Rational total_of(const Solution& sol) {
  Rational t = 0;
  for (const Rational& p : sol.payments) t += p;
  return t;
}

}  // namespace

TEST_CASE("reserve graph structure") {
  SECTION("one shared unit edge makes a two-cycle") {
    Instance ins = make_additive(2, {{0, 1, R(1), R(1)}});
    ReserveGraph rg = build_reserve_graph(ins);
    CHECK(rg.claim == std::vector<int>{0, 0});
    CHECK(rg.parent == std::vector<int>{1, 0});
    REQUIRE(rg.components.size() == 1);
    CHECK(rg.components[0].cycle == std::vector<int>{0, 1});
    REQUIRE(rg.components[0].trees.size() == 2);
    CHECK(rg.components[0].trees[0] == std::vector<int>{0});
    CHECK(rg.components[0].trees[1] == std::vector<int>{1});
  }
  SECTION("claims follow arcs around a directed triangle") {
    // Each agent's only unit edge points at the next agent, so the cycle in
    // arc order from the smallest member is 0 -> 2 -> 1 -> 0.
    Instance ins = make_additive(3, {{0, 1, R(1), R(1, 2)},
                                     {1, 2, R(1), R(1, 2)},
                                     {0, 2, R(1, 2), R(1)}});
    ReserveGraph rg = build_reserve_graph(ins);
    CHECK(rg.claim == std::vector<int>{0, 1, 2});
    CHECK(rg.parent == std::vector<int>{1, 2, 0});
    REQUIRE(rg.components.size() == 1);
    CHECK(rg.components[0].members == std::vector<int>{0, 1, 2});
    CHECK(rg.components[0].cycle == std::vector<int>{0, 2, 1});
  }
  SECTION("the chain fixture splits into a tree and a pair") {
    Instance ins = gen_epsilon_path(R(1, 100));
    ReserveGraph rg = build_reserve_graph(ins);
    CHECK(rg.claim == std::vector<int>{0, 0, 1, 3, 3});
    REQUIRE(rg.components.size() == 2);
    const auto& c0 = rg.components[0];
    CHECK(c0.members == std::vector<int>{0, 1, 2});
    CHECK(c0.cycle == std::vector<int>{0, 1});
    REQUIRE(c0.trees.size() == 2);
    CHECK(c0.trees[0] == std::vector<int>{0});
    CHECK(c0.trees[1] == std::vector<int>{1, 2});
    const auto& c1 = rg.components[1];
    CHECK(c1.members == std::vector<int>{3, 4});
    CHECK(c1.cycle == std::vector<int>{3, 4});
  }
  SECTION("every agent needs a unit edge and no larger value") {
    CHECK_THROWS_MATCHES(
        build_reserve_graph(make_additive(2, {{0, 1, R(1, 2), R(1)}})), Error,
        error_with(ErrorKind::precondition, "not-unit-normalized"));
    CHECK_THROWS_MATCHES(
        build_reserve_graph(make_additive(2, {{0, 1, R(3, 2), R(1)}})), Error,
        error_with(ErrorKind::precondition, "not-unit-normalized"));
    Instance fam = testing::make_monotone(
        2, {{0, 1, R(1), R(1)}},
        {{FamilyKind::unit_demand, 0, 0}, {FamilyKind::unit_demand, 0, 0}});
    CHECK_THROWS_MATCHES(
        build_reserve_graph(fam), Error,
        error_with(ErrorKind::precondition, "not-additive"));
  }
}

TEST_CASE("solve_additive_multigraph on structured fixtures") {
  SECTION("one contested unit edge costs the losing claimant one") {
    Instance ins = make_additive(2, {{0, 1, R(1), R(1)}});
    Solution sol = solve_additive_multigraph(ins);
    CHECK(sol.payments == std::vector<Rational>{R(1), R(0)});
    REQUIRE(sol.diagnostics.shortfalls.has_value());
    REQUIRE(sol.diagnostics.carried.has_value());
    CHECK((*sol.diagnostics.shortfalls)[0] == 1);
    CHECK((*sol.diagnostics.carried)[0] == 1);
    CHECK(is_ef_with_payments(ins, sol.orientation, sol.payments));
  }
  SECTION("disjoint contested pairs hit the n/2 ceiling exactly") {
    Instance ins = gen_parallel_pairs(2);
    Solution sol = solve_additive_multigraph(ins);
    CHECK(total_of(sol) == 2);
    CHECK(is_ef_with_payments(ins, sol.orientation, sol.payments));
  }
  SECTION("a long reserve cycle settles for free") {
    Instance ins = make_additive(3, {{0, 1, R(1), R(1, 2)},
                                     {1, 2, R(1), R(1, 2)},
                                     {0, 2, R(1, 2), R(1)}});
    Solution sol = solve_additive_multigraph(ins);
    CHECK(total_of(sol) == 0);
    for (int i = 0; i < 3; ++i)
      CHECK(sol.orientation.owner[i] == i);  // everyone keeps their claim
  }
  SECTION("the chain fixture stays under five halves") {
    Instance ins = gen_epsilon_path(R(1, 100));
    Solution sol = solve_additive_multigraph(ins);
    CHECK(is_ef_with_payments(ins, sol.orientation, sol.payments));
    CHECK(total_of(sol) == 2);
    CHECK(total_of(sol) <= R(5, 2));
    // Carried payments are per component and never exceed one per component.
    ReserveGraph rg = build_reserve_graph(ins);
    for (const auto& comp : rg.components) {
      Rational carried = 0;
      for (int j : comp.members) carried += (*sol.diagnostics.carried)[j];
      CHECK(carried <= 1);
    }
  }
}

TEST_CASE("random unit-normalized instances respect the n/2 bound") {
  std::mt19937_64 rng(331);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    int m = (n + 1) / 2 + static_cast<int>(rng() % 8);
    Instance ins = gen_random(rng(), n, m, "additive-unit");
    Solution sol = solve_additive_multigraph(ins);
    CHECK(is_ef_with_payments(ins, sol.orientation, sol.payments));
    CHECK(2 * total_of(sol) <= n);
  }
}

TEST_CASE("the solver is near the optimum on small instances") {
  std::mt19937_64 rng(337);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int m = (n + 1) / 2 + static_cast<int>(rng() % 5);
    Instance ins = gen_random(rng(), n, m, "additive-unit");
    Solution sol = solve_additive_multigraph(ins);
    OracleResult oracle = brute_force_min_subsidy(ins);
    REQUIRE(oracle.feasible);
    CHECK(total_of(sol) >= oracle.min_total);
  }
}
