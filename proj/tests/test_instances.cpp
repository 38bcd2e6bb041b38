#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "efo/envy.hpp"
#include "efo/instances.hpp"
#include "efo/json_io.hpp"
#include "efo/oracle.hpp"
#include "helpers.hpp"

using namespace efo;
using testing::error_with;
using testing::R;

TEST_CASE("formula validation") {
  Formula f = gen_random_2p2n3(7, 3);
  CHECK_NOTHROW(validate_formula(f));

  SECTION("literals must name real variables") {
    Formula bad = f;
    bad.clauses[0][0] = 4;
    CHECK_THROWS_MATCHES(validate_formula(bad), Error,
                         error_with(ErrorKind::input, "bad-formula"));
  }
  SECTION("clauses hold three distinct literals") {
    Formula bad = f;
    bad.clauses[0] = {1, 1, -2};
    CHECK_THROWS_MATCHES(validate_formula(bad), Error,
                         error_with(ErrorKind::input, "bad-formula"));
  }
  SECTION("each variable occurs twice per sign") {
    Formula bad = f;
    bad.clauses.pop_back();
    CHECK_THROWS_MATCHES(validate_formula(bad), Error,
                         error_with(ErrorKind::input, "bad-formula"));
  }
  SECTION("the exhaustive scan is capped") {
    Formula big = gen_random_2p2n3(11, 21);
    CHECK_THROWS_MATCHES(formula_satisfiable(big), Error,
                         error_with(ErrorKind::input, "too-many-variables"));
  }
}

TEST_CASE("the satisfiability reduction") {
  Formula f = gen_random_2p2n3(42, 3);
  Instance ins = gen_from_2p2n3sat(f);

  SECTION("vertex and edge counts") {
    CHECK(ins.n() == 14);  // 2 per variable + clause and dummy per clause
    CHECK(ins.m() == 19);  // 3 variable edges + 12 literal + 4 dummy
  }
  SECTION("variable edges are worth one, the rest a half") {
    for (int v = 0; v < 3; ++v) {
      CHECK(ins.graph.edges[v].u == 2 * v);
      CHECK(ins.graph.edges[v].v == 2 * v + 1);
      CHECK(ins.base_value(2 * v, v) == 1);
      CHECK(ins.base_value(2 * v + 1, v) == 1);
    }
    for (int e = 3; e < 19; ++e) {
      const Edge& edge = ins.graph.edges[e];
      CHECK(ins.base_value(edge.u, e) == R(1, 2));
      CHECK(ins.base_value(edge.v, e) == R(1, 2));
    }
  }
  SECTION("dummies hang off their clause vertex") {
    for (int j = 0; j < 4; ++j) {
      const Edge& e = ins.graph.edges[15 + j];
      CHECK(e.u == 6 + j);
      CHECK(e.v == 10 + j);
    }
  }
  SECTION("zero-subsidy feasibility tracks satisfiability") {
    for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
      Formula g = gen_random_2p2n3(seed, 3);
      CHECK(exists_ef_zero(gen_from_2p2n3sat(g)) == formula_satisfiable(g));
    }
  }
}

TEST_CASE("random formulas are deterministic and well-formed") {
  Formula a = gen_random_2p2n3(99, 6);
  Formula b = gen_random_2p2n3(99, 6);
  CHECK(a.variables == b.variables);
  CHECK(a.clauses == b.clauses);
  CHECK(a.clauses.size() == 8);
  CHECK_THROWS_MATCHES(gen_random_2p2n3(1, 4), Error,
                       error_with(ErrorKind::input, "bad-formula"));
  CHECK_THROWS_MATCHES(gen_random_2p2n3(1, 0), Error,
                       error_with(ErrorKind::input, "bad-formula"));
}

TEST_CASE("lower-bound families") {
  SECTION("disjoint pairs") {
    Instance ins = gen_parallel_pairs(3);
    CHECK(ins.n() == 6);
    CHECK(ins.m() == 3);
    for (int e = 0; e < 3; ++e) {
      CHECK(ins.graph.edges[e].u == 2 * e);
      CHECK(ins.graph.edges[e].v == 2 * e + 1);
    }
    CHECK(brute_force_min_subsidy(ins).min_total == 3);
    CHECK_THROWS_MATCHES(gen_parallel_pairs(0), Error,
                         error_with(ErrorKind::input, "bad-pairs"));
  }
  SECTION("unit pair plus threshold clique") {
    Instance ins = gen_threshold_clique(5);
    CHECK(ins.n() == 5);
    CHECK(ins.m() == 4);  // the pair edge and a triangle on {2,3,4}
    CHECK(ins.family(0).kind == FamilyKind::plain_additive);
    CHECK(ins.family(1).kind == FamilyKind::plain_additive);
    for (int i = 2; i < 5; ++i) {
      CHECK(ins.family(i).kind == FamilyKind::all_or_nothing_degree);
      CHECK(ins.family(i).threshold == 2);
    }
    CHECK(brute_force_min_subsidy(ins).min_total == 3);
    CHECK(brute_force_min_subsidy(gen_threshold_clique(6)).min_total == 4);
    CHECK_THROWS_MATCHES(gen_threshold_clique(4), Error,
                         error_with(ErrorKind::input, "bad-n"));
  }
  SECTION("the five-agent path") {
    Instance ins = gen_epsilon_path(R(1, 100));
    CHECK(ins.n() == 5);
    REQUIRE(ins.m() == 4);
    CHECK(ins.base_value(0, 0) == 1);
    CHECK(ins.base_value(1, 0) == 1);
    CHECK(ins.base_value(1, 1) == R(1, 10000));
    CHECK(ins.base_value(2, 1) == 1);
    CHECK(ins.base_value(2, 2) == R(99, 100));
    CHECK(ins.base_value(3, 2) == R(1, 100));
    CHECK(ins.base_value(3, 3) == 1);
    CHECK(ins.base_value(4, 3) == 1);
    CHECK(brute_force_min_subsidy(ins).min_total == 2);
    CHECK_THROWS_MATCHES(gen_epsilon_path(R(0)), Error,
                         error_with(ErrorKind::input, "bad-epsilon"));
    CHECK_THROWS_MATCHES(gen_epsilon_path(R(1, 2)), Error,
                         error_with(ErrorKind::input, "bad-epsilon"));
  }
}

TEST_CASE("seeded random instances") {
  SECTION("identical seeds give byte-identical instances") {
    for (const char* kind : {"binary", "bivalued12", "additive-unit",
                             "monotone-family"}) {
      Instance a = gen_random(5, 6, 7, kind);
      Instance b = gen_random(5, 6, 7, kind);
      CHECK(serialize_instance(a) == serialize_instance(b));
    }
  }
  SECTION("binary instances use only zero and one") {
    Instance ins = gen_random(8, 5, 9, "binary");
    for (const auto& [vu, vv] : ins.valuation.edge_values) {
      CHECK((vu == 0 || vu == 1));
      CHECK((vv == 0 || vv == 1));
    }
    CHECK(ins.is_binary_additive());
  }
  SECTION("bivalued instances use only one and two") {
    Instance ins = gen_random(8, 5, 9, "bivalued12");
    for (const auto& [vu, vv] : ins.valuation.edge_values) {
      CHECK((vu == 1 || vu == 2));
      CHECK((vv == 1 || vv == 2));
    }
  }
  SECTION("unit kinds cover and normalize every agent") {
    for (const char* kind : {"additive-unit", "monotone-family"}) {
      Instance ins = gen_random(13, 7, 9, kind);
      CHECK(all_unit_normalized(ins));
      auto incidence = ins.graph.incidence();
      for (int i = 0; i < ins.n(); ++i) CHECK_FALSE(incidence[i].empty());
    }
    CHECK_FALSE(gen_random(13, 7, 9, "monotone-family").valuation.additive);
  }
  SECTION("the simple flag forbids repeated endpoint pairs") {
    Instance ins = gen_random(21, 6, 15, "binary", /*simple=*/true);
    CHECK_FALSE(ins.graph.has_parallel_edges());
  }
  SECTION("size and kind errors") {
    CHECK_THROWS_MATCHES(gen_random(1, 1, 3, "binary"), Error,
                         error_with(ErrorKind::input, "bad-size"));
    CHECK_THROWS_MATCHES(gen_random(1, 4, 0, "binary"), Error,
                         error_with(ErrorKind::input, "bad-size"));
    CHECK_THROWS_MATCHES(gen_random(1, 9, 4, "additive-unit"), Error,
                         error_with(ErrorKind::input, "bad-size"));
    CHECK_THROWS_MATCHES(gen_random(1, 6, 16, "binary", true), Error,
                         error_with(ErrorKind::input, "bad-size"));
    CHECK_THROWS_MATCHES(gen_random(1, 4, 4, "uniform"), Error,
                         error_with(ErrorKind::input, "bad-kind"));
  }
}

TEST_CASE("the fixable-pairs cycle fixture") {
  Instance ins = gen_locally_efable_cycle();
  Orientation bad = testing::bad_triangle_orientation();
  CHECK_FALSE(is_envy_freeable(ins, bad));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(local_efable(ins, bad, i, j));
}
