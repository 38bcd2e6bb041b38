#pragma once

// Instance generators: the satisfiability reduction, the lower-bound
// families, a 5-agent path fixture, and seeded random corpora.

#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/rational.hpp"

namespace efo {

// A CNF formula in which every variable occurs exactly twice positively and
// twice negatively and every clause holds three distinct literals. Literals
// are signed 1-based variable ids: +v for x_v, -v for its negation.
struct Formula {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

inline void validate_formula(const Formula& f) {
  if (f.variables <= 0) throw_input("bad-formula", "no variables");
  std::vector<int> pos(f.variables, 0), neg(f.variables, 0);
  for (const auto& cl : f.clauses) {
    for (int lit : cl) {
      int v = lit > 0 ? lit : -lit;
      if (v < 1 || v > f.variables) throw_input("bad-formula", "literal out of range");
      (lit > 0 ? pos : neg)[v - 1] += 1;
    }
    if (cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2])
      throw_input("bad-formula", "repeated literal in a clause");
  }
  for (int v = 0; v < f.variables; ++v)
    if (pos[v] != 2 || neg[v] != 2)
      throw_input("bad-formula", "variable " + std::to_string(v + 1) +
                                     " must occur twice positively and twice negatively");
}

// Exhaustive satisfiability scan; fine for the corpus sizes used here.
inline bool formula_satisfiable(const Formula& f) {
  validate_formula(f);
  if (f.variables > 20) throw_input("too-many-variables", "exhaustive scan capped at 20");
  for (unsigned long long mask = 0; mask < (1ULL << f.variables); ++mask) {
    bool all = true;
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (int lit : cl) {
        int v = (lit > 0 ? lit : -lit) - 1;
        bool val = (mask >> v) & 1ULL;
        sat = sat || (lit > 0 ? val : !val);
      }
      all = all && sat;
    }
    if (all) return true;
  }
  return false;
}

// Graph encoding of a formula: deciding whether any orientation is envy-free
// with zero payments is exactly deciding satisfiability. Vertices 2i and
// 2i+1 are the positive and negative side of variable i; each clause brings
// a clause vertex and a degree-one dummy neighbor. The variable edge is
// worth 1 to both sides, every other edge 1/2 to both sides.
inline Instance gen_from_2p2n3sat(const Formula& f) {
  validate_formula(f);
  const int nv = f.variables;
  const int mc = static_cast<int>(f.clauses.size());

  Instance ins;
  ins.graph.n_agents = 2 * nv + 2 * mc;
  ins.valuation.additive = true;
  auto add_edge = [&ins](int u, int v, const Rational& val) {
    int id = static_cast<int>(ins.graph.edges.size());
    ins.graph.edges.push_back({id, u, v});
    ins.valuation.edge_values.push_back({val, val});
  };
  const Rational half = make_rational(1, 2);
  for (int i = 0; i < nv; ++i) add_edge(2 * i, 2 * i + 1, 1);
  for (int j = 0; j < mc; ++j)
    for (int lit : f.clauses[j]) {
      int v = (lit > 0 ? lit : -lit) - 1;
      int vertex = lit > 0 ? 2 * v : 2 * v + 1;
      add_edge(vertex, 2 * nv + j, half);
    }
  for (int j = 0; j < mc; ++j) add_edge(2 * nv + j, 2 * nv + mc + j, half);

  check_internal(ins.m() == nv + 4 * mc && 3 * mc == 4 * nv, "reduction-count");
  ins.validate();
  return ins;
}

// Random formula over a multiple of 3 variables: the 4n literal occurrences
// are shuffled into clauses of three, redrawing until no clause repeats a
// literal.
inline Formula gen_random_2p2n3(unsigned long long seed, int variables) {
  if (variables <= 0 || variables % 3 != 0)
    throw_input("bad-formula", "variable count must be a positive multiple of 3");
  std::mt19937_64 rng(seed);
  const int mc = 4 * variables / 3;
  Formula f;
  f.variables = variables;
  std::vector<int> slots;
  for (int v = 1; v <= variables; ++v) slots.insert(slots.end(), {v, v, -v, -v});
  while (true) {
    for (int i = static_cast<int>(slots.size()) - 1; i > 0; --i)
      std::swap(slots[i], slots[rng() % (i + 1)]);
    f.clauses.clear();
    bool ok = true;
    for (int j = 0; j < mc; ++j) {
      std::array<int, 3> cl{slots[3 * j], slots[3 * j + 1], slots[3 * j + 2]};
      ok = ok && cl[0] != cl[1] && cl[0] != cl[2] && cl[1] != cl[2];
      f.clauses.push_back(cl);
    }
    if (ok) break;
  }
  validate_formula(f);
  return f;
}

// k disjoint unit edges: the minimum total subsidy is exactly k.
inline Instance gen_parallel_pairs(int pairs) {
  if (pairs < 1) throw_input("bad-pairs", "need at least one pair");
  Instance ins;
  ins.graph.n_agents = 2 * pairs;
  ins.valuation.additive = true;
  for (int i = 0; i < pairs; ++i) {
    ins.graph.edges.push_back({i, 2 * i, 2 * i + 1});
    ins.valuation.edge_values.push_back({1, 1});
  }
  ins.validate();
  return ins;
}

// A unit edge on agents {0,1} plus a clique on the rest whose members value
// only their complete neighborhood: minimum total subsidy n-2.
inline Instance gen_threshold_clique(int n) {
  if (n < 5) throw_input("bad-n", "need at least 5 agents");
  Instance ins;
  ins.graph.n_agents = n;
  ins.valuation.additive = false;
  ins.valuation.families.assign(n, {});
  ins.valuation.families[0] = {FamilyKind::plain_additive, 0, 0};
  ins.valuation.families[1] = {FamilyKind::plain_additive, 0, 0};
  for (int i = 2; i < n; ++i)
    ins.valuation.families[i] = {FamilyKind::all_or_nothing_degree, 0, n - 3};

  ins.graph.edges.push_back({0, 0, 1});
  ins.valuation.edge_values.push_back({1, 1});
  for (int a = 2; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int id = static_cast<int>(ins.graph.edges.size());
      ins.graph.edges.push_back({id, a, b});
      ins.valuation.edge_values.push_back({1, 1});
    }
  ins.validate();
  return ins;
}

// Five agents on a path; the additive solver stays within 5/2 here while
// matching-based allocation needs 3.
inline Instance gen_epsilon_path(const Rational& eps) {
  if (!(eps > 0) || !(eps < make_rational(1, 2)))
    throw_input("bad-epsilon", "epsilon must lie strictly between 0 and 1/2");
  Instance ins;
  ins.graph.n_agents = 5;
  ins.valuation.additive = true;
  auto add_edge = [&ins](int u, int v, const Rational& vu, const Rational& vv) {
    int id = static_cast<int>(ins.graph.edges.size());
    ins.graph.edges.push_back({id, u, v});
    ins.valuation.edge_values.push_back({vu, vv});
  };
  add_edge(0, 1, 1, 1);
  add_edge(1, 2, eps * eps, 1);
  add_edge(2, 3, 1 - eps, eps);
  add_edge(3, 4, 1, 1);
  ins.validate();
  return ins;
}

// Seeded random instances. Kinds: "binary" (values in {0,1}),
// "bivalued12" (values in {1,2}), "additive-unit" (positive values rescaled
// so every agent's best incident edge is exactly 1), "monotone-family"
// (mixed valuation families, every agent's best marginal exactly 1). The
// unit-normalized kinds place the first edges so every agent is covered and
// therefore need m >= n/2; `simple` forbids repeated endpoint pairs and
// needs m <= n(n-1)/2.
inline Instance gen_random(unsigned long long seed, int n, int m,
                           const std::string& kind, bool simple = false) {
  if (n < 2 || m < 1) throw_input("bad-size", "need n >= 2 and m >= 1");
  bool covered_kind = kind == "additive-unit" || kind == "monotone-family";
  if (kind != "binary" && kind != "bivalued12" && !covered_kind)
    throw_input("bad-kind", "unknown profile kind: " + kind);
  if (covered_kind && 2 * m < n)
    throw_input("bad-size", kind + " needs m >= n/2 to cover every agent");
  if (simple && 2 * m > n * (n - 1))
    throw_input("bad-size", "a simple graph on n agents has at most n(n-1)/2 edges");

  std::mt19937_64 rng(seed);
  Instance ins;
  ins.graph.n_agents = n;
  std::set<std::pair<int, int>> used;
  std::set<int> uncovered;
  if (covered_kind)
    for (int i = 0; i < n; ++i) uncovered.insert(i);
  for (int id = 0; id < m; ++id) {
    int u, v;
    if (uncovered.size() >= 2) {
      u = *uncovered.begin();
      v = *std::next(uncovered.begin());
    } else if (uncovered.size() == 1) {
      u = *uncovered.begin();
      do v = static_cast<int>(rng() % n); while (v == u);
    } else {
      do {
        u = static_cast<int>(rng() % n);
        v = static_cast<int>(rng() % n);
      } while (u == v || (simple && used.count({std::min(u, v), std::max(u, v)})));
    }
    used.insert({std::min(u, v), std::max(u, v)});
    uncovered.erase(u);
    uncovered.erase(v);
    ins.graph.edges.push_back({id, u, v});
  }

  auto draw_value = [&rng](const std::string& k) -> Rational {
    if (k == "binary") return Rational(rng() % 2);
    if (k == "bivalued12") return Rational(1 + rng() % 2);
    return make_rational(1 + static_cast<long long>(rng() % 8), 8);  // positive
  };
  for (int id = 0; id < m; ++id)
    ins.valuation.edge_values.push_back({draw_value(kind), draw_value(kind)});

  if (kind == "monotone-family") {
    ins.valuation.additive = false;
    ins.valuation.families.assign(n, {});
    auto degree = [&ins](int agent) {
      int d = 0;
      for (const Edge& e : ins.graph.edges) d += e.touches(agent) ? 1 : 0;
      return d;
    };
    for (int i = 0; i < n; ++i) {
      switch (rng() % 4) {
        case 0:
          ins.valuation.families[i] = {FamilyKind::plain_additive, 0, 0};
          break;
        case 1:
          ins.valuation.families[i] = {FamilyKind::additive_capped,
                                       1 + make_rational(rng() % 3, 2), 0};
          break;
        case 2:
          ins.valuation.families[i] = {FamilyKind::all_or_nothing_degree, 0,
                                       1 + static_cast<long>(rng() % degree(i))};
          break;
        default:
          ins.valuation.families[i] = {FamilyKind::unit_demand, 0, 0};
          break;
      }
    }
  }

  if (covered_kind) {
    // Rescale so each agent's best incident value is exactly 1; degree-count
    // valuers ignore base values and already have best marginal 1.
    std::vector<Rational> top(n, 0);
    for (const Edge& e : ins.graph.edges) {
      top[e.u] = std::max(top[e.u], ins.valuation.edge_values[e.id].at_u);
      top[e.v] = std::max(top[e.v], ins.valuation.edge_values[e.id].at_v);
    }
    for (Edge& e : ins.graph.edges) {
      ins.valuation.edge_values[e.id].at_u /= top[e.u];
      ins.valuation.edge_values[e.id].at_v /= top[e.v];
    }
  }

  ins.validate();
  return ins;
}

// Three unit-demand agents on a triangle of doubled edges. Orienting every
// pair so that each agent keeps the edge its neighbour covets leaves every
// pair locally fixable, yet the cyclic envy 0 -> 1 -> 2 -> 0 sums to exactly
// 1, so no payment vector makes the whole orientation envy-free. Regression
// fixture for the gap between pairwise and global envy-freeability.
inline Instance gen_locally_efable_cycle() {
  Instance ins;
  ins.graph.n_agents = 3;
  ins.valuation.additive = false;
  ins.valuation.families.assign(3, {FamilyKind::unit_demand, 0, 0});
  auto add_edge = [&ins](int u, int v, const Rational& vu, const Rational& vv) {
    int id = static_cast<int>(ins.graph.edges.size());
    ins.graph.edges.push_back({id, u, v});
    ins.valuation.edge_values.push_back({vu, vv});
  };
  const Rational two_thirds = make_rational(2, 3);
  add_edge(0, 1, 1, two_thirds);
  add_edge(0, 1, two_thirds, 0);
  add_edge(1, 2, 1, two_thirds);
  add_edge(1, 2, two_thirds, 0);
  add_edge(0, 2, two_thirds, 1);
  add_edge(0, 2, 0, two_thirds);
  ins.validate();
  return ins;
}

}  // namespace efo
