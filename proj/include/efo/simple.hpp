#pragma once

// Bounded-subsidy solver for monotone valuations on simple graphs with
// per-agent unit normalization (every agent's best marginal is exactly 1).
// Total payment is at most n-2, with at least two agents paying nothing.
//
// Let t be the largest single-edge value anywhere (1 under the
// normalization) and (i', j') its lexicographically first witness. A
// designated agent j* outside {i', j'} receives every edge incident to it;
// each remaining edge goes to whichever endpoint values it more alone (ties
// to the lower id). Every agent is then topped up to t: p_i = (t - v_i(A_i))+.
// j* holds its whole neighborhood and i' holds the witness edge, so both
// reach t on their own and pay nothing.
//
// Instances with fewer than three agents fall back to the multigraph solver
// for monotone valuations (its n-1 bound is the best available there).

#include <string>
#include <vector>

#include "efo/envy.hpp"
#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/monotone.hpp"
#include "efo/rational.hpp"

namespace efo {

inline Solution solve_simple_monotone(const Instance& ins) {
  ins.validate();
  if (ins.graph.has_parallel_edges())
    throw_input("parallel-edges", "this solver needs a simple graph");
  if (!all_unit_normalized(ins))
    throw_precondition("not-unit-normalized",
                       "every agent needs best marginal value exactly 1");
  const int n = ins.n();
  const int m = ins.m();
  if (n < 3) return solve_monotone_multigraph(ins);

  Rational t = 0;
  for (const Edge& e : ins.graph.edges) {
    t = std::max(t, ins.singleton_value(e.u, e.id));
    t = std::max(t, ins.singleton_value(e.v, e.id));
  }
  int wit_i = -1, wit_j = -1;
  auto incidence = ins.graph.incidence();
  for (int i = 0; i < n && wit_i < 0; ++i) {
    int best_j = -1;
    for (int e : incidence[i]) {
      int j = ins.graph.edges[e].other(i);
      if (ins.singleton_value(i, e) == t && (best_j < 0 || j < best_j)) best_j = j;
    }
    if (best_j >= 0) {
      wit_i = i;
      wit_j = best_j;
    }
  }
  check_internal(wit_i >= 0, "simple-no-witness");
  int star = 0;
  while (star == wit_i || star == wit_j) ++star;

  std::vector<int> owner(m, -1);
  for (const Edge& e : ins.graph.edges) {
    if (e.touches(star)) {
      owner[e.id] = star;
      continue;
    }
    Rational vu = ins.singleton_value(e.u, e.id);
    Rational vv = ins.singleton_value(e.v, e.id);
    owner[e.id] = vu > vv ? e.u : vv > vu ? e.v : std::min(e.u, e.v);
  }

  Solution sol;
  sol.orientation.owner = owner;
  sol.orientation.validate_for(ins.graph);
  auto bundles = sol.orientation.bundles(n);
  sol.payments.assign(n, 0);
  Rational total = 0;
  int zero_payers = 0;
  for (int i = 0; i < n; ++i) {
    sol.payments[i] = positive_part(t - ins.value(i, bundles[i]));
    total += sol.payments[i];
    if (sol.payments[i] == 0) ++zero_payers;
  }
  check_internal(sol.payments[star] == 0 && sol.payments[wit_i] == 0,
                 "simple-anchor-pays");
  check_internal(zero_payers >= 2, "simple-zero-payers");
  check_internal(total <= Rational(n - 2), "simple-total-guard");
  check_internal(is_ef_with_payments(ins, sol.orientation, sol.payments),
                 "simple-envy-guard");
  return sol;
}

}  // namespace efo
