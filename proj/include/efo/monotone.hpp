#pragma once

// Bounded-subsidy solver for monotone valuations on multigraphs, with every
// marginal value at most 1. Total payment stays below the number of agents:
// at most 1 per agent and at least one agent pays 0.
//
// Each adjacent pair is first split provisionally by the two-agent
// envy-cycle routine on the shared edges. Thresholds b_i record the best
// guaranteed pair value an agent could defend: the max over neighbors of the
// worse side of that pair's provisional split. A pair whose provisional
// split leaves no envy on the shared edges is kept. Otherwise both agents
// weakly prefer the same side T, and the agent with the larger surplus
// v(T) - b wins it (ties to the lower id); the other keeps the complement.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "efo/envy.hpp"
#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/subroutines.hpp"

namespace efo {

inline Solution solve_monotone_multigraph(const Instance& ins) {
  ins.validate();
  for (const NormalizationReport& norm : check_normalization(ins))
    if (norm.max_marginal > 1)
      throw_precondition("not-normalized",
                         "some marginal value exceeds 1: " + to_string(norm.max_marginal));
  const int n = ins.n();
  const int m = ins.m();

  std::map<std::pair<int, int>, std::vector<int>> pair_items;
  for (const Edge& e : ins.graph.edges)
    pair_items[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.id);

  std::map<std::pair<int, int>, TwoSplit> temp;
  for (const auto& [pq, items] : pair_items)
    temp[pq] = envy_cycle_two(ins, pq.first, pq.second, items);

  std::vector<Rational> b(n, 0);
  for (const auto& [pq, split] : temp) {
    auto [i, j] = pq;
    b[i] = std::max(b[i], std::min(ins.value(i, split.first), ins.value(i, split.second)));
    b[j] = std::max(b[j], std::min(ins.value(j, split.first), ins.value(j, split.second)));
  }

  std::vector<int> owner(m, -1);
  auto assign = [&owner](const std::vector<int>& items, int who) {
    for (int e : items) owner[e] = who;
  };
  for (const auto& [pq, split] : temp) {
    auto [i, j] = pq;
    const std::vector<int>& x = split.first;
    const std::vector<int>& y = split.second;
    Rational vix = ins.value(i, x), viy = ins.value(i, y);
    Rational vjx = ins.value(j, x), vjy = ins.value(j, y);
    if (vix >= viy && vjy >= vjx) {
      assign(x, i);
      assign(y, j);
      continue;
    }
    check_internal(!(vix < viy && vjy < vjx), "monotone-mutual-envy");
    // Exactly one agent envies; both weakly prefer the envied side.
    const std::vector<int>& t = vix < viy ? y : x;
    const std::vector<int>& rest = vix < viy ? x : y;
    bool i_wins = ins.value(i, t) - b[i] >= ins.value(j, t) - b[j];
    assign(t, i_wins ? i : j);
    assign(rest, i_wins ? j : i);
  }

  Solution sol;
  sol.orientation.owner = owner;
  sol.orientation.validate_for(ins.graph);
  sol.payments = min_payments(ins, sol.orientation);
  sol.diagnostics.thresholds = b;

  auto bundles = sol.orientation.bundles(n);
  Rational total = 0;
  for (int i = 0; i < n; ++i) {
    check_internal(ins.value(i, bundles[i]) >= b[i], "monotone-threshold-guard");
    check_internal(sol.payments[i] <= 1, "monotone-payment-guard");
    total += sol.payments[i];
  }
  check_internal(total <= Rational(n - 1), "monotone-total-guard");
  return sol;
}

}  // namespace efo
