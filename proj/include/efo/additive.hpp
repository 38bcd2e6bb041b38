#pragma once

// Bounded-subsidy solver for additive valuations on multigraphs where every
// agent is unit-normalized: each has an incident edge valued exactly 1 and
// none valued more. Total payment is at most n/2.
//
// Each agent claims its lowest-id unit-valued incident edge. The claims form
// a reserve digraph with an arc from the edge's other endpoint to the
// claimant, so every vertex has in-degree one and every weak component holds
// exactly one directed cycle (length 2 or more) with out-trees hanging off
// the cycle vertices.
//
// Phase 1 allocates the edge sets of arc-adjacent pairs. A component with a
// long cycle is settled by round-robin per arc, claimant picking first. A
// two-cycle component first splits the mutual pair between its two roots;
// if either root still envies the other on that pair, the envious root's
// tree is settled top-down by the compensating subroutine (which tracks a
// shortfall w and a carried payment t per vertex and occasionally prefers a
// max-utility split or swaps one child's pair), while the other root's tree
// is settled by plain round-robin. Phase 2 splits the remaining pairs and
// only ever lowers the payments initialized from t.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/rational.hpp"
#include "efo/subroutines.hpp"

namespace efo {

struct ReserveGraph {
  std::vector<int> claim;   // per agent: the claimed edge id
  std::vector<int> parent;  // other endpoint of the claim; arcs run parent -> claimant
  std::vector<std::vector<int>> children;  // claimants from each agent, ascending
  struct Component {
    std::vector<int> members;  // sorted
    std::vector<int> cycle;    // in arc order, starting at the smallest cycle member
    std::vector<std::vector<int>> trees;  // trees[t]: BFS order of the out-tree rooted at cycle[t]
  };
  std::vector<Component> components;
};

inline ReserveGraph build_reserve_graph(const Instance& ins) {
  ins.validate();
  if (!ins.valuation.additive)
    throw_precondition("not-additive", "reserve graphs need an additive profile");
  const int n = ins.n();
  ReserveGraph rg;
  rg.claim.assign(n, -1);
  rg.parent.assign(n, -1);
  rg.children.assign(n, {});

  auto incidence = ins.graph.incidence();
  for (int i = 0; i < n; ++i) {
    for (int e : incidence[i]) {
      Rational b = ins.base_value(i, e);
      if (b > 1)
        throw_precondition("not-unit-normalized",
                           "agent " + std::to_string(i) + " values edge " +
                               std::to_string(e) + " above 1");
      if (b == 1 && rg.claim[i] < 0) rg.claim[i] = e;
    }
    if (rg.claim[i] < 0)
      throw_precondition("not-unit-normalized",
                         "agent " + std::to_string(i) +
                             " has no incident edge valued exactly 1");
    rg.parent[i] = ins.graph.edges[rg.claim[i]].other(i);
  }
  for (int i = 0; i < n; ++i) rg.children[rg.parent[i]].push_back(i);

  std::vector<int> comp_of(n, -1);
  for (int start = 0; start < n; ++start) {
    if (comp_of[start] >= 0) continue;
    int id = static_cast<int>(rg.components.size());
    rg.components.emplace_back();
    std::vector<int> queue{start};
    comp_of[start] = id;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      rg.components[id].members.push_back(v);
      std::vector<int> nb = rg.children[v];
      nb.push_back(rg.parent[v]);
      for (int o : nb)
        if (comp_of[o] < 0) {
          comp_of[o] = id;
          queue.push_back(o);
        }
    }
  }

  for (ReserveGraph::Component& c : rg.components) {
    std::sort(c.members.begin(), c.members.end());
    // Walk parent pointers until a vertex repeats: the loop is the unique
    // cycle, traversed against the arcs; reverse to get arc order.
    std::vector<int> walk;
    std::map<int, int> pos;
    int x = c.members.front();
    while (!pos.count(x)) {
      pos[x] = static_cast<int>(walk.size());
      walk.push_back(x);
      x = rg.parent[x];
    }
    std::vector<int> cyc(walk.begin() + pos[x], walk.end());
    std::reverse(cyc.begin(), cyc.end());
    auto lowest = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), lowest, cyc.end());
    c.cycle = cyc;
    check_internal(c.cycle.size() >= 2, "reserve-short-cycle");

    std::set<int> on_cycle(c.cycle.begin(), c.cycle.end());
    for (int root : c.cycle) {
      std::vector<int> order{root};
      for (std::size_t head = 0; head < order.size(); ++head)
        for (int ch : rg.children[order[head]])
          if (!on_cycle.count(ch)) order.push_back(ch);
      c.trees.push_back(std::move(order));
    }
  }
  return rg;
}

inline Solution solve_additive_multigraph(const Instance& ins) {
  ReserveGraph rg = build_reserve_graph(ins);
  const int n = ins.n();
  const int m = ins.m();

  std::vector<int> owner(m, -1);
  std::set<std::pair<int, int>> settled_pairs;

  auto pair_items = [&ins](int a, int b) { return ins.graph.edges_between(a, b); };
  auto side_of = [&](int who, int other) {
    std::vector<int> out;
    for (int e : pair_items(who, other))
      if (owner[e] == who) out.push_back(e);
    return out;
  };
  auto full_bundle = [&](int who) {
    std::vector<int> out;
    for (int e = 0; e < m; ++e)
      if (owner[e] == who && ins.graph.edges[e].touches(who)) out.push_back(e);
    return out;
  };
  auto own_value = [&](int who) { return ins.value(who, full_bundle(who)); };
  auto commit = [&](int a, const std::vector<int>& ba, int b,
                    const std::vector<int>& bb) {
    for (int e : ba) owner[e] = a;
    for (int e : bb) owner[e] = b;
    settled_pairs.insert({std::min(a, b), std::max(a, b)});
  };
  auto swap_pair = [&](int a, int b) {
    for (int e : pair_items(a, b)) owner[e] = owner[e] == a ? b : a;
  };
  auto split_efable = [&](int a, const std::vector<int>& ba, int b,
                          const std::vector<int>& bb) {
    return ins.value(a, ba) + ins.value(b, bb) >= ins.value(a, bb) + ins.value(b, ba);
  };

  std::vector<Rational> w(n, 0), t(n, 0);
  std::vector<bool> w_set(n, false), t_set(n, false);
  std::vector<std::pair<int, std::vector<int>>> spread_log;  // (vertex, tree children)

  std::set<int> cycle_members;
  for (const auto& c : rg.components) cycle_members.insert(c.cycle.begin(), c.cycle.end());
  auto tree_kids = [&](int x) {
    std::vector<int> out;
    for (int ch : rg.children[x])
      if (!cycle_members.count(ch)) out.push_back(ch);
    return out;
  };

  auto sub1_node = [&](int i) {
    for (int j : tree_kids(i)) {
      TwoSplit s = round_robin(ins, j, i, pair_items(i, j), rg.claim[j]);
      commit(j, s.first, i, s.second);
    }
  };

  auto sub2_node = [&](int i) {
    int s_agent = rg.parent[i];
    std::vector<int> kids = tree_kids(i);
    std::vector<int> own_s = side_of(i, s_agent);
    std::vector<int> other_s = side_of(s_agent, i);

    check_internal(!w_set[i], "additive-shortfall-rewrite");
    w[i] = positive_part(t[s_agent] + ins.value(i, other_s) - ins.value(i, own_s));
    w_set[i] = true;
    check_internal(ins.value(i, own_s) + w[i] >= 1, "additive-floor-guard");

    std::map<int, TwoSplit> rr;  // per child: first = child's virtual bundle
    for (int j : kids) rr[j] = round_robin(ins, j, i, pair_items(i, j), rg.claim[j]);

    // Best alternative k among the parent's committed bundle (plus its
    // carried payment) and the children's virtual bundles; ties keep the
    // parent, then the lowest id.
    int k = s_agent;
    Rational best = ins.value(i, other_s) + t[s_agent];
    for (int j : kids) {
      Rational score = ins.value(i, rr[j].first);
      if (score > best) {
        best = score;
        k = j;
      }
    }

    std::vector<int> contested;  // children whose whole pair is worth less than k's offer
    std::map<int, TwoSplit> mu;  // per contested child: first = child's bundle
    for (int j : kids)
      if (ins.value(i, pair_items(i, j)) < best) {
        contested.push_back(j);
        mu[j] = max_utility(ins, j, i, pair_items(i, j));
      }
    check_internal(std::find(contested.begin(), contested.end(), k) == contested.end(),
                   "additive-contested-k");

    // Settle contested children by their envy d under the max-utility split:
    // the first child with 0 <= d <= w_i keeps that split, later ones and the
    // overflow cases fall back to round-robin; negative-envy children keep
    // the max-utility split as well.
    std::set<int> in_contested(contested.begin(), contested.end());
    auto mu_envy = [&](int j) {
      return ins.value(j, mu[j].second) - ins.value(j, mu[j].first);
    };
    bool balanced_taken = false;
    for (int j : contested) {
      Rational d = mu_envy(j);
      if (d >= 0 && d <= w[i]) {
        if (!balanced_taken) {
          balanced_taken = true;
          commit(j, mu[j].first, i, mu[j].second);
        } else {
          commit(j, rr[j].first, i, rr[j].second);
        }
      }
    }
    for (int j : contested)
      if (mu_envy(j) > w[i]) commit(j, rr[j].first, i, rr[j].second);
    for (int j : contested)
      if (mu_envy(j) < 0) commit(j, mu[j].first, i, mu[j].second);
    for (int j : kids)
      if (!in_contested.count(j)) commit(j, rr[j].first, i, rr[j].second);

    // Among uncontested children, one local-EFability violation (measured
    // against i's full bundle) may be repaired by swapping that pair; pick
    // the violator whose bundle i values most.
    int q = -1;
    Rational q_value = 0;
    Rational mine = own_value(i);
    for (int j : kids) {
      if (in_contested.count(j)) continue;
      std::vector<int> j_side = side_of(j, i);
      std::vector<int> i_side = side_of(i, j);
      if (ins.value(i, j_side) + ins.value(j, i_side) >
          mine + ins.value(j, j_side)) {
        Rational val = ins.value(i, j_side);
        if (q < 0 || val > q_value) {
          q = j;
          q_value = val;
        }
      }
    }
    if (q >= 0) swap_pair(i, q);

    check_internal(!t_set[i], "additive-carry-rewrite");
    t[i] = positive_part(ins.value(i, side_of(k, i)) + t[k] - own_value(i));
    t_set[i] = true;
    check_internal(t[i] <= w[i], "additive-carry-guard");
    spread_log.push_back({i, kids});
  };

  // Phase 1.
  for (const auto& comp : rg.components) {
    if (comp.cycle.size() >= 3) {
      for (int j : comp.members) {
        TwoSplit s = round_robin(ins, j, rg.parent[j], pair_items(j, rg.parent[j]),
                                 rg.claim[j]);
        commit(j, s.first, rg.parent[j], s.second);
      }
    } else {
      int f = comp.cycle[0], g = comp.cycle[1];
      TwoSplit s = round_robin(ins, g, f, pair_items(f, g), rg.claim[g]);
      std::vector<int> bg = s.first, bf = s.second;
      if (!split_efable(f, bf, g, bg)) std::swap(bf, bg);
      commit(f, bf, g, bg);
      bool f_envies = ins.value(f, bg) > ins.value(f, bf);
      bool g_envies = ins.value(g, bf) > ins.value(g, bg);
      check_internal(!(f_envies && g_envies), "additive-mutual-envy");
      if (!f_envies && !g_envies) {
        for (int x : comp.trees[0]) sub1_node(x);
        for (int x : comp.trees[1]) sub1_node(x);
      } else {
        int envious = f_envies ? 0 : 1;
        for (int x : comp.trees[envious]) sub2_node(x);
        for (int x : comp.trees[1 - envious]) sub1_node(x);
      }
    }

    Rational carried_total = 0;
    for (int j : comp.members) carried_total += t[j];
    check_internal(carried_total <= 1, "additive-carry-total");
    for (int j : comp.members) {
      int a = j, b = rg.parent[j];
      check_internal(
          own_value(a) + t[a] >= ins.value(a, side_of(b, a)) + t[b] &&
              own_value(b) + t[b] >= ins.value(b, side_of(a, b)) + t[a],
          "additive-neighbor-envy");
    }
  }
  // Carried payment plus the children's shortfalls never exceeds the own
  // shortfall; children's shortfalls only exist once the whole tree ran.
  for (const auto& [i, kids] : spread_log) {
    Rational spread = t[i];
    for (int j : kids) spread += w[j];
    check_internal(spread <= w[i], "additive-spread-guard");
  }

  // Phase 2.
  std::vector<Rational> p = t;
  std::map<std::pair<int, int>, std::vector<int>> all_pairs;
  for (const Edge& e : ins.graph.edges)
    all_pairs[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.id);
  for (const auto& [key, items] : all_pairs) {
    if (settled_pairs.count(key)) continue;
    auto [a, b] = key;
    Rational prev_a = own_value(a) + p[a], prev_b = own_value(b) + p[b];
    TwoSplit s = round_robin(ins, a, b, items, -1);
    std::vector<int> ba = s.first, bb = s.second;
    if (!split_efable(a, ba, b, bb)) std::swap(ba, bb);
    commit(a, ba, b, bb);
    bool a_envies = ins.value(a, bb) + p[b] > own_value(a) + p[a];
    bool b_envies = ins.value(b, ba) + p[a] > own_value(b) + p[b];
    check_internal(!(a_envies && b_envies), "additive-mutual-envy");
    if (a_envies) {
      Rational np = positive_part(own_value(a) + p[a] - ins.value(a, bb));
      check_internal(np <= p[b], "additive-payment-raise");
      p[b] = np;
    } else if (b_envies) {
      Rational np = positive_part(own_value(b) + p[b] - ins.value(b, ba));
      check_internal(np <= p[a], "additive-payment-raise");
      p[a] = np;
    }
    check_internal(own_value(a) + p[a] >= prev_a && own_value(b) + p[b] >= prev_b,
                   "additive-settle-guard");
  }

  Solution sol;
  sol.orientation.owner = owner;
  sol.orientation.validate_for(ins.graph);
  sol.payments = p;
  sol.diagnostics.shortfalls = w;
  sol.diagnostics.carried = t;
  Rational total = 0;
  for (const Rational& x : p) total += x;
  check_internal(2 * total <= n, "additive-total-guard");
  return sol;
}

}  // namespace efo
