#pragma once

// Envy analysis for a fixed orientation: the pairwise envy matrix, the
// no-positive-cycle test for envy-freeability, and the pointwise-minimum
// payment vector (longest-path labels floored at zero).

#include <string>
#include <utility>
#include <vector>

#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/rational.hpp"

namespace efo {

// Complete weighted digraph with weight(i,j) = v_i(A_j) - v_i(A_i).
// Antisymmetry is not assumed; the diagonal is zero.
struct EnvyGraph {
  int n = 0;
  std::vector<std::vector<Rational>> weight;
};

inline EnvyGraph build_envy_graph(const Instance& ins, const Orientation& a) {
  a.validate_for(ins.graph);
  const int n = ins.n();
  auto bundles = a.bundles(n);
  EnvyGraph g{n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 0))};
  std::vector<Rational> own(n);
  for (int i = 0; i < n; ++i) own[i] = ins.value(i, bundles[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.weight[i][j] = ins.value(i, bundles[j]) - own[i];
  return g;
}

namespace detail {

// Longest-walk labels from zero: d_i = max(0, max_j weight(i,j) + d_j),
// iterated n rounds in place. Without positive cycles this converges to the
// maximum weight of a simple path starting at i, floored at 0 by the empty
// path; with a positive cycle a further improving step always remains.
inline std::vector<Rational> relax_labels(const EnvyGraph& g) {
  std::vector<Rational> d(g.n, 0);
  for (int round = 0; round < g.n; ++round)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (i != j && g.weight[i][j] + d[j] > d[i]) d[i] = g.weight[i][j] + d[j];
  return d;
}

inline bool can_improve(const EnvyGraph& g, const std::vector<Rational>& d) {
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g.weight[i][j] + d[j] > d[i]) return true;
  return false;
}

// Finds a simple directed cycle with positive total weight; requires one to
// exist. Walk DP over exact lengths, then strip non-positive sub-cycles.
inline std::vector<int> find_positive_cycle(const EnvyGraph& g) {
  const int n = g.n;
  std::vector<std::vector<Rational>> best(n, std::vector<Rational>(n, 0));
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  // parent[k][i][j] = vertex before j on the best i->j walk of length k
  std::vector<std::vector<std::vector<int>>> parent;
  parent.push_back(std::vector<std::vector<int>>(n, std::vector<int>(n, -1)));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        best[i][j] = g.weight[i][j];
        reach[i][j] = true;
        parent[0][i][j] = i;
      }

  for (int len = 2; len <= n; ++len) {
    std::vector<std::vector<Rational>> nbest(n, std::vector<Rational>(n, 0));
    std::vector<std::vector<bool>> nreach(n, std::vector<bool>(n, false));
    parent.push_back(std::vector<std::vector<int>>(n, std::vector<int>(n, -1)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (reach[i][l])
          for (int j = 0; j < n; ++j)
            if (l != j) {
              Rational cand = best[i][l] + g.weight[l][j];
              if (!nreach[i][j] || cand > nbest[i][j]) {
                nbest[i][j] = cand;
                nreach[i][j] = true;
                parent[len - 1][i][j] = l;
              }
            }
    best = std::move(nbest);
    reach = std::move(nreach);
    for (int i = 0; i < n; ++i)
      if (reach[i][i] && best[i][i] > 0) {
        // Reconstruct the closed walk backwards through the parent tables.
        std::vector<int> walk(len + 1);
        walk[len] = i;
        int cur = i;
        for (int k = len; k >= 1; --k) {
          cur = parent[k - 1][i][cur];
          walk[k - 1] = cur;
        }
        // Splice out non-positive sub-cycles until the walk is simple.
        while (true) {
          std::vector<int> seen_at(n, -1);
          int rep_lo = -1, rep_hi = -1;
          for (int k = 0; k + 1 < static_cast<int>(walk.size()); ++k) {
            if (seen_at[walk[k]] >= 0) {
              rep_lo = seen_at[walk[k]];
              rep_hi = k;
              break;
            }
            seen_at[walk[k]] = k;
          }
          if (rep_lo < 0) break;  // simple already
          Rational sub = 0;
          for (int k = rep_lo; k < rep_hi; ++k)
            sub += g.weight[walk[k]][walk[k + 1]];
          if (sub > 0) {
            walk.assign(walk.begin() + rep_lo, walk.begin() + rep_hi + 1);
          } else {
            walk.erase(walk.begin() + rep_lo, walk.begin() + rep_hi);
          }
        }
        Rational total = 0;
        for (int k = 0; k + 1 < static_cast<int>(walk.size()); ++k)
          total += g.weight[walk[k]][walk[k + 1]];
        check_internal(total > 0 && walk.size() >= 3 && walk.front() == walk.back(),
                       "bad-cycle-witness");
        walk.pop_back();
        return walk;  // cycle as vertex list, closing edge implied
      }
  }
  throw_internal("bad-cycle-witness", "no positive cycle found");
}

inline std::string format_cycle(const EnvyGraph& g, const std::vector<int>& cycle) {
  Rational total = 0;
  std::string s;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    s += std::to_string(cycle[k]);
    s += "->";
    total += g.weight[cycle[k]][cycle[(k + 1) % cycle.size()]];
  }
  s += std::to_string(cycle[0]);
  s += " weight ";
  s += to_string(total);
  return s;
}

}  // namespace detail

inline bool is_envy_freeable(const EnvyGraph& g) {
  auto d = detail::relax_labels(g);
  return !detail::can_improve(g, d);
}

inline bool is_envy_freeable(const Instance& ins, const Orientation& a) {
  return is_envy_freeable(build_envy_graph(ins, a));
}

// Pointwise-minimum nonnegative payments making the orientation envy-free:
// p_i = the maximum total weight of a directed path starting at i, floored at
// 0 by the empty path. Some agent always pays 0.
inline std::vector<Rational> min_payments(const EnvyGraph& g) {
  auto d = detail::relax_labels(g);
  if (detail::can_improve(g, d)) {
    auto cycle = detail::find_positive_cycle(g);
    throw Error(ErrorKind::precondition, "not-envy-freeable",
                detail::format_cycle(g, cycle));
  }
  return d;
}

inline std::vector<Rational> min_payments(const Instance& ins, const Orientation& a) {
  return min_payments(build_envy_graph(ins, a));
}

inline bool is_ef_with_payments(const Instance& ins, const Orientation& a,
                                const std::vector<Rational>& payments) {
  if (static_cast<int>(payments.size()) != ins.n())
    throw_input("bad-payments", "need one payment per agent");
  EnvyGraph g = build_envy_graph(ins, a);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g.weight[i][j] > payments[i] - payments[j]) return false;
  return true;
}

// Restricted to the edges between i and j: can a payment pair make both
// agents envy-free on that sub-instance? Equivalent to the split maximizing
// the pair's combined value over swapping the two sub-bundles.
inline bool local_efable(const Instance& ins, const Orientation& a, int i, int j) {
  ins.require_agent(i);
  ins.require_agent(j);
  a.validate_for(ins.graph);
  std::vector<int> mine, theirs;
  for (const Edge& e : ins.graph.edges) {
    bool between = (e.u == i && e.v == j) || (e.u == j && e.v == i);
    if (!between) continue;
    (a.owner[e.id] == i ? mine : theirs).push_back(e.id);
  }
  return ins.value(i, mine) + ins.value(j, theirs) >=
         ins.value(i, theirs) + ins.value(j, mine);
}

}  // namespace efo
