#pragma once

// The three two-agent allocation primitives shared by the solvers. All
// tie-breaking is total and deterministic so solver traces are reproducible.

#include <algorithm>
#include <utility>
#include <vector>

#include "efo/errors.hpp"
#include "efo/model.hpp"

namespace efo {

struct TwoSplit {
  std::vector<int> first;   // bundle of the first-named agent
  std::vector<int> second;  // bundle of the second-named agent
};

namespace detail {

inline std::vector<int> checked_pair_items(const Instance& ins, int a, int b,
                                           const std::vector<int>& items) {
  ins.require_agent(a);
  ins.require_agent(b);
  std::vector<int> out(items);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int e : out) {
    ins.require_edge(e);
    const Edge& ed = ins.graph.edges[e];
    bool between = (ed.u == a && ed.v == b) || (ed.u == b && ed.v == a);
    if (!between)
      throw_input("bad-item",
                  "edge " + std::to_string(e) + " is not between the two agents");
  }
  return out;
}

}  // namespace detail

// Alternating picks starting with `first`; each picker takes a remaining item
// of maximum value to them. Ties: the reserve edge wins if it is tied-max for
// the picker, otherwise the lowest edge id. Additive valuations only.
inline TwoSplit round_robin(const Instance& ins, int first, int second,
                            const std::vector<int>& items,
                            int prefer_reserve = -1) {
  if (!ins.valuation.additive)
    throw_precondition("not-additive", "round_robin needs additive valuations");
  std::vector<int> remaining = detail::checked_pair_items(ins, first, second, items);
  TwoSplit out;
  bool firsts_turn = true;
  while (!remaining.empty()) {
    int picker = firsts_turn ? first : second;
    int best_pos = 0;
    for (int pos = 1; pos < static_cast<int>(remaining.size()); ++pos) {
      Rational cand = ins.base_value(picker, remaining[pos]);
      Rational best = ins.base_value(picker, remaining[best_pos]);
      if (cand > best ||
          (cand == best && remaining[pos] == prefer_reserve))
        best_pos = pos;
    }
    (firsts_turn ? out.first : out.second).push_back(remaining[best_pos]);
    remaining.erase(remaining.begin() + best_pos);
    firsts_turn = !firsts_turn;
  }
  std::sort(out.first.begin(), out.first.end());
  std::sort(out.second.begin(), out.second.end());
  return out;
}

// Two-agent envy-cycle allocation for monotone valuations: repeatedly give
// the agent that is not envied (ties toward `a`) its best remaining item by
// marginal value (ties toward the lowest edge id); a mutual-envy state is
// resolved by swapping the current bundles, after which neither agent envies.
inline TwoSplit envy_cycle_two(const Instance& ins, int a, int b,
                               const std::vector<int>& items) {
  std::vector<int> remaining = detail::checked_pair_items(ins, a, b, items);
  std::vector<int> mine, theirs;  // bundles of a and b
  while (!remaining.empty()) {
    Rational own_a = ins.value(a, mine), own_b = ins.value(b, theirs);
    bool a_envies = ins.value(a, theirs) > own_a;
    bool b_envies = ins.value(b, mine) > own_b;
    if (a_envies && b_envies) {
      std::swap(mine, theirs);
      own_a = ins.value(a, mine);
      own_b = ins.value(b, theirs);
      a_envies = ins.value(a, theirs) > own_a;
      b_envies = ins.value(b, mine) > own_b;
      check_internal(!(a_envies && b_envies), "mutual-envy-after-swap");
    }
    // a receives unless b is the envious (hence unenvied) one.
    bool receiver_is_a = !b_envies;
    std::vector<int>& bundle = receiver_is_a ? mine : theirs;
    int who = receiver_is_a ? a : b;
    Rational base = ins.value(who, bundle);
    int best_pos = 0;
    Rational best_gain = -1;
    for (int pos = 0; pos < static_cast<int>(remaining.size()); ++pos) {
      bundle.push_back(remaining[pos]);
      Rational gain = ins.value(who, bundle) - base;
      bundle.pop_back();
      if (gain > best_gain) {
        best_gain = gain;
        best_pos = pos;
      }
    }
    bundle.push_back(remaining[best_pos]);
    remaining.erase(remaining.begin() + best_pos);
  }
  // The last placement can itself create a mutual-envy state (a marginal of
  // zero to the receiver may still complete a bundle the other agent wants);
  // resolve it the same way. Each side then holds the bundle it prefers.
  if (ins.value(a, theirs) > ins.value(a, mine) &&
      ins.value(b, mine) > ins.value(b, theirs))
    std::swap(mine, theirs);
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  return TwoSplit{std::move(mine), std::move(theirs)};
}

// Each item to the endpoint valuing it strictly more; exact ties go to
// `favored`. Additive valuations only.
inline TwoSplit max_utility(const Instance& ins, int favored, int other,
                            const std::vector<int>& items) {
  if (!ins.valuation.additive)
    throw_precondition("not-additive", "max_utility needs additive valuations");
  std::vector<int> all = detail::checked_pair_items(ins, favored, other, items);
  TwoSplit out;
  for (int e : all) {
    if (ins.base_value(favored, e) >= ins.base_value(other, e))
      out.first.push_back(e);
    else
      out.second.push_back(e);
  }
  return out;
}

}  // namespace efo
