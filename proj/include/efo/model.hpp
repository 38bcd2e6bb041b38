#pragma once

// Core model: agents are vertices of a multigraph, items are its edges, and an
// orientation hands every edge to one of its two endpoints. Valuations are
// either additive over incident edges or drawn from closed-form monotone
// families, so every check the solvers need stays decidable and exact.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efo/errors.hpp"
#include "efo/rational.hpp"

namespace efo {

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;

  int other(int agent) const { return agent == u ? v : u; }
  bool touches(int agent) const { return agent == u || agent == v; }
};

struct MultiGraph {
  int n_agents = 0;
  std::vector<Edge> edges;

  int m() const { return static_cast<int>(edges.size()); }

  void validate() const {
    if (n_agents < 1) throw_input("bad-agent-count", "need at least one agent");
    for (int k = 0; k < m(); ++k) {
      const Edge& e = edges[k];
      if (e.id != k)
        throw_input("bad-edge", "edge ids must be 0..m-1 in order");
      if (e.u < 0 || e.u >= n_agents || e.v < 0 || e.v >= n_agents)
        throw_input("bad-edge", "endpoint out of range on edge " + std::to_string(k));
      if (e.u == e.v)
        throw_input("self-loop", "edge " + std::to_string(k));
    }
  }

  // Per-agent lists of incident edge ids, in edge-id order.
  std::vector<std::vector<int>> incidence() const {
    std::vector<std::vector<int>> inc(n_agents);
    for (const Edge& e : edges) {
      inc[e.u].push_back(e.id);
      inc[e.v].push_back(e.id);
    }
    return inc;
  }

  std::vector<int> edges_between(int a, int b) const {
    std::vector<int> out;
    for (const Edge& e : edges)
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) out.push_back(e.id);
    return out;
  }

  bool has_parallel_edges() const {
    std::vector<std::pair<int, int>> seen;
    for (const Edge& e : edges)
      seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) != seen.end();
  }
};

enum class FamilyKind {
  plain_additive,
  additive_capped,
  all_or_nothing_degree,
  unit_demand,
};

// Closed-form monotone valuation families. Each is monotone by construction
// and exposes its maximum marginal analytically:
//   plain_additive:        v(S) = sum of base values
//   additive_capped(c):    v(S) = min(c, sum of base values)
//   all_or_nothing_degree(k): v(S) = 1 if |S ∩ incident| >= k else 0
//   unit_demand:           v(S) = max base value in S (0 for empty S)
struct MonotoneFamily {
  FamilyKind kind = FamilyKind::plain_additive;
  Rational cap;        // additive_capped only
  long threshold = 0;  // all_or_nothing_degree only
};

// Per-edge base values, one per endpoint, aligned with MultiGraph::edges.
struct EdgeValues {
  Rational at_u;
  Rational at_v;
};

struct ValuationProfile {
  bool additive = true;
  std::vector<EdgeValues> edge_values;   // size m
  std::vector<MonotoneFamily> families;  // size n when !additive, else empty
};

struct NormalizationReport {
  Rational max_marginal;
  bool is_unit = false;
};

struct Instance {
  MultiGraph graph;
  ValuationProfile valuation;

  void validate() const {
    graph.validate();
    if (static_cast<int>(valuation.edge_values.size()) != graph.m())
      throw_input("bad-value", "need one value pair per edge");
    for (const EdgeValues& ev : valuation.edge_values)
      if (ev.at_u < 0 || ev.at_v < 0)
        throw_input("bad-value", "edge values must be nonnegative");
    if (valuation.additive) {
      if (!valuation.families.empty())
        throw_input("bad-value", "additive profile carries no families");
    } else {
      if (static_cast<int>(valuation.families.size()) != graph.n_agents)
        throw_input("bad-value", "need one family per agent");
      for (const MonotoneFamily& f : valuation.families) {
        if (f.kind == FamilyKind::additive_capped && f.cap < 0)
          throw_input("bad-value", "cap must be nonnegative");
        if (f.kind == FamilyKind::all_or_nothing_degree && f.threshold < 1)
          throw_input("bad-threshold", "threshold must be at least 1");
      }
    }
  }

  int n() const { return graph.n_agents; }
  int m() const { return graph.m(); }

  void require_agent(int i) const {
    if (i < 0 || i >= n()) throw_input("unknown-agent", std::to_string(i));
  }
  void require_edge(int e) const {
    if (e < 0 || e >= m()) throw_input("unknown-edge", std::to_string(e));
  }

  // The agent's base value for one edge; 0 when the edge is not incident.
  Rational base_value(int agent, int edge_id) const {
    const Edge& e = graph.edges[edge_id];
    if (agent == e.u) return valuation.edge_values[edge_id].at_u;
    if (agent == e.v) return valuation.edge_values[edge_id].at_v;
    return Rational(0);
  }

  const MonotoneFamily& family(int agent) const {
    static const MonotoneFamily plain{};
    return valuation.additive ? plain : valuation.families[agent];
  }

  // v_agent(bundle): depends only on the bundle's incident restriction.
  // Duplicate ids in `bundle` are tolerated and counted once.
  Rational value(int agent, const std::vector<int>& bundle) const {
    require_agent(agent);
    std::vector<int> own;
    own.reserve(bundle.size());
    for (int e : bundle) {
      require_edge(e);
      if (graph.edges[e].touches(agent)) own.push_back(e);
    }
    std::sort(own.begin(), own.end());
    own.erase(std::unique(own.begin(), own.end()), own.end());

    const MonotoneFamily& fam = family(agent);
    switch (fam.kind) {
      case FamilyKind::plain_additive: {
        Rational sum = 0;
        for (int e : own) sum += base_value(agent, e);
        return sum;
      }
      case FamilyKind::additive_capped: {
        Rational sum = 0;
        for (int e : own) sum += base_value(agent, e);
        return std::min(sum, fam.cap);
      }
      case FamilyKind::all_or_nothing_degree:
        return static_cast<long>(own.size()) >= fam.threshold ? Rational(1)
                                                              : Rational(0);
      case FamilyKind::unit_demand: {
        Rational best = 0;
        for (int e : own) best = std::max(best, base_value(agent, e));
        return best;
      }
    }
    throw_internal("bad-family");
  }

  Rational singleton_value(int agent, int edge_id) const {
    return value(agent, std::vector<int>{edge_id});
  }

  bool is_binary_additive() const {
    if (!valuation.additive) return false;
    for (const EdgeValues& ev : valuation.edge_values) {
      if (ev.at_u != 0 && ev.at_u != 1) return false;
      if (ev.at_v != 0 && ev.at_v != 1) return false;
    }
    return true;
  }

  // Largest marginal gain any single edge can contribute for this agent.
  Rational max_marginal(int agent) const {
    require_agent(agent);
    Rational max_base = 0;
    int degree = 0;
    for (const Edge& e : graph.edges)
      if (e.touches(agent)) {
        ++degree;
        max_base = std::max(max_base, base_value(agent, e.id));
      }
    const MonotoneFamily& fam = family(agent);
    switch (fam.kind) {
      case FamilyKind::plain_additive:
        return max_base;
      case FamilyKind::additive_capped:
        return std::min(max_base, fam.cap);
      case FamilyKind::all_or_nothing_degree:
        return degree >= fam.threshold ? Rational(1) : Rational(0);
      case FamilyKind::unit_demand:
        return max_base;
    }
    throw_internal("bad-family");
  }
};

inline std::vector<NormalizationReport> check_normalization(const Instance& ins) {
  std::vector<NormalizationReport> out(ins.n());
  for (int i = 0; i < ins.n(); ++i) {
    out[i].max_marginal = ins.max_marginal(i);
    out[i].is_unit = out[i].max_marginal == 1;
  }
  return out;
}

inline bool all_unit_normalized(const Instance& ins) {
  for (const NormalizationReport& r : check_normalization(ins))
    if (!r.is_unit) return false;
  return true;
}

// Rescales each agent's values so its max incident value is exactly 1.
// Payments computed downstream are then in per-agent normalized currency.
inline Instance normalize_additive(const Instance& ins) {
  if (!ins.valuation.additive)
    throw_precondition("not-additive", "normalize_additive needs an additive profile");
  std::vector<Rational> scale(ins.n(), 0);
  for (const Edge& e : ins.graph.edges) {
    scale[e.u] = std::max(scale[e.u], ins.valuation.edge_values[e.id].at_u);
    scale[e.v] = std::max(scale[e.v], ins.valuation.edge_values[e.id].at_v);
  }
  for (int i = 0; i < ins.n(); ++i)
    if (scale[i] == 0)
      throw_precondition("cannot-normalize",
                         "agent " + std::to_string(i) +
                             " values no incident edge positively");
  Instance out = ins;
  for (const Edge& e : ins.graph.edges) {
    out.valuation.edge_values[e.id].at_u /= scale[e.u];
    out.valuation.edge_values[e.id].at_v /= scale[e.v];
  }
  return out;
}

struct Orientation {
  std::vector<int> owner;  // owner[edge id] = receiving endpoint

  void validate_for(const MultiGraph& g) const {
    if (static_cast<int>(owner.size()) != g.m())
      throw_input("bad-orientation", "need one owner per edge");
    for (const Edge& e : g.edges)
      if (owner[e.id] != e.u && owner[e.id] != e.v)
        throw_input("bad-orientation",
                    "owner of edge " + std::to_string(e.id) +
                        " is not an endpoint");
  }

  std::vector<std::vector<int>> bundles(int n_agents) const {
    std::vector<std::vector<int>> out(n_agents);
    for (int e = 0; e < static_cast<int>(owner.size()); ++e)
      out[owner[e]].push_back(e);
    return out;
  }
};

// Optional per-agent figures a solver may expose for inspection.
struct Diagnostics {
  std::optional<std::vector<Rational>> thresholds;  // b
  std::optional<std::vector<Rational>> shortfalls;  // w
  std::optional<std::vector<Rational>> carried;     // t
};

struct Solution {
  Orientation orientation;
  std::vector<Rational> payments;
  Diagnostics diagnostics;

  Rational total_payment() const {
    Rational sum = 0;
    for (const Rational& p : payments) sum += p;
    return sum;
  }
};

}  // namespace efo
