#pragma once

// Optimal-subsidy solver for binary additive valuations (every edge value is
// 0 or 1). Edges valued 1 by both endpoints are "critical"; edges valued 1 by
// exactly one endpoint go to their valuer outright; 0-0 edges are worthless
// and parked on their lower-id endpoint.
//
// The connected components of the critical-edge graph are the units of
// analysis. A critical component admits an internally envy-free allocation
// iff it satisfies one of four structural properties:
//   outside_value:  some member also values an incident non-critical edge
//   long_cycle:     the skeleton of distinct adjacent pairs has a cycle
//   even_pair:      some adjacent pair shares an even number (>= 2) of edges
//   double_double:  some vertex has two neighbors with multiplicity >= 2
// Components satisfying none ("deficient") need exactly one unit of subsidy;
// agents valuing no incident edge at all additionally match the maximum
// payment. Both facts fall out of the generic minimum-payment computation on
// the constructed orientation, which this solver relies on for payments.
//
// Allocation within a component: a property-specific seeding, then a loop
// that repeatedly retires the lowest labeled vertex i. Toward each neighbor
// j, i keeps r = max(ceil((rem + already_j - label_i) / 2), 0) of the rem
// still-open shared edges and the rest dangle to j. That choice makes i's
// guaranteed holdings cover j's final share and vice versa, counting any
// edges the seeding already placed.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efo/envy.hpp"
#include "efo/errors.hpp"
#include "efo/model.hpp"

namespace efo {

enum class BinaryProperty { outside_value, long_cycle, even_pair, double_double };

struct BinaryComponentInfo {
  std::vector<int> vertices;  // sorted agent ids of the critical component
  std::vector<BinaryProperty> satisfied;
  std::optional<BinaryProperty> chosen;  // first satisfied, detection order above
  // Witness for `chosen`: the valuing agent and its non-critical edge, the
  // skeleton cycle, the even pair, or the centre plus its two heavy neighbors.
  std::vector<int> witness_agents;
  int witness_edge = -1;
};

namespace binary_detail {

struct PairKey {
  int a, b;  // a < b
  bool operator<(const PairKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

struct PairEdges {
  std::vector<int> edge_ids;  // ascending
  std::vector<int> unassigned;
  int to_lo = 0;  // edges assigned to the lower-id endpoint
  int to_hi = 0;
};

struct Component {
  std::vector<int> vertices;
  std::map<PairKey, PairEdges> pairs;
  std::vector<std::vector<int>> neighbors_of;  // parallel to vertices? keyed by agent
};

inline std::vector<Component> critical_components(
    const Instance& ins, const std::vector<int>& critical_edges) {
  const int n = ins.n();
  std::vector<std::vector<int>> adj(n);
  for (int e : critical_edges) {
    adj[ins.graph.edges[e].u].push_back(e);
    adj[ins.graph.edges[e].v].push_back(e);
  }
  std::vector<int> comp_of(n, -1);
  std::vector<Component> comps;
  for (int start = 0; start < n; ++start) {
    if (comp_of[start] >= 0 || adj[start].empty()) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> queue{start};
    comp_of[start] = id;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      comps[id].vertices.push_back(v);
      for (int e : adj[v]) {
        int o = ins.graph.edges[e].other(v);
        if (comp_of[o] < 0) {
          comp_of[o] = id;
          queue.push_back(o);
        }
      }
    }
  }
  for (Component& c : comps) std::sort(c.vertices.begin(), c.vertices.end());
  for (int e : critical_edges) {
    const Edge& ed = ins.graph.edges[e];
    Component& c = comps[comp_of[ed.u]];
    PairKey key{std::min(ed.u, ed.v), std::max(ed.u, ed.v)};
    c.pairs[key].edge_ids.push_back(e);
  }
  for (Component& c : comps)
    for (auto& [key, pe] : c.pairs) {
      std::sort(pe.edge_ids.begin(), pe.edge_ids.end());
      pe.unassigned = pe.edge_ids;
    }
  return comps;
}

// A cycle in the skeleton of distinct adjacent pairs; the skeleton is simple,
// so any cycle has length >= 3. DFS from the lowest vertex, neighbors
// ascending, first back edge wins.
inline std::optional<std::vector<int>> skeleton_cycle(const Component& comp) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [key, pe] : comp.pairs) {
    adj[key.a].push_back(key.b);
    adj[key.b].push_back(key.a);
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  std::map<int, int> parent;
  for (int root : comp.vertices) {
    if (parent.count(root)) continue;
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!parent.count(w)) {
          parent[w] = v;
          stack.push_back(w);
        } else if (w != parent[v]) {
          // Found a cycle: climb both branches to their meeting point.
          std::map<int, int> depth;
          for (int x = v; x >= 0; x = parent[x]) depth[x] = 0;
          int meet = w;
          while (!depth.count(meet)) meet = parent[meet];
          std::vector<int> cycle;
          for (int x = v; x != meet; x = parent[x]) cycle.push_back(x);
          cycle.push_back(meet);
          std::vector<int> back;
          for (int x = w; x != meet; x = parent[x]) back.push_back(x);
          std::reverse(back.begin(), back.end());
          for (int x : back) cycle.push_back(x);
          if (cycle.size() >= 3) return cycle;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace binary_detail

// Structural classification of every critical component. `values_nc[i]` out
// of solve_binary is the count of non-critical edges agent i values; the
// classifier recomputes it internally when used standalone.
inline std::vector<BinaryComponentInfo> classify_binary_components(
    const Instance& ins) {
  ins.validate();
  if (!ins.is_binary_additive())
    throw_precondition("not-binary", "values must all be 0 or 1");

  std::vector<int> critical;
  std::vector<long> nc_value(ins.n(), 0);
  for (const Edge& e : ins.graph.edges) {
    bool cu = ins.valuation.edge_values[e.id].at_u == 1;
    bool cv = ins.valuation.edge_values[e.id].at_v == 1;
    if (cu && cv) critical.push_back(e.id);
    else if (cu) ++nc_value[e.u];
    else if (cv) ++nc_value[e.v];
  }

  std::vector<BinaryComponentInfo> out;
  for (const binary_detail::Component& comp :
       binary_detail::critical_components(ins, critical)) {
    BinaryComponentInfo info;
    info.vertices = comp.vertices;

    // outside_value
    for (int v : comp.vertices)
      if (nc_value[v] > 0) {
        info.satisfied.push_back(BinaryProperty::outside_value);
        for (const Edge& e : ins.graph.edges) {
          bool mine = e.touches(v) && ins.base_value(v, e.id) == 1;
          bool crit = ins.base_value(e.u, e.id) == 1 && ins.base_value(e.v, e.id) == 1;
          if (mine && !crit) {
            info.witness_agents = {v};
            info.witness_edge = e.id;
            break;
          }
        }
        break;
      }
    // long_cycle
    auto cycle = binary_detail::skeleton_cycle(comp);
    if (cycle) info.satisfied.push_back(BinaryProperty::long_cycle);
    // even_pair
    std::optional<binary_detail::PairKey> even_pair;
    for (const auto& [key, pe] : comp.pairs)
      if (pe.edge_ids.size() % 2 == 0) {
        even_pair = key;
        break;
      }
    if (even_pair) info.satisfied.push_back(BinaryProperty::even_pair);
    // double_double
    std::optional<std::vector<int>> heavy_triple;
    for (int v : comp.vertices) {
      std::vector<int> heavy;
      for (const auto& [key, pe] : comp.pairs)
        if ((key.a == v || key.b == v) && pe.edge_ids.size() >= 2)
          heavy.push_back(key.a == v ? key.b : key.a);
      std::sort(heavy.begin(), heavy.end());
      if (heavy.size() >= 2) {
        heavy_triple = std::vector<int>{v, heavy[0], heavy[1]};
        break;
      }
    }
    if (heavy_triple) info.satisfied.push_back(BinaryProperty::double_double);

    if (!info.satisfied.empty()) {
      info.chosen = info.satisfied.front();
      if (*info.chosen == BinaryProperty::long_cycle) info.witness_agents = *cycle;
      if (*info.chosen == BinaryProperty::even_pair)
        info.witness_agents = {even_pair->a, even_pair->b};
      if (*info.chosen == BinaryProperty::double_double)
        info.witness_agents = *heavy_triple;
    }
    out.push_back(std::move(info));
  }
  return out;
}

inline Solution solve_binary(const Instance& ins) {
  ins.validate();
  if (!ins.is_binary_additive())
    throw_precondition("not-binary", "values must all be 0 or 1");
  const int n = ins.n();
  const int m = ins.m();

  std::vector<int> owner(m, -1);
  std::vector<long> value(n, 0);  // accumulated integer value per agent
  std::vector<int> virt(n, 0);    // 1 for the seed vertex of a deficient component

  std::vector<int> critical;
  for (const Edge& e : ins.graph.edges) {
    bool cu = ins.valuation.edge_values[e.id].at_u == 1;
    bool cv = ins.valuation.edge_values[e.id].at_v == 1;
    if (cu && cv) {
      critical.push_back(e.id);
    } else if (cu || cv) {
      owner[e.id] = cu ? e.u : e.v;
      ++value[owner[e.id]];
    } else {
      owner[e.id] = std::min(e.u, e.v);
    }
  }

  auto comps = binary_detail::critical_components(ins, critical);
  auto infos = classify_binary_components(ins);
  check_internal(comps.size() == infos.size(), "binary-component-mismatch");

  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    binary_detail::Component& comp = comps[ci];
    const BinaryComponentInfo& info = infos[ci];
    check_internal(comp.vertices == info.vertices, "binary-component-mismatch");

    auto pair_of = [&comp](int x, int y) -> binary_detail::PairEdges& {
      auto it = comp.pairs.find({std::min(x, y), std::max(x, y)});
      check_internal(it != comp.pairs.end(), "binary-missing-pair");
      return it->second;
    };
    auto assigned_to = [](const binary_detail::PairEdges& pe, int who, int lo) {
      return who == lo ? pe.to_lo : pe.to_hi;
    };
    auto give = [&](binary_detail::PairEdges& pe, binary_detail::PairKey key,
                    int who, int count) {
      for (int k = 0; k < count; ++k) {
        check_internal(!pe.unassigned.empty(), "binary-take-overflow");
        int e = pe.unassigned.front();
        pe.unassigned.erase(pe.unassigned.begin());
        owner[e] = who;
        ++value[who];
        (who == key.a ? pe.to_lo : pe.to_hi) += 1;
      }
    };

    // Seed per the chosen property. outside_value needs no action: the
    // valuer already holds its non-critical edges and is labeled by them.
    if (!info.chosen) {
      virt[comp.vertices.front()] = 1;
    } else if (*info.chosen == BinaryProperty::long_cycle) {
      const std::vector<int>& cyc = info.witness_agents;
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        int from = cyc[t], to = cyc[(t + 1) % cyc.size()];
        binary_detail::PairKey key{std::min(from, to), std::max(from, to)};
        give(pair_of(from, to), key, to, 1);
      }
    } else if (*info.chosen == BinaryProperty::even_pair) {
      int a = info.witness_agents[0], b = info.witness_agents[1];
      binary_detail::PairKey key{a, b};
      binary_detail::PairEdges& pe = pair_of(a, b);
      int half = static_cast<int>(pe.edge_ids.size()) / 2;
      give(pe, key, a, half);
      give(pe, key, b, half);
    } else if (*info.chosen == BinaryProperty::double_double) {
      int center = info.witness_agents[0];
      for (int t = 1; t <= 2; ++t) {
        int nb = info.witness_agents[t];
        binary_detail::PairKey key{std::min(center, nb), std::max(center, nb)};
        binary_detail::PairEdges& pe = pair_of(center, nb);
        give(pe, key, center, static_cast<int>(pe.edge_ids.size()) / 2);
      }
    }

    // Retire vertices, lowest labeled first.
    std::vector<int> alive = comp.vertices;
    while (!alive.empty()) {
      int i = -1;
      for (int v : alive)
        if (value[v] + virt[v] >= 1) {
          i = v;
          break;
        }
      check_internal(i >= 0, "binary-deadlock");
      long label_i = value[i] + virt[i];
      for (const auto& [key, _] : comp.pairs) {
        if (key.a != i && key.b != i) continue;
        int j = key.a == i ? key.b : key.a;
        binary_detail::PairEdges& pe = pair_of(i, j);
        int rem = static_cast<int>(pe.unassigned.size());
        if (rem == 0) continue;
        long already_j = assigned_to(pe, j, key.a);
        long need = rem + already_j - label_i;
        int r = need > 0 ? static_cast<int>((need + 1) / 2) : 0;
        check_internal(r <= rem, "binary-take-overflow");
        give(pe, key, i, r);
        give(pe, key, j, rem - r);
        check_internal(value[j] + virt[j] >= assigned_to(pe, i, key.a),
                       "binary-envy-guard");
      }
      alive.erase(std::find(alive.begin(), alive.end(), i));
    }

    // Inside the component no envy survives beyond what the deficient seed's
    // single unit of subsidy covers.
    for (const auto& [key, pe] : comp.pairs) {
      check_internal(pe.unassigned.empty(), "binary-unassigned-edges");
      check_internal(value[key.a] + virt[key.a] >= pe.to_hi, "binary-envy-guard");
      check_internal(value[key.b] + virt[key.b] >= pe.to_lo, "binary-envy-guard");
    }
    if (info.chosen)
      for (int v : comp.vertices)
        check_internal(value[v] >= 1, "binary-value-guard");
  }

  Solution sol;
  sol.orientation.owner = owner;
  sol.orientation.validate_for(ins.graph);
  sol.payments = min_payments(ins, sol.orientation);
  return sol;
}

}  // namespace efo
