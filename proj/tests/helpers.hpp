#pragma once

// Shared fixture builders for the test suite.

#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/rational.hpp"

namespace efo::testing {

// Matches an Error by its kind and reason slug, for CHECK_THROWS_MATCHES.
class error_with : public Catch::Matchers::MatcherGenericBase {
 public:
  error_with(ErrorKind kind, std::string reason)
      : kind_(kind), reason_(std::move(reason)) {}
  bool match(const Error& err) const {
    return err.kind() == kind_ && err.reason() == reason_;
  }
  std::string describe() const override {
    const char* kinds[] = {"input", "precondition", "internal"};
    return std::string("is an Error{") + kinds[static_cast<int>(kind_)] +
           ", " + reason_ + "}";
  }

 private:
  ErrorKind kind_;
  std::string reason_;
};

struct EdgeSpec {
  int u;
  int v;
  Rational vu;
  Rational vv;
};

inline Instance make_additive(int n, const std::vector<EdgeSpec>& edges) {
  Instance ins;
  ins.graph.n_agents = n;
  ins.valuation.additive = true;
  for (const EdgeSpec& e : edges) {
    int id = static_cast<int>(ins.graph.edges.size());
    ins.graph.edges.push_back({id, e.u, e.v});
    ins.valuation.edge_values.push_back({e.vu, e.vv});
  }
  ins.validate();
  return ins;
}

// Same graph/values, but valuations drawn from the closed-form monotone
// families (one per agent).
inline Instance make_monotone(int n, const std::vector<EdgeSpec>& edges,
                              const std::vector<MonotoneFamily>& families) {
  Instance ins = make_additive(n, edges);
  ins.valuation.additive = false;
  ins.valuation.families = families;
  ins.validate();
  return ins;
}

inline Orientation make_orientation(const std::vector<int>& owners) {
  Orientation a;
  a.owner = owners;
  return a;
}

inline Rational R(long long num, long long den = 1) {
  return make_rational(num, den);
}

// The three-agent doubled-triangle instance together with the orientation
// that is locally fixable on every pair yet carries a unit-weight envy cycle.
inline Orientation bad_triangle_orientation() {
  return make_orientation({1, 0, 2, 1, 0, 2});
}

}  // namespace efo::testing
