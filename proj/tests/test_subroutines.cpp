#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "efo/envy.hpp"
#include "efo/subroutines.hpp"
#include "helpers.hpp"

using namespace efo;
using testing::make_additive;
using testing::make_monotone;
using testing::R;

namespace {

// EF1 on the pair restriction: each agent either does not envy the other or
// stops envying after dropping some single item from the other's bundle.
bool ef1_pair(const Instance& ins, int a, int b, const TwoSplit& split) {
  auto ok_for = [&ins](int who, const std::vector<int>& own,
                       const std::vector<int>& other) {
    Rational mine = ins.value(who, own);
    if (mine >= ins.value(who, other)) return true;
    for (std::size_t drop = 0; drop < other.size(); ++drop) {
      std::vector<int> reduced = other;
      reduced.erase(reduced.begin() + drop);
      if (mine >= ins.value(who, reduced)) return true;
    }
    return false;
  };
  return ok_for(a, split.first, split.second) &&
         ok_for(b, split.second, split.first);
}

}  // namespace

TEST_CASE("round_robin basics") {
  Instance ins = make_additive(2, {{0, 1, R(1), R(9, 10)},
                                   {0, 1, R(2, 5), R(4, 5)}});
  SECTION("empty item set") {
    TwoSplit s = round_robin(ins, 0, 1, {});
    CHECK(s.first.empty());
    CHECK(s.second.empty());
  }
  SECTION("alternating greedy picks") {
    TwoSplit s = round_robin(ins, 0, 1, {0, 1});
    CHECK(s.first == std::vector<int>{0});
    CHECK(s.second == std::vector<int>{1});
  }
  SECTION("order of the items argument is irrelevant") {
    TwoSplit s = round_robin(ins, 0, 1, {1, 0});
    CHECK(s.first == std::vector<int>{0});
    CHECK(s.second == std::vector<int>{1});
  }
}

TEST_CASE("round_robin tie-breaking") {
  Instance ins = make_additive(2, {{0, 1, R(1), R(1)},
                                   {0, 1, R(1), R(1)},
                                   {0, 1, R(1), R(1)}});
  SECTION("ties fall to the lowest edge id") {
    TwoSplit s = round_robin(ins, 0, 1, {0, 1, 2});
    CHECK(s.first == std::vector<int>{0, 2});
    CHECK(s.second == std::vector<int>{1});
  }
  SECTION("a tied reserve edge is picked first") {
    TwoSplit s = round_robin(ins, 0, 1, {0, 1, 2}, 2);
    CHECK(s.first == std::vector<int>{1, 2});
    CHECK(s.second == std::vector<int>{0});
  }
  SECTION("the reserve preference never overrides a strictly better item") {
    Instance skew = make_additive(2, {{0, 1, R(1), R(1)}, {0, 1, R(1, 2), R(1)}});
    TwoSplit s = round_robin(skew, 0, 1, {0, 1}, 1);
    CHECK(s.first == std::vector<int>{0});
  }
}

TEST_CASE("round_robin input validation") {
  Instance ins = make_additive(3, {{0, 1, R(1), R(1)}, {1, 2, R(1), R(1)}});
  CHECK_THROWS_AS(round_robin(ins, 0, 1, {1}), Error);  // edge not between
  Instance mono = make_monotone(2, {{0, 1, R(1), R(1)}},
                                {{FamilyKind::unit_demand, 0, 0},
                                 {FamilyKind::plain_additive, 0, 0}});
  CHECK_THROWS_AS(round_robin(mono, 0, 1, {0}), Error);  // needs additive
}

TEST_CASE("envy_cycle_two basics") {
  SECTION("empty item set") {
    Instance ins = make_additive(2, {{0, 1, R(1), R(1)}});
    TwoSplit s = envy_cycle_two(ins, 0, 1, {});
    CHECK(s.first.empty());
    CHECK(s.second.empty());
  }
  SECTION("a single contested item lands on the first agent") {
    Instance ins = make_additive(2, {{0, 1, R(1), R(1)}});
    TwoSplit s = envy_cycle_two(ins, 0, 1, {0});
    CHECK(s.first == std::vector<int>{0});
    CHECK(s.second.empty());
    CHECK(ef1_pair(ins, 0, 1, s));
  }
  SECTION("the envied agent stops receiving") {
    Instance ins = make_additive(2, {{0, 1, R(2, 3), R(1)},
                                     {0, 1, R(1), R(2, 3)}});
    TwoSplit s = envy_cycle_two(ins, 0, 1, {0, 1});
    CHECK(s.first == std::vector<int>{1});
    CHECK(s.second == std::vector<int>{0});
  }
}

TEST_CASE("envy_cycle_two is EF1 and ends without mutual envy") {
  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 300; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    std::vector<testing::EdgeSpec> edges;
    for (int e = 0; e < m; ++e)
      edges.push_back({0, 1, R(static_cast<long long>(rng() % 9), 8),
                       R(static_cast<long long>(rng() % 9), 8)});
    Instance ins = make_additive(2, edges);
    std::vector<int> items(m);
    for (int e = 0; e < m; ++e) items[e] = e;
    TwoSplit s = envy_cycle_two(ins, 0, 1, items);

    CHECK(ef1_pair(ins, 0, 1, s));
    bool zero_envies = ins.value(0, s.second) > ins.value(0, s.first);
    bool one_envies = ins.value(1, s.first) > ins.value(1, s.second);
    CHECK_FALSE((zero_envies && one_envies));

    std::vector<int> merged(s.first);
    merged.insert(merged.end(), s.second.begin(), s.second.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == items);
  }
}

TEST_CASE("envy_cycle_two handles monotone families") {
  Instance ins = make_monotone(2, {{0, 1, R(1), R(1, 2)}, {0, 1, R(1), R(1, 2)}},
                               {{FamilyKind::all_or_nothing_degree, 0, 2},
                                {FamilyKind::plain_additive, 0, 0}});
  TwoSplit s = envy_cycle_two(ins, 0, 1, {0, 1});
  CHECK(ef1_pair(ins, 0, 1, s));
}

TEST_CASE("envy_cycle_two resolves mutual envy created by the last placement") {
  // Agent 0 values only pairs (all-or-nothing, threshold 2); agent 1 is
  // additive with a dominant first item. The greedy loop hands item 0 to
  // agent 0 (every gain is zero), then items 1 and 2 to agent 1, and only
  // that final placement completes a pair agent 0 wants while agent 1 still
  // prefers the singleton it gave up — mutual envy with nothing left to
  // allocate. The closing swap must hand each side its preferred bundle.
  Instance ins = make_monotone(2,
                               {{0, 1, R(1), R(1)},
                                {0, 1, R(1), R(1, 2)},
                                {0, 1, R(1), R(1, 4)}},
                               {{FamilyKind::all_or_nothing_degree, 0, 2},
                                {FamilyKind::plain_additive, 0, 0}});
  TwoSplit s = envy_cycle_two(ins, 0, 1, {0, 1, 2});
  CHECK(s.first == std::vector<int>{1, 2});
  CHECK(s.second == std::vector<int>{0});
  CHECK(ins.value(0, s.first) >= ins.value(0, s.second));
  CHECK(ins.value(1, s.second) >= ins.value(1, s.first));
}

TEST_CASE("max_utility basics") {
  Instance ins = make_additive(2, {{0, 1, R(1), R(1)},
                                   {0, 1, R(1, 4), R(3, 4)},
                                   {0, 1, R(7, 8), R(1, 8)}});
  SECTION("empty item set") {
    TwoSplit s = max_utility(ins, 0, 1, {});
    CHECK(s.first.empty());
    CHECK(s.second.empty());
  }
  SECTION("ties favor the first-named agent") {
    TwoSplit s = max_utility(ins, 0, 1, {0, 1, 2});
    CHECK(s.first == std::vector<int>{0, 2});
    CHECK(s.second == std::vector<int>{1});
    TwoSplit t = max_utility(ins, 1, 0, {0, 1, 2});
    CHECK(t.first == std::vector<int>{0, 1});
    CHECK(t.second == std::vector<int>{2});
  }
  SECTION("a unit-valued item guarantees the favored agent a unit") {
    CHECK(ins.value(0, max_utility(ins, 0, 1, {0, 1, 2}).first) >= 1);
  }
}

TEST_CASE("max_utility maximizes total value over all partitions") {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 1 + static_cast<int>(rng() % 8);
    std::vector<testing::EdgeSpec> edges;
    for (int e = 0; e < m; ++e)
      edges.push_back({0, 1, R(static_cast<long long>(rng() % 9), 8),
                       R(static_cast<long long>(rng() % 9), 8)});
    Instance ins = make_additive(2, edges);
    std::vector<int> items(m);
    for (int e = 0; e < m; ++e) items[e] = e;
    TwoSplit s = max_utility(ins, 0, 1, items);
    Rational achieved = ins.value(0, s.first) + ins.value(1, s.second);

    Rational best = 0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> to_first, to_second;
      for (int e = 0; e < m; ++e)
        (mask >> e & 1 ? to_first : to_second).push_back(e);
      best = std::max(best,
                      ins.value(0, to_first) + ins.value(1, to_second));
    }
    CHECK(achieved == best);
  }
}
