#include "doctest.h"

#include "oracles.hpp"
#include "support.hpp"
#include "ttcv/harness.hpp"
#include "ttcv/rule.hpp"
#include "ttcv/ttc.hpp"

using namespace ttcv;

TEST_SUITE("ttc") {

TEST_CASE("everyone tops her endowment gives the identity") {
  for (int n = 1; n <= 6; ++n) {
    TtcTrace trace;
    CHECK(ttc(cyclic_profile(n), &trace) == DeterministicAssignment::identity(n));
    CHECK(trace.rounds.size() == static_cast<std::size_t>(n));
    for (const auto& r : trace.rounds) CHECK(r.cycle.size() == 1);
  }
}

TEST_CASE("Table 1 profile at the example endowments") {
  auto ex = example2_data();
  // a,d,b,c and b,c,a,d as object indices
  auto c = ttc_with_endowment(ex.profile, DeterministicAssignment({0, 3, 1, 2}));
  auto d = ttc_with_endowment(ex.profile, DeterministicAssignment({1, 2, 0, 3}));
  CHECK(BistochasticMatrix(c) == ex.c);
  CHECK(BistochasticMatrix(d) == ex.d);
  CHECK(c.objects() == std::vector<int>{0, 3, 1, 2});
  CHECK(d.objects() == std::vector<int>{1, 2, 0, 3});
}

TEST_CASE("Table 1 profile at the identity endowment matches a hand trace") {
  // Round 1: 1->3 (c), 2->1 (a), 3->1 (a), 4->3 (c); cycle (1 3): 1 gets c, 3 gets a.
  // Round 2: 2 wants d (owner 4), 4 wants d; cycle (4): 4 keeps d.
  // Round 3: 2 keeps b.
  auto ex = example2_data();
  TtcTrace trace;
  auto out = ttc(ex.profile, &trace);
  CHECK(out.objects() == std::vector<int>{2, 1, 0, 3});
  REQUIRE(trace.rounds.size() == 3);
  CHECK(trace.rounds[0].remaining == std::vector<int>{0, 1, 2, 3});
  CHECK(trace.rounds[0].cycle == std::vector<int>{0, 2});
  CHECK(trace.rounds[0].edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {2, 0}, {3, 2}});
  CHECK(trace.rounds[1].remaining == std::vector<int>{1, 3});
  CHECK(trace.rounds[1].cycle == std::vector<int>{3});
  CHECK(trace.rounds[1].edges == std::vector<std::pair<int, int>>{{1, 3}, {3, 3}});
  CHECK(trace.rounds[2].cycle == std::vector<int>{1});
  CHECK(trace.rounds[2].assigned == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("n=2 both top x1: the owner of x1 keeps it") {
  auto p = support::profile({{1, 0}, {1, 0}});
  CHECK(ttc(p).objects() == std::vector<int>{0, 1});
  auto swap = support::profile({{1, 0}, {0, 1}});
  CHECK(ttc(swap).objects() == std::vector<int>{1, 0});
}

TEST_CASE("ttc_rule yields permutation matrices") {
  auto rule = ttc_rule(unrestricted_domain(3));
  auto p = support::profile({{1, 0, 2}, {2, 0, 1}, {0, 1, 2}});
  auto m = rule.apply(p);
  REQUIRE(m.as_assignment());
  CHECK(*m.as_assignment() == ttc(p));
  CHECK(rule.name() == "ttc");
}

TEST_CASE("trace invariants, IR, cycle-choice irrelevance, Pareto efficiency") {
  for (int n = 3; n <= 4; ++n) {
    auto space = enumerate_profiles(unrestricted_domain(n), n);
    for (std::uint64_t k = 0; k < space.size(); ++k) {
      auto p = space.profile(k);
      TtcTrace trace;
      auto out = ttc(p, &trace);
      std::size_t prev = n + 1, assigned = 0;
      for (const auto& r : trace.rounds) {
        CHECK(r.remaining.size() < prev);
        prev = r.remaining.size();
        assigned += r.assigned.size();
        // every edge points at the owner of the top remaining object
        for (auto [i, j] : r.edges) {
          for (int t = 0; t < n; ++t) {
            int x = p[i].at(t);
            if (std::find(r.remaining.begin(), r.remaining.end(), x) != r.remaining.end()) {
              CHECK(j == x);
              break;
            }
          }
        }
      }
      CHECK(assigned == static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) CHECK(p[i].weakly_prefers(out[i], i));
      CHECK(ttc_all_cycles(p) == out);
      if (n == 3 || k % 5 == 0) CHECK(oracle::pareto_by_scan(out.objects(), p));
    }
  }
}

TEST_CASE("endowment relabeling commutes with TTC") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto p = support::random_profile(n, rng);
    DeterministicAssignment endow(support::random_perm(n, rng));
    auto out = ttc_with_endowment(p, endow);
    for (int i = 0; i < n; ++i) CHECK(p[i].weakly_prefers(out[i], endow[i]));
    CHECK(oracle::pareto_by_scan(out.objects(), p));
  }
}

}  // TEST_SUITE
