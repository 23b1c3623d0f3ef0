#include "doctest.h"

#include <set>
#include <stdexcept>

#include "support.hpp"
#include "ttcv/prefs.hpp"

using namespace ttcv;
using support::pref;

namespace {
// a,b,c,d = 0,1,2,3
const Preference kP1 = pref({2, 0, 1, 3});  // c,a,b,d
}

TEST_SUITE("prefs") {

TEST_CASE("preference must be a permutation") {
  CHECK_THROWS_AS(Preference({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Preference({0, 3, 1}), std::invalid_argument);
  CHECK_NOTHROW(Preference({1, 0, 2}));
  CHECK(kP1.str() == "2,0,1,3");
  CHECK(kP1.top() == 2);
  CHECK(kP1.rank_of(3) == 3);
}

TEST_CASE("upper contour examples") {
  auto abc = pref({0, 1, 2});
  CHECK(upper_contour(abc, 0) == std::vector<ObjectId>{0});
  CHECK(upper_contour(abc, 2) == std::vector<ObjectId>{0, 1, 2});
  auto uc = upper_contour(kP1, 1);
  CHECK(std::set<ObjectId>(uc.begin(), uc.end()) == std::set<ObjectId>{2, 0, 1});
}

TEST_CASE("upper contour invariants over every order up to n=5") {
  for (int n = 1; n <= 5; ++n) {
    for (auto dom = unrestricted_domain(n); const auto& p : dom.prefs()) {
      for (int k = 0; k < n; ++k) CHECK(p.upper_contour(p.at(k)).size() == static_cast<std::size_t>(k + 1));
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (x == y) continue;
          auto ux = upper_contour(p, x), uy = upper_contour(p, y);
          bool y_in_ux = std::find(ux.begin(), ux.end(), y) != ux.end();
          bool x_in_uy = std::find(uy.begin(), uy.end(), x) != uy.end();
          CHECK(y_in_ux != x_in_uy);
        }
      }
    }
  }
}

TEST_CASE("domain construction rejects empty and duplicate inputs") {
  CHECK_THROWS_AS(Domain(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(Domain(3, {pref({0, 1, 2}), pref({0, 1, 2})}), std::invalid_argument);
  CHECK_THROWS_AS(Domain(3, {pref({0, 1})}), std::invalid_argument);
}

TEST_CASE("is_fpt examples") {
  CHECK(is_fpt(unrestricted_domain(3)));
  Domain d(3, {pref({0, 1, 2}), pref({1, 2, 0})});
  CHECK_FALSE(is_fpt(d));
  auto missing = missing_top_pair(d);
  REQUIRE(missing);
  CHECK(missing->first == 0);
  CHECK(missing->second == 2);
  CHECK(is_fpt(minimal_fpt(4)));
}

TEST_CASE("is_ftt examples and error") {
  CHECK(is_ftt(unrestricted_domain(3)));
  CHECK_FALSE(is_ftt(minimal_fpt(4)));
  CHECK(is_ftt(minimal_ftt(4)));
  try {
    is_ftt(unrestricted_domain(2));
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()) == "FTT undefined below three objects");
  }
}

TEST_CASE("generator sizes and conditions") {
  CHECK(minimal_fpt(2).size() == 2);
  CHECK(minimal_fpt(2)[0] == pref({0, 1}));
  CHECK(minimal_fpt(2)[1] == pref({1, 0}));
  for (int n = 2; n <= 8; ++n) {
    auto d = minimal_fpt(n);
    CHECK(d.size() == static_cast<std::size_t>(n * (n - 1)));
    CHECK(is_fpt(d));
    if (n >= 3) CHECK(is_ftt(d) == (n == 3));
  }
  CHECK(minimal_ftt(3).size() == 6);
  auto ftt3 = minimal_ftt(3), all3 = unrestricted_domain(3);
  CHECK(std::set<Preference>(ftt3.prefs().begin(), ftt3.prefs().end()) ==
        std::set<Preference>(all3.prefs().begin(), all3.prefs().end()));
  CHECK(minimal_ftt(4).size() == 24);
  CHECK(minimal_ftt(5).size() == 60);
  for (int n = 3; n <= 6; ++n) {
    auto d = minimal_ftt(n);
    CHECK(is_ftt(d));
    CHECK(is_fpt(d));  // FTT implies FPT
  }
  CHECK_THROWS(minimal_fpt(1));
  CHECK_THROWS(minimal_ftt(2));
  CHECK(unrestricted_domain(4).size() == 24);
}

TEST_CASE("generator tails are ascending") {
  for (auto dom = minimal_ftt(5); const auto& p : dom.prefs()) CHECK(std::is_sorted(p.ranking().begin() + 3, p.ranking().end()));
  for (auto dom = minimal_fpt(5); const auto& p : dom.prefs()) CHECK(std::is_sorted(p.ranking().begin() + 2, p.ranking().end()));
}

TEST_CASE("enumerate_profiles counts and order") {
  CHECK(enumerate_profiles(minimal_fpt(2), 2).size() == 4);
  CHECK(enumerate_profiles(unrestricted_domain(3), 3).size() == 216);
  CHECK(enumerate_profiles(minimal_ftt(4), 4).size() == 331776);
  CHECK_THROWS_AS(enumerate_profiles(minimal_fpt(3), 2), std::invalid_argument);

  auto space = enumerate_profiles(unrestricted_domain(3), 3);
  std::set<std::vector<Preference>> seen;
  std::vector<std::size_t> prev;
  for (std::uint64_t k = 0; k < space.size(); ++k) {
    auto digits = space.digits(k);
    if (k) CHECK(prev < digits);
    prev = digits;
    auto p = space.profile(k);
    CHECK(space.index_of(p) == k);
    seen.insert(p.prefs());
  }
  CHECK(seen.size() == 216);

  std::uint64_t count = 0;
  for (const auto& p : space) {
    (void)p;
    ++count;
  }
  CHECK(count == 216);
}

TEST_CASE("profile space digit helpers agree with profiles") {
  auto space = enumerate_profiles(minimal_fpt(3), 3);
  for (std::uint64_t k = 0; k < space.size(); k += 7) {
    for (int i = 0; i < 3; ++i) {
      for (std::size_t d = 0; d < space.domain().size(); ++d) {
        auto j = space.with_digit(k, i, d);
        CHECK(space.digit(j, i) == d);
        CHECK(space.profile(j) == space.profile(k).with(i, space.domain()[d]));
      }
    }
  }
  ProfileSpace thin(Domain(3, {pref({0, 1, 2}), pref({1, 2, 0})}), 3);
  CHECK(thin.size() == 8);
  CHECK_THROWS_AS(thin.index_of(support::profile({{0, 1, 2}, {0, 2, 1}, {1, 2, 0}})), std::invalid_argument);
}

}  // TEST_SUITE
