#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"
#include "ttcv/rational.hpp"

namespace support {

using ttcv::Rational;

inline ttcv::Preference pref(std::vector<int> r) { return ttcv::Preference(std::move(r)); }

inline ttcv::Profile profile(std::vector<std::vector<int>> rows) {
  std::vector<ttcv::Preference> p;
  for (auto& r : rows) p.emplace_back(std::move(r));
  return ttcv::Profile(std::move(p));
}

inline ttcv::BistochasticMatrix matrix(int n, std::initializer_list<const char*> cells) {
  std::vector<Rational> e;
  for (const char* c : cells) e.push_back(ttcv::parse_rational(c));
  return ttcv::BistochasticMatrix(n, std::move(e));
}

inline ttcv::BistochasticMatrix perm_matrix(std::vector<int> p) {
  return ttcv::BistochasticMatrix(ttcv::DeterministicAssignment(std::move(p)));
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline ttcv::Profile random_profile(int n, std::mt19937_64& rng) {
  std::vector<ttcv::Preference> prefs;
  for (int i = 0; i < n; ++i) prefs.emplace_back(random_perm(n, rng));
  return ttcv::Profile(std::move(prefs));
}

// Sum of `picks` permutation matrices scaled by 1/picks; denominators divide
// `picks`.
inline ttcv::BistochasticMatrix average_of(const std::vector<std::vector<int>>& perms, int n) {
  std::vector<Rational> e(n * n);
  for (const auto& p : perms)
    for (int i = 0; i < n; ++i) e[i * n + p[i]] += Rational(1, static_cast<long>(perms.size()));
  return ttcv::BistochasticMatrix(n, std::move(e));
}

inline ttcv::BistochasticMatrix random_matrix(int n, int max_den, std::mt19937_64& rng) {
  int d = std::uniform_int_distribution<int>(1, max_den)(rng);
  std::vector<std::vector<int>> perms;
  for (int k = 0; k < d; ++k) perms.push_back(random_perm(n, rng));
  return average_of(perms, n);
}

// Convex combination with arbitrary positive integer weights.
inline ttcv::BistochasticMatrix random_weighted_matrix(int n, int max_terms, std::mt19937_64& rng) {
  int k = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::vector<long> w(k);
  long total = 0;
  for (auto& x : w) total += x = std::uniform_int_distribution<long>(1, 97)(rng);
  std::vector<Rational> e(n * n);
  for (int t = 0; t < k; ++t) {
    auto p = random_perm(n, rng);
    Rational weight(w[t], total);
    weight.canonicalize();
    for (int i = 0; i < n; ++i) e[i * n + p[i]] += weight;
  }
  return ttcv::BistochasticMatrix(n, std::move(e));
}

}  // namespace support
