#include "ttcv/prefs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ttcv {

Preference::Preference(std::vector<ObjectId> ranking) : ranking_(std::move(ranking)) {
  const int n = static_cast<int>(ranking_.size());
  if (n == 0) throw std::invalid_argument("empty preference");
  rank_.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    ObjectId x = ranking_[k];
    if (x < 0 || x >= n || rank_[x] != -1) {
      throw std::invalid_argument("preference is not a permutation of 0.." + std::to_string(n - 1));
    }
    rank_[x] = k;
  }
}

std::string Preference::str() const {
  std::string s;
  for (std::size_t k = 0; k < ranking_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(ranking_[k]);
  }
  return s;
}

Profile::Profile(std::vector<Preference> prefs) : prefs_(std::move(prefs)) {
  const int n = static_cast<int>(prefs_.size());
  for (const auto& p : prefs_) {
    if (p.size() != n) {
      throw std::invalid_argument("profile must be square: " + std::to_string(n) + " agents but a preference over " +
                                  std::to_string(p.size()) + " objects");
    }
  }
}

Profile Profile::with(AgentId i, Preference p) const {
  Profile copy = *this;
  copy.prefs_.at(i) = std::move(p);
  return copy;
}

Domain::Domain(int n, std::vector<Preference> prefs) : n_(n), prefs_(std::move(prefs)) {
  if (prefs_.empty()) throw std::invalid_argument("domain must be non-empty");
  std::set<Preference> seen;
  for (const auto& p : prefs_) {
    if (p.size() != n_) throw std::invalid_argument("domain preference over wrong number of objects");
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate preference " + p.str() + " in domain");
  }
}

std::optional<std::size_t> Domain::index_of(const Preference& p) const {
  auto it = std::find(prefs_.begin(), prefs_.end(), p);
  if (it == prefs_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - prefs_.begin());
}

std::vector<ObjectId> upper_contour(const Preference& p, ObjectId x) {
  auto s = p.upper_contour(x);
  return {s.begin(), s.end()};
}

std::optional<std::pair<ObjectId, ObjectId>> missing_top_pair(const Domain& d) {
  const int n = d.n();
  if (n < 2) return std::nullopt;
  std::vector<char> seen(n * n, 0);
  for (const auto& p : d.prefs()) seen[p.at(0) * n + p.at(1)] = 1;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && !seen[a * n + b]) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

std::optional<std::array<ObjectId, 3>> missing_top_triple(const Domain& d) {
  const int n = d.n();
  if (n < 3) throw std::domain_error("FTT undefined below three objects");
  std::vector<char> seen(n * n * n, 0);
  for (const auto& p : d.prefs()) seen[(p.at(0) * n + p.at(1)) * n + p.at(2)] = 1;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (a != b && b != c && a != c && !seen[(a * n + b) * n + c]) return std::array{a, b, c};
      }
    }
  }
  return std::nullopt;
}

bool is_fpt(const Domain& d) { return !missing_top_pair(d).has_value(); }

bool is_ftt(const Domain& d) { return !missing_top_triple(d).has_value(); }

namespace {

Preference with_head(std::vector<ObjectId> head, int n) {
  for (ObjectId x = 0; x < n; ++x) {
    if (std::find(head.begin(), head.end(), x) == head.end()) head.push_back(x);
  }
  return Preference(std::move(head));
}

}  // namespace

Domain minimal_fpt(int n) {
  if (n < 2) throw std::invalid_argument("minimal FPT domain needs n >= 2");
  std::vector<Preference> prefs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) prefs.push_back(with_head({a, b}, n));
    }
  }
  return Domain(n, std::move(prefs));
}

Domain minimal_ftt(int n) {
  if (n < 3) throw std::invalid_argument("minimal FTT domain needs n >= 3");
  std::vector<Preference> prefs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (a != b && b != c && a != c) prefs.push_back(with_head({a, b, c}, n));
      }
    }
  }
  return Domain(n, std::move(prefs));
}

Domain unrestricted_domain(int n) {
  if (n < 1) throw std::invalid_argument("unrestricted domain needs n >= 1");
  std::vector<ObjectId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Preference> prefs;
  do {
    prefs.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return Domain(n, std::move(prefs));
}

ProfileSpace::ProfileSpace(Domain domain, int n_agents) : domain_(std::move(domain)), agents_(n_agents) {
  if (n_agents != domain_.n()) {
    throw std::invalid_argument("profile needs one agent per object: " + std::to_string(n_agents) +
                                " agents vs " + std::to_string(domain_.n()) + " objects");
  }
  place_.assign(agents_, 1);
  size_ = 1;
  for (int i = agents_ - 1; i >= 0; --i) {
    place_[i] = size_;
    size_ *= domain_.size();
  }
}

std::vector<std::size_t> ProfileSpace::digits(std::uint64_t index) const {
  std::vector<std::size_t> out(agents_);
  for (int i = 0; i < agents_; ++i) out[i] = digit(index, i);
  return out;
}

std::size_t ProfileSpace::digit(std::uint64_t index, AgentId i) const {
  return static_cast<std::size_t>((index / place_[i]) % domain_.size());
}

std::uint64_t ProfileSpace::index(std::span<const std::size_t> digits) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < agents_; ++i) idx += digits[i] * place_[i];
  return idx;
}

std::uint64_t ProfileSpace::with_digit(std::uint64_t index, AgentId i, std::size_t d) const {
  return index - digit(index, i) * place_[i] + d * place_[i];
}

Profile ProfileSpace::profile(std::uint64_t index) const {
  std::vector<Preference> prefs;
  prefs.reserve(agents_);
  for (int i = 0; i < agents_; ++i) prefs.push_back(domain_[digit(index, i)]);
  return Profile(std::move(prefs));
}

std::uint64_t ProfileSpace::index_of(const Profile& p) const {
  if (p.size() != agents_) throw std::invalid_argument("profile size does not match the profile space");
  std::uint64_t idx = 0;
  for (int i = 0; i < agents_; ++i) {
    auto k = domain_.index_of(p[i]);
    if (!k) throw std::invalid_argument("preference " + p[i].str() + " of agent " + std::to_string(i) + " is not in the domain");
    idx += *k * place_[i];
  }
  return idx;
}

ProfileSpace enumerate_profiles(const Domain& d, int n_agents) { return ProfileSpace(d, n_agents); }

}  // namespace ttcv
