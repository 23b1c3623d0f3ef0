#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ttcv {

// Objects and agents share the index space 0..n-1; agent i is endowed with
// object i.
using ObjectId = int;
using AgentId = int;

/// Strict linear order over objects 0..n-1, most preferred first.
class Preference {
 public:
  Preference() = default;
  /// Throws std::invalid_argument unless `ranking` is a permutation of 0..n-1.
  explicit Preference(std::vector<ObjectId> ranking);

  int size() const { return static_cast<int>(ranking_.size()); }
  ObjectId top() const { return ranking_.front(); }
  ObjectId at(int position) const { return ranking_[position]; }
  int rank_of(ObjectId x) const { return rank_[x]; }
  const std::vector<ObjectId>& ranking() const { return ranking_; }

  /// x weakly preferred to y.
  bool weakly_prefers(ObjectId x, ObjectId y) const { return rank_[x] <= rank_[y]; }
  bool strictly_prefers(ObjectId x, ObjectId y) const { return rank_[x] < rank_[y]; }

  /// Objects weakly preferred to x, in preference order. Always ends with x.
  std::span<const ObjectId> upper_contour(ObjectId x) const {
    return std::span<const ObjectId>(ranking_).first(rank_[x] + 1);
  }

  std::string str() const;  // e.g. "2,0,1,3"

  friend bool operator==(const Preference& a, const Preference& b) { return a.ranking_ == b.ranking_; }
  friend auto operator<=>(const Preference& a, const Preference& b) { return a.ranking_ <=> b.ranking_; }

 private:
  std::vector<ObjectId> ranking_;
  std::vector<int> rank_;
};

/// One preference per agent; square (agents == objects).
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Preference> prefs);

  int size() const { return static_cast<int>(prefs_.size()); }
  const Preference& operator[](AgentId i) const { return prefs_[i]; }
  const std::vector<Preference>& prefs() const { return prefs_; }

  /// Copy with agent i's preference replaced.
  Profile with(AgentId i, Preference p) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<Preference> prefs_;
};

/// Non-empty set of admissible preferences over n objects, in insertion order.
class Domain {
 public:
  /// Throws std::invalid_argument on empty input, duplicates or size mismatch.
  Domain(int n, std::vector<Preference> prefs);

  int n() const { return n_; }
  std::size_t size() const { return prefs_.size(); }
  const Preference& operator[](std::size_t k) const { return prefs_[k]; }
  const std::vector<Preference>& prefs() const { return prefs_; }
  std::optional<std::size_t> index_of(const Preference& p) const;

 private:
  int n_;
  std::vector<Preference> prefs_;
};

std::vector<ObjectId> upper_contour(const Preference& p, ObjectId x);

/// First ordered pair (a,b) no preference ranks a first and b second.
std::optional<std::pair<ObjectId, ObjectId>> missing_top_pair(const Domain& d);
/// First ordered triple no preference ranks first, second, third. n >= 3.
std::optional<std::array<ObjectId, 3>> missing_top_triple(const Domain& d);

bool is_fpt(const Domain& d);
/// Throws std::domain_error for n < 3.
bool is_ftt(const Domain& d);

/// n(n-1) preferences: each ordered pair on top, remaining objects ascending.
Domain minimal_fpt(int n);
/// n(n-1)(n-2) preferences: each ordered triple on top, remaining ascending.
Domain minimal_ftt(int n);
/// All n! orders, lexicographic.
Domain unrestricted_domain(int n);

// Profiles over domain^n, addressed by index. Agent 0 is the most
// significant digit, so increasing index is lexicographic order of the
// per-agent domain indices.
class ProfileSpace {
 public:
  ProfileSpace(Domain domain, int n_agents);

  const Domain& domain() const { return domain_; }
  int agents() const { return agents_; }
  std::uint64_t size() const { return size_; }

  std::vector<std::size_t> digits(std::uint64_t index) const;
  std::uint64_t index(std::span<const std::size_t> digits) const;
  /// Index of the profile with agent i's digit replaced.
  std::uint64_t with_digit(std::uint64_t index, AgentId i, std::size_t digit) const;
  std::size_t digit(std::uint64_t index, AgentId i) const;
  Profile profile(std::uint64_t index) const;
  /// Throws std::invalid_argument if some preference is outside the domain.
  std::uint64_t index_of(const Profile& p) const;

  class iterator {
   public:
    using value_type = Profile;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const ProfileSpace* space, std::uint64_t i) : space_(space), i_(i) {}
    Profile operator*() const { return space_->profile(i_); }
    iterator& operator++() { ++i_; return *this; }
    iterator operator++(int) { auto t = *this; ++i_; return t; }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const ProfileSpace* space_ = nullptr;
    std::uint64_t i_ = 0;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size_}; }

 private:
  Domain domain_;
  int agents_;
  std::uint64_t size_;
  std::vector<std::uint64_t> place_;  // |d|^(n-1-i)
};

/// All |d|^n profiles in lexicographic order. Throws std::invalid_argument
/// when n_agents differs from d.n().
ProfileSpace enumerate_profiles(const Domain& d, int n_agents);

}  // namespace ttcv
