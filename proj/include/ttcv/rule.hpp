#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"

namespace ttcv {

class RuleTable;

/// Maps each profile to a bi-stochastic matrix.
class AssignmentRule {
 public:
  virtual ~AssignmentRule() = default;
  virtual std::string name() const = 0;
  virtual BistochasticMatrix apply(const Profile& profile) const = 0;
  /// The outcome as a permutation, when it is one.
  virtual std::optional<DeterministicAssignment> apply_deterministic(const Profile& profile) const {
    return apply(profile).as_assignment();
  }
  /// Outcome at every profile of `space`.
  RuleTable tabulate(const ProfileSpace& space) const;
};

/// Outcomes indexed by profile index. Stored as permutations when every
/// outcome is deterministic.
class RuleTable {
 public:
  static RuleTable deterministic(int n, std::vector<std::uint8_t> objects);
  static RuleTable probabilistic(std::vector<BistochasticMatrix> matrices);

  bool is_deterministic() const { return matrices_.empty(); }
  std::uint64_t size() const;
  /// Deterministic tables only.
  ObjectId object(std::uint64_t index, AgentId i) const { return objects_[index * n_ + i]; }
  Rational probability(std::uint64_t index, AgentId i, ObjectId x) const;
  std::vector<Rational> row(std::uint64_t index, AgentId i) const;
  BistochasticMatrix matrix(std::uint64_t index) const;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> objects_;
  std::vector<BistochasticMatrix> matrices_;
};

class TtcRule final : public AssignmentRule {
 public:
  std::string name() const override { return "ttc"; }
  BistochasticMatrix apply(const Profile& profile) const override;
  std::optional<DeterministicAssignment> apply_deterministic(const Profile& profile) const override;
};

/// TTC as an assignment rule on `domain`.
TtcRule ttc_rule(const Domain& domain);

/// Rule given by an explicit outcome per profile of domain^n.
class TableRule final : public AssignmentRule {
 public:
  /// Throws std::invalid_argument unless there is one outcome per profile.
  TableRule(const Domain& domain, std::vector<BistochasticMatrix> outcomes, std::string name = "table");
  std::string name() const override { return name_; }
  /// Throws std::invalid_argument for profiles outside the domain.
  BistochasticMatrix apply(const Profile& profile) const override;

 private:
  ProfileSpace space_;
  std::vector<BistochasticMatrix> outcomes_;
  std::string name_;
};

class FunctionRule final : public AssignmentRule {
 public:
  FunctionRule(std::string name, std::function<BistochasticMatrix(const Profile&)> f)
      : name_(std::move(name)), f_(std::move(f)) {}
  std::string name() const override { return name_; }
  BistochasticMatrix apply(const Profile& profile) const override { return f_(profile); }

 private:
  std::string name_;
  std::function<BistochasticMatrix(const Profile&)> f_;
};

}  // namespace ttcv
