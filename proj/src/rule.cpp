#include "ttcv/rule.hpp"

#include <stdexcept>

#include "ttcv/ttc.hpp"

namespace ttcv {

RuleTable AssignmentRule::tabulate(const ProfileSpace& space) const {
  const int n = space.agents();
  std::vector<std::uint8_t> objects;
  objects.reserve(space.size() * n);
  std::uint64_t idx = 0;
  for (; idx < space.size(); ++idx) {
    auto d = apply_deterministic(space.profile(idx));
    if (!d) break;
    for (AgentId i = 0; i < n; ++i) objects.push_back(static_cast<std::uint8_t>((*d)[i]));
  }
  if (idx == space.size()) return RuleTable::deterministic(n, std::move(objects));

  std::vector<BistochasticMatrix> matrices;
  matrices.reserve(space.size());
  for (std::uint64_t k = 0; k < space.size(); ++k) matrices.push_back(apply(space.profile(k)));
  return RuleTable::probabilistic(std::move(matrices));
}

RuleTable RuleTable::deterministic(int n, std::vector<std::uint8_t> objects) {
  RuleTable t;
  t.n_ = n;
  t.objects_ = std::move(objects);
  return t;
}

RuleTable RuleTable::probabilistic(std::vector<BistochasticMatrix> matrices) {
  RuleTable t;
  if (matrices.empty()) throw std::invalid_argument("empty rule table");
  t.n_ = matrices.front().size();
  t.matrices_ = std::move(matrices);
  return t;
}

std::uint64_t RuleTable::size() const {
  return is_deterministic() ? (n_ ? objects_.size() / n_ : 0) : matrices_.size();
}

Rational RuleTable::probability(std::uint64_t index, AgentId i, ObjectId x) const {
  if (is_deterministic()) return object(index, i) == x ? 1 : 0;
  return matrices_[index](i, x);
}

std::vector<Rational> RuleTable::row(std::uint64_t index, AgentId i) const {
  if (is_deterministic()) {
    std::vector<Rational> r(n_);
    r[object(index, i)] = 1;
    return r;
  }
  auto s = matrices_[index].row(i);
  return {s.begin(), s.end()};
}

BistochasticMatrix RuleTable::matrix(std::uint64_t index) const {
  if (!is_deterministic()) return matrices_[index];
  std::vector<ObjectId> a(n_);
  for (AgentId i = 0; i < n_; ++i) a[i] = object(index, i);
  return BistochasticMatrix(DeterministicAssignment(std::move(a)));
}

BistochasticMatrix TtcRule::apply(const Profile& profile) const { return BistochasticMatrix(ttc(profile)); }

std::optional<DeterministicAssignment> TtcRule::apply_deterministic(const Profile& profile) const {
  return ttc(profile);
}

TtcRule ttc_rule(const Domain&) { return TtcRule{}; }

TableRule::TableRule(const Domain& domain, std::vector<BistochasticMatrix> outcomes, std::string name)
    : space_(domain, domain.n()), outcomes_(std::move(outcomes)), name_(std::move(name)) {
  if (outcomes_.size() != space_.size()) {
    throw std::invalid_argument("table rule needs " + std::to_string(space_.size()) + " outcomes, got " +
                                std::to_string(outcomes_.size()));
  }
}

BistochasticMatrix TableRule::apply(const Profile& profile) const { return outcomes_[space_.index_of(profile)]; }

}  // namespace ttcv
