#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ttcv/prefs.hpp"
#include "ttcv/rational.hpp"

namespace ttcv {

/// Permutation agent -> object.
class DeterministicAssignment {
 public:
  DeterministicAssignment() = default;
  /// Throws std::invalid_argument unless `assign` is a permutation.
  explicit DeterministicAssignment(std::vector<ObjectId> assign);
  static DeterministicAssignment identity(int n);

  int size() const { return static_cast<int>(assign_.size()); }
  ObjectId operator[](AgentId i) const { return assign_[i]; }
  const std::vector<ObjectId>& objects() const { return assign_; }

  friend bool operator==(const DeterministicAssignment&, const DeterministicAssignment&) = default;
  friend auto operator<=>(const DeterministicAssignment&, const DeterministicAssignment&) = default;

 private:
  std::vector<ObjectId> assign_;
};

/// All n! permutations in lexicographic order.
std::vector<DeterministicAssignment> all_assignments(int n);

/// n x n matrix with entries in [0,1] and unit row and column sums.
class BistochasticMatrix {
 public:
  BistochasticMatrix() = default;
  /// Row-major entries. Throws std::invalid_argument if not bi-stochastic.
  BistochasticMatrix(int n, std::vector<Rational> entries);
  explicit BistochasticMatrix(const DeterministicAssignment& perm);

  static BistochasticMatrix identity(int n) { return BistochasticMatrix(DeterministicAssignment::identity(n)); }

  int size() const { return n_; }
  const Rational& operator()(AgentId i, ObjectId j) const { return entries_[i * n_ + j]; }
  std::span<const Rational> row(AgentId i) const { return std::span<const Rational>(entries_).subspan(i * n_, n_); }
  const std::vector<Rational>& entries() const { return entries_; }

  /// The permutation if every entry is 0 or 1.
  std::optional<DeterministicAssignment> as_assignment() const;

  friend bool operator==(const BistochasticMatrix&, const BistochasticMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> entries_;
};

struct DecompositionTerm {
  Rational weight;
  DeterministicAssignment perm;
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;

  /// Weighted sum of the permutation matrices, unchecked.
  std::vector<Rational> recombine(int n) const;
  /// Positive weights summing to 1 whose recombination equals m exactly.
  bool reproduces(const BistochasticMatrix& m) const;
};

// <coefficients, P> + offset >= 0 for every allowed P, while
// <coefficients, m> + offset < 0.
struct SeparatingHyperplane {
  std::vector<Rational> coefficients;  // n x n, row-major
  Rational offset;

  Rational evaluate(std::span<const Rational> entries) const;
  bool separates(const BistochasticMatrix& m, std::span<const DeterministicAssignment> allowed) const;
};

using ConstrainedDecomposition = std::variant<Decomposition, SeparatingHyperplane>;

/// Total probability agent i receives from objects in s.
Rational row_prob(const BistochasticMatrix& m, AgentId agent, std::span<const ObjectId> s);

/// Cumulative mass on each upper contour set, indexed by rank position.
std::vector<Rational> cumulative(const Preference& p, std::span<const Rational> row);

/// lhs SD-weakly dominates rhs under p. Throws std::invalid_argument if a
/// row is not a probability distribution of the right size.
bool sd_weakly_prefers(const Preference& p, std::span<const Rational> lhs, std::span<const Rational> rhs);
bool sd_strictly_prefers(const Preference& p, std::span<const Rational> lhs, std::span<const Rational> rhs);

/// Exact Birkhoff-von Neumann decomposition with at most n^2-2n+2 terms.
Decomposition birkhoff_decompose(const BistochasticMatrix& m);

/// Convex weights over `allowed` reproducing m, or a hyperplane proving none
/// exist. Throws std::invalid_argument if `allowed` is empty.
ConstrainedDecomposition decompose_within(const BistochasticMatrix& m, std::span<const DeterministicAssignment> allowed);

/// Drops terms until the permutation matrices are affinely independent.
Decomposition reduce_terms(Decomposition d, int n);

}  // namespace ttcv
