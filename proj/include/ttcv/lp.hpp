#pragma once

// Exact rational linear programming: dense two-phase simplex with Bland's
// rule. Every result carries a certificate that can be re-checked with the
// free functions below.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ttcv/rational.hpp"

namespace ttcv::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct Bounds {
  std::optional<Rational> lower = Rational(0);  // nullopt: unbounded below
  std::optional<Rational> upper;                // nullopt: unbounded above
};

/// maximize objective·x subject to constraints and per-variable bounds.
/// An empty `bounds` means x >= 0 for every variable.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;

  explicit LinearProgram(std::size_t variables = 0) : objective(variables) {}

  std::size_t variables() const { return objective.size(); }
  Bounds bounds_of(std::size_t j) const { return bounds.empty() ? Bounds{} : bounds[j]; }
  void add(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

struct Optimal {
  Rational value;
  std::vector<Rational> point;
};

// Farkas multipliers, one per constraint followed by one per finite upper
// bound (in variable order). Multipliers of <= rows are >= 0, of >= rows are
// <= 0. With g = sum_k y_k a_k: g_j >= 0 for variables with a lower bound,
// g_j = 0 for the rest, and sum_k y_k b_k < sum_j g_j l_j.
struct Infeasible {
  std::vector<Rational> multipliers;
};

// point + t*ray is feasible for all t >= 0 and objective·ray > 0.
struct Unbounded {
  std::vector<Rational> point;
  std::vector<Rational> ray;
};

using Result = std::variant<Optimal, Infeasible, Unbounded>;

/// Throws std::invalid_argument on dimension mismatch. Crossed bounds are
/// reported as Infeasible.
Result solve(const LinearProgram& lp);

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x);
bool certifies_infeasible(const LinearProgram& lp, const Infeasible& cert);
bool certifies_unbounded(const LinearProgram& lp, const Unbounded& cert);

}  // namespace ttcv::lp
