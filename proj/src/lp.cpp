#include "ttcv/lp.hpp"

#include <stdexcept>
#include <string>

namespace ttcv::lp {

namespace {

void validate(const LinearProgram& lp) {
  const auto n = lp.variables();
  if (!lp.bounds.empty() && lp.bounds.size() != n) {
    throw std::invalid_argument("LP has " + std::to_string(n) + " variables but " + std::to_string(lp.bounds.size()) +
                                " bounds");
  }
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (lp.constraints[k].coeffs.size() != n) {
      throw std::invalid_argument("LP constraint " + std::to_string(k) + " has wrong dimension");
    }
  }
}

// Row of the working system: original constraint or an upper-bound row.
struct Row {
  const std::vector<Rational>* coeffs = nullptr;  // null for upper-bound rows
  std::size_t bound_var = 0;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// Standard-form tableau: rows `m` by columns `cols` plus rhs column.
// Column layout: structural | slacks | artificials.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), w_(cols + 1), cells_(rows * (cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r * w_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * w_ + c]; }
  Rational& rhs(std::size_t r) { return at(r, w_ - 1); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return w_ - 1; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<Rational>& cost, Rational& cost_rhs) {
    Rational inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c < w_; ++c) {
      if (sgn(at(pr, c)) != 0) at(pr, c) *= inv;
    }
    nonzero_.clear();
    for (std::size_t c = 0; c < w_; ++c) {
      if (sgn(at(pr, c)) != 0) nonzero_.push_back(c);
    }
    Rational f;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      f = at(r, pc);
      for (std::size_t c : nonzero_) at(r, c) -= f * at(pr, c);
    }
    if (sgn(cost[pc]) != 0) {
      f = cost[pc];
      for (std::size_t c : nonzero_) {
        if (c == w_ - 1) {
          cost_rhs -= f * at(pr, c);
        } else {
          cost[c] -= f * at(pr, c);
        }
      }
    }
    basis_[pr] = pc;
  }

 private:
  std::size_t m_, w_;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

enum class Outcome { kOptimal, kUnbounded };

// Minimizes with Bland's rule over columns [0, enter_limit). `cost` holds
// reduced costs; returns the entering column on unboundedness.
Outcome run_simplex(Tableau& t, std::vector<Rational>& cost, Rational& cost_rhs, std::size_t enter_limit,
                    std::size_t& unbounded_col) {
  Rational ratio, best;
  for (;;) {
    std::size_t enter = enter_limit;
    for (std::size_t c = 0; c < enter_limit; ++c) {
      if (sgn(cost[c]) < 0) {
        enter = c;
        break;
      }
    }
    if (enter == enter_limit) return Outcome::kOptimal;
    std::size_t leave = t.rows();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (sgn(t.at(r, enter)) <= 0) continue;
      ratio = t.rhs(r) / t.at(r, enter);
      if (leave == t.rows() || ratio < best || (ratio == best && t.basis()[r] < t.basis()[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == t.rows()) {
      unbounded_col = enter;
      return Outcome::kUnbounded;
    }
    t.pivot(leave, enter, cost, cost_rhs);
  }
}

}  // namespace

Result solve(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.variables();

  // Variable substitution: x_j = lower_j + col, or x_j = plus - minus when free.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::vector<Rational> shift(n);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    auto b = lp.bounds_of(j);
    plus_col[j] = structural++;
    if (b.lower) {
      shift[j] = *b.lower;
    } else {
      minus_col[j] = structural++;
    }
  }

  std::vector<Row> rows;
  for (const auto& c : lp.constraints) rows.push_back({&c.coeffs, 0, c.relation, c.rhs});
  for (std::size_t j = 0; j < n; ++j) {
    if (auto u = lp.bounds_of(j).upper) rows.push_back({nullptr, j, Relation::kLessEqual, *u});
  }
  const std::size_t m = rows.size();

  std::size_t slacks = 0;
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t k = 0; k < m; ++k) {
    if (rows[k].relation != Relation::kEqual) slack_col[k] = structural + slacks++;
  }
  const std::size_t art0 = structural + slacks;
  const std::size_t cols = art0 + m;

  Tableau t(m, cols);
  std::vector<int> sign(m, 1);
  for (std::size_t k = 0; k < m; ++k) {
    Rational b = rows[k].rhs;
    auto coeff = [&](std::size_t j) -> Rational {
      if (rows[k].coeffs) return (*rows[k].coeffs)[j];
      return rows[k].bound_var == j ? Rational(1) : Rational(0);
    };
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = coeff(j);
      if (sgn(a) == 0) continue;
      t.at(k, plus_col[j]) = a;
      if (minus_col[j] != SIZE_MAX) t.at(k, minus_col[j]) = -a;
      b -= a * shift[j];
    }
    if (slack_col[k] != SIZE_MAX) t.at(k, slack_col[k]) = rows[k].relation == Relation::kLessEqual ? 1 : -1;
    if (sgn(b) < 0) {
      sign[k] = -1;
      for (std::size_t c = 0; c < art0; ++c) t.at(k, c) = -t.at(k, c);
      b = -b;
    }
    t.rhs(k) = b;
    t.at(k, art0 + k) = 1;
    t.basis()[k] = art0 + k;
  }

  // Phase I: minimize the sum of artificials.
  std::vector<Rational> cost(cols);
  Rational cost_rhs;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t c = 0; c < art0; ++c) {
      if (sgn(t.at(k, c)) != 0) cost[c] -= t.at(k, c);
    }
    cost_rhs -= t.rhs(k);
  }
  std::size_t unbounded_col = 0;
  run_simplex(t, cost, cost_rhs, cols, unbounded_col);

  if (sgn(cost_rhs) != 0) {
    // Phase-I duals y_k = 1 - reduced cost of artificial k; Farkas vector is -y.
    Infeasible cert;
    cert.multipliers.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational y = 1 - cost[art0 + k];
      cert.multipliers[k] = -y * sign[k];
    }
    return cert;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < art0) continue;
    for (std::size_t c = 0; c < art0; ++c) {
      if (sgn(t.at(r, c)) != 0) {
        t.pivot(r, c, cost, cost_rhs);
        break;
      }
    }
  }

  // Phase II: minimize -objective over structural + slack columns.
  std::vector<Rational> base_cost(cols);
  for (std::size_t j = 0; j < n; ++j) {
    base_cost[plus_col[j]] = -lp.objective[j];
    if (minus_col[j] != SIZE_MAX) base_cost[minus_col[j]] = lp.objective[j];
  }
  cost = base_cost;
  cost_rhs = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const Rational& cb = base_cost[t.basis()[r]];
    if (sgn(cb) == 0) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(t.at(r, c)) != 0) cost[c] -= cb * t.at(r, c);
    }
    cost_rhs -= cb * t.rhs(r);
  }
  auto outcome = run_simplex(t, cost, cost_rhs, art0, unbounded_col);

  std::vector<Rational> col_value(cols);
  for (std::size_t r = 0; r < m; ++r) col_value[t.basis()[r]] = t.rhs(r);
  auto to_original = [&](const std::vector<Rational>& v, bool shifted) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = v[plus_col[j]];
      if (minus_col[j] != SIZE_MAX) x[j] -= v[minus_col[j]];
      if (shifted) x[j] += shift[j];
    }
    return x;
  };
  auto point = to_original(col_value, true);

  if (outcome == Outcome::kUnbounded) {
    std::vector<Rational> dir(cols);
    dir[unbounded_col] = 1;
    for (std::size_t r = 0; r < m; ++r) dir[t.basis()[r]] = -t.at(r, unbounded_col);
    return Unbounded{std::move(point), to_original(dir, false)};
  }
  Rational value;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * point[j];
  return Optimal{std::move(value), std::move(point)};
}

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sgn(a[j]) != 0) s += a[j] * b[j];
  }
  return s;
}

bool relation_holds(Relation rel, const Rational& lhs, const Rational& rhs) {
  switch (rel) {
    case Relation::kLessEqual: return lhs <= rhs;
    case Relation::kEqual: return lhs == rhs;
    case Relation::kGreaterEqual: return lhs >= rhs;
  }
  return false;
}

}  // namespace

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto b = lp.bounds_of(j);
    if (b.lower && x[j] < *b.lower) return false;
    if (b.upper && x[j] > *b.upper) return false;
  }
  for (const auto& c : lp.constraints) {
    if (!relation_holds(c.relation, dot(c.coeffs, x), c.rhs)) return false;
  }
  return true;
}

bool certifies_infeasible(const LinearProgram& lp, const Infeasible& cert) {
  const std::size_t n = lp.variables();
  std::vector<Rational> g(n);
  Rational yb;
  std::size_t k = 0;
  auto sign_ok = [](Relation rel, const Rational& y) {
    if (rel == Relation::kLessEqual) return sgn(y) >= 0;
    if (rel == Relation::kGreaterEqual) return sgn(y) <= 0;
    return true;
  };
  for (const auto& c : lp.constraints) {
    if (k >= cert.multipliers.size()) return false;
    const Rational& y = cert.multipliers[k++];
    if (!sign_ok(c.relation, y)) return false;
    if (sgn(y) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) g[j] += y * c.coeffs[j];
    yb += y * c.rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    auto u = lp.bounds_of(j).upper;
    if (!u) continue;
    if (k >= cert.multipliers.size()) return false;
    const Rational& y = cert.multipliers[k++];
    if (sgn(y) < 0) return false;
    g[j] += y;
    yb += y * *u;
  }
  if (k != cert.multipliers.size()) return false;
  Rational gl;
  for (std::size_t j = 0; j < n; ++j) {
    auto l = lp.bounds_of(j).lower;
    if (l) {
      if (sgn(g[j]) < 0) return false;
      gl += g[j] * *l;
    } else if (sgn(g[j]) != 0) {
      return false;
    }
  }
  return yb < gl;
}

bool certifies_unbounded(const LinearProgram& lp, const Unbounded& cert) {
  const std::size_t n = lp.variables();
  if (cert.ray.size() != n || !is_feasible_point(lp, cert.point)) return false;
  if (dot(lp.objective, cert.ray) <= 0) return false;
  for (std::size_t j = 0; j < n; ++j) {
    auto b = lp.bounds_of(j);
    if (b.lower && sgn(cert.ray[j]) < 0) return false;
    if (b.upper && sgn(cert.ray[j]) > 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational d = dot(c.coeffs, cert.ray);
    if (c.relation == Relation::kEqual && sgn(d) != 0) return false;
    if (c.relation == Relation::kLessEqual && sgn(d) > 0) return false;
    if (c.relation == Relation::kGreaterEqual && sgn(d) < 0) return false;
  }
  return true;
}

}  // namespace ttcv::lp
