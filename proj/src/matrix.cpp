#include "ttcv/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ttcv/lp.hpp"

namespace ttcv {

DeterministicAssignment::DeterministicAssignment(std::vector<ObjectId> assign) : assign_(std::move(assign)) {
  const int n = size();
  std::vector<char> used(n, 0);
  for (ObjectId x : assign_) {
    if (x < 0 || x >= n || used[x]) throw std::invalid_argument("assignment is not a permutation");
    used[x] = 1;
  }
}

DeterministicAssignment DeterministicAssignment::identity(int n) {
  std::vector<ObjectId> a(n);
  std::iota(a.begin(), a.end(), 0);
  return DeterministicAssignment(std::move(a));
}

std::vector<DeterministicAssignment> all_assignments(int n) {
  std::vector<ObjectId> a(n);
  std::iota(a.begin(), a.end(), 0);
  std::vector<DeterministicAssignment> out;
  do {
    out.emplace_back(a);
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

BistochasticMatrix::BistochasticMatrix(int n, std::vector<Rational> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("matrix must have n*n entries");
  }
  std::vector<Rational> col(n);
  for (int i = 0; i < n; ++i) {
    Rational s;
    for (int j = 0; j < n; ++j) {
      const Rational& v = entries_[i * n + j];
      if (sgn(v) < 0 || v > 1) {
        throw std::invalid_argument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + to_string(v) +
                                    " outside [0,1]");
      }
      s += v;
      col[j] += v;
    }
    if (s != 1) throw std::invalid_argument("row " + std::to_string(i) + " sums to " + to_string(s));
  }
  for (int j = 0; j < n; ++j) {
    if (col[j] != 1) throw std::invalid_argument("column " + std::to_string(j) + " sums to " + to_string(col[j]));
  }
}

BistochasticMatrix::BistochasticMatrix(const DeterministicAssignment& perm)
    : n_(perm.size()), entries_(static_cast<std::size_t>(perm.size()) * perm.size()) {
  for (int i = 0; i < n_; ++i) entries_[i * n_ + perm[i]] = 1;
}

std::optional<DeterministicAssignment> BistochasticMatrix::as_assignment() const {
  std::vector<ObjectId> a(n_, -1);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const auto& v = entries_[i * n_ + j];
      if (v == 1) {
        a[i] = j;
      } else if (sgn(v) != 0) {
        return std::nullopt;
      }
    }
  }
  return DeterministicAssignment(std::move(a));
}

std::vector<Rational> Decomposition::recombine(int n) const {
  std::vector<Rational> out(static_cast<std::size_t>(n) * n);
  for (const auto& t : terms) {
    for (int i = 0; i < n; ++i) out[i * n + t.perm[i]] += t.weight;
  }
  return out;
}

bool Decomposition::reproduces(const BistochasticMatrix& m) const {
  Rational total;
  for (const auto& t : terms) {
    if (sgn(t.weight) <= 0 || t.perm.size() != m.size()) return false;
    total += t.weight;
  }
  return total == 1 && recombine(m.size()) == m.entries();
}

Rational SeparatingHyperplane::evaluate(std::span<const Rational> entries) const {
  Rational s = offset;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (sgn(entries[k]) != 0) s += coefficients[k] * entries[k];
  }
  return s;
}

bool SeparatingHyperplane::separates(const BistochasticMatrix& m,
                                     std::span<const DeterministicAssignment> allowed) const {
  if (coefficients.size() != m.entries().size()) return false;
  if (sgn(evaluate(m.entries())) >= 0) return false;
  for (const auto& p : allowed) {
    if (sgn(evaluate(BistochasticMatrix(p).entries())) < 0) return false;
  }
  return true;
}

Rational row_prob(const BistochasticMatrix& m, AgentId agent, std::span<const ObjectId> s) {
  Rational sum;
  for (ObjectId x : s) sum += m(agent, x);
  return sum;
}

std::vector<Rational> cumulative(const Preference& p, std::span<const Rational> row) {
  std::vector<Rational> cum(row.size());
  Rational run;
  for (int k = 0; k < p.size(); ++k) {
    run += row[p.at(k)];
    cum[k] = run;
  }
  return cum;
}

namespace {

void require_distribution(const Preference& p, std::span<const Rational> row) {
  if (static_cast<int>(row.size()) != p.size()) throw std::invalid_argument("row size does not match preference");
  Rational s;
  for (const auto& v : row) {
    if (sgn(v) < 0) throw std::invalid_argument("row has a negative entry");
    s += v;
  }
  if (s != 1) throw std::invalid_argument("row is not a distribution: sums to " + to_string(s));
}

// -1: some upper contour has less mass; 0: equal everywhere; 1: weakly more
// everywhere with at least one strict.
int sd_compare(const Preference& p, std::span<const Rational> lhs, std::span<const Rational> rhs) {
  require_distribution(p, lhs);
  require_distribution(p, rhs);
  Rational l, r;
  bool strict = false;
  for (int k = 0; k < p.size(); ++k) {
    l += lhs[p.at(k)];
    r += rhs[p.at(k)];
    if (l < r) return -1;
    if (l > r) strict = true;
  }
  return strict ? 1 : 0;
}

}  // namespace

bool sd_weakly_prefers(const Preference& p, std::span<const Rational> lhs, std::span<const Rational> rhs) {
  return sd_compare(p, lhs, rhs) >= 0;
}

bool sd_strictly_prefers(const Preference& p, std::span<const Rational> lhs, std::span<const Rational> rhs) {
  return sd_compare(p, lhs, rhs) > 0;
}

namespace {

// Kuhn's augmenting paths over the positive entries, rows in order, columns
// tried in ascending index.
bool augment(const std::vector<Rational>& r, int n, int row, std::vector<char>& seen, std::vector<int>& col_owner) {
  for (int j = 0; j < n; ++j) {
    if (sgn(r[row * n + j]) == 0 || seen[j]) continue;
    seen[j] = 1;
    if (col_owner[j] < 0 || augment(r, n, col_owner[j], seen, col_owner)) {
      col_owner[j] = row;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<ObjectId>> support_matching(const std::vector<Rational>& r, int n) {
  std::vector<int> col_owner(n, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    if (!augment(r, n, i, seen, col_owner)) return std::nullopt;
  }
  std::vector<ObjectId> assign(n);
  for (int j = 0; j < n; ++j) assign[col_owner[j]] = j;
  return assign;
}

// Vector in the null space of the (n^2 + 1) x K system [vec(P_k); 1], or
// empty if the columns are independent.
std::vector<Rational> affine_dependency(const Decomposition& d, int n) {
  const std::size_t k = d.terms.size();
  const std::size_t rows = static_cast<std::size_t>(n) * n + 1;
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k));
  for (std::size_t c = 0; c < k; ++c) {
    for (int i = 0; i < n; ++i) a[i * n + d.terms[c].perm[i]][c] = 1;
    a[rows - 1][c] = 1;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  std::optional<std::size_t> free_col;
  for (std::size_t c = 0; c < k && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) {
      free_col = c;
      break;
    }
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || sgn(a[q][c]) == 0) continue;
      Rational f = a[q][c];
      for (std::size_t cc = c; cc < k; ++cc) a[q][cc] -= f * a[r][cc];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (!free_col) {
    if (pivot_col.size() == k) return {};
    free_col = pivot_col.size();
  }
  std::vector<Rational> lambda(k);
  lambda[*free_col] = 1;
  for (std::size_t q = 0; q < pivot_col.size(); ++q) lambda[pivot_col[q]] = -a[q][*free_col];
  return lambda;
}

}  // namespace

Decomposition reduce_terms(Decomposition d, int n) {
  std::map<DeterministicAssignment, Rational> merged;
  for (auto& t : d.terms) merged[t.perm] += t.weight;
  d.terms.clear();
  for (auto& [perm, w] : merged) {
    if (sgn(w) != 0) d.terms.push_back({w, perm});
  }
  for (;;) {
    auto lambda = affine_dependency(d, n);
    if (lambda.empty()) return d;
    std::optional<Rational> theta;
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      if (sgn(lambda[c]) <= 0) continue;
      Rational t = d.terms[c].weight / lambda[c];
      if (!theta || t < *theta) theta = t;
    }
    std::vector<DecompositionTerm> kept;
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      Rational w = d.terms[c].weight - *theta * lambda[c];
      if (sgn(w) != 0) kept.push_back({w, d.terms[c].perm});
    }
    d.terms = std::move(kept);
  }
}

Decomposition birkhoff_decompose(const BistochasticMatrix& m) {
  const int n = m.size();
  std::vector<Rational> rest = m.entries();
  Decomposition d;
  for (;;) {
    auto assign = support_matching(rest, n);
    if (!assign) break;
    Rational w = rest[(*assign)[0]];
    for (int i = 1; i < n; ++i) w = std::min(w, rest[i * n + (*assign)[i]]);
    for (int i = 0; i < n; ++i) rest[i * n + (*assign)[i]] -= w;
    d.terms.push_back({w, DeterministicAssignment(std::move(*assign))});
  }
  return reduce_terms(std::move(d), n);
}

ConstrainedDecomposition decompose_within(const BistochasticMatrix& m,
                                          std::span<const DeterministicAssignment> allowed) {
  if (allowed.empty()) throw std::invalid_argument("decompose_within needs at least one allowed assignment");
  const int n = m.size();
  const std::size_t k = allowed.size();
  lp::LinearProgram prog(k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> row(k);
      for (std::size_t p = 0; p < k; ++p) {
        if (allowed[p][i] == j) row[p] = 1;
      }
      prog.add(std::move(row), lp::Relation::kEqual, m(i, j));
    }
  }
  prog.add(std::vector<Rational>(k, Rational(1)), lp::Relation::kEqual, 1);

  auto result = lp::solve(prog);
  if (auto* opt = std::get_if<lp::Optimal>(&result)) {
    Decomposition d;
    for (std::size_t p = 0; p < k; ++p) {
      if (sgn(opt->point[p]) > 0) d.terms.push_back({opt->point[p], allowed[p]});
    }
    return reduce_terms(std::move(d), n);
  }
  const auto& cert = std::get<lp::Infeasible>(result);
  SeparatingHyperplane h;
  h.coefficients.assign(cert.multipliers.begin(), cert.multipliers.begin() + static_cast<std::ptrdiff_t>(n) * n);
  h.offset = cert.multipliers[static_cast<std::size_t>(n) * n];
  return h;
}

}  // namespace ttcv
