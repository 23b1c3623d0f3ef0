#include "ttcv/axioms.hpp"

#include <array>
#include <functional>
#include <stdexcept>

#include "ttcv/lp.hpp"

namespace ttcv {

namespace {

constexpr std::array<std::pair<Axiom, std::string_view>, 8> kAxiomNames{{
    {Axiom::kSdIr, "sd-ir"},
    {Axiom::kSdPareto, "sd-pareto"},
    {Axiom::kSdPair, "sd-pair"},
    {Axiom::kExpostIr, "ep-ir"},
    {Axiom::kExpostPareto, "ep-pareto"},
    {Axiom::kExpostPair, "ep-pair"},
    {Axiom::kSdTopSp, "sd-top-sp"},
    {Axiom::kSdSp, "sd-sp"},
}};

std::vector<Rational> unit_row(int n, ObjectId x) {
  std::vector<Rational> r(n);
  r[x] = 1;
  return r;
}

// Sum over rank positions k of the mass on the top k+1 objects.
Rational total_cumulative(const Preference& p, std::span<const Rational> row) {
  const int n = p.size();
  Rational s;
  for (ObjectId x = 0; x < n; ++x) {
    if (sgn(row[x]) != 0) s += row[x] * (n - p.rank_of(x));
  }
  return s;
}

const std::vector<DeterministicAssignment>& assignments_of(int n) {
  static const std::vector<std::vector<DeterministicAssignment>> table = [] {
    std::vector<std::vector<DeterministicAssignment>> t(8);
    for (int k = 1; k < 8; ++k) t[k] = all_assignments(k);
    return t;
  }();
  if (n < 1 || n >= static_cast<int>(table.size())) throw std::invalid_argument("assignment enumeration limited to n <= 7");
  return table[n];
}

std::string row_key(std::span<const Rational> row) {
  std::string s;
  for (const auto& v : row) {
    s += v.get_str();
    s += ',';
  }
  return s;
}

}  // namespace

std::string axiom_name(Axiom a) {
  for (const auto& [ax, name] : kAxiomNames) {
    if (ax == a) return std::string(name);
  }
  return "?";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (const auto& [ax, n] : kAxiomNames) {
    if (n == name) return ax;
  }
  return std::nullopt;
}

bool det_individually_rational(const DeterministicAssignment& perm, const Profile& profile) {
  for (AgentId i = 0; i < profile.size(); ++i) {
    if (!profile[i].weakly_prefers(perm[i], i)) return false;
  }
  return true;
}

bool det_pareto_efficient(const DeterministicAssignment& perm, const Profile& profile) {
  const int n = profile.size();
  auto scan = [&](const DeterministicAssignment& other) {
    bool strict = false;
    for (AgentId i = 0; i < n; ++i) {
      if (profile[i].strictly_prefers(perm[i], other[i])) return false;
      if (profile[i].strictly_prefers(other[i], perm[i])) strict = true;
    }
    return strict;
  };
  if (n < 8) {
    for (const auto& other : assignments_of(n)) {
      if (scan(other)) return false;
    }
    return true;
  }
  for (const auto& other : all_assignments(n)) {
    if (scan(other)) return false;
  }
  return true;
}

bool det_pair_efficient(const DeterministicAssignment& perm, const Profile& profile) {
  const int n = profile.size();
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      if (profile[i].strictly_prefers(perm[j], perm[i]) && profile[j].strictly_prefers(perm[i], perm[j])) return false;
    }
  }
  return true;
}

bool sd_pareto_dominates(const BistochasticMatrix& by, const BistochasticMatrix& m, const Profile& profile) {
  if (by.size() != m.size() || m.size() != profile.size()) return false;
  bool strict = false;
  for (AgentId i = 0; i < m.size(); ++i) {
    if (!sd_weakly_prefers(profile[i], by.row(i), m.row(i))) return false;
    if (sd_strictly_prefers(profile[i], by.row(i), m.row(i))) strict = true;
  }
  return strict;
}

bool sd_pair_dominates(const BistochasticMatrix& by, const BistochasticMatrix& m, const Profile& profile, AgentId i,
                       AgentId j) {
  const int n = m.size();
  if (by.size() != n || profile.size() != n || i == j) return false;
  for (AgentId k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    for (ObjectId x = 0; x < n; ++x) {
      if (by(k, x) != m(k, x)) return false;
    }
  }
  return sd_strictly_prefers(profile[i], by.row(i), m.row(i)) && sd_strictly_prefers(profile[j], by.row(j), m.row(j));
}

AxiomVerdict check_sd_ir(const BistochasticMatrix& m, const Profile& profile) {
  for (AgentId i = 0; i < m.size(); ++i) {
    auto endowment = unit_row(m.size(), i);
    if (!sd_weakly_prefers(profile[i], m.row(i), endowment)) return {false, ViolatingAgent{i}};
  }
  return {};
}

AxiomVerdict check_sd_pareto_efficient(const BistochasticMatrix& m, const Profile& profile) {
  const int n = m.size();
  const auto var = [n](AgentId i, ObjectId x) { return static_cast<std::size_t>(i * n + x); };
  lp::LinearProgram prog(static_cast<std::size_t>(n) * n);
  Rational baseline;
  for (AgentId i = 0; i < n; ++i) {
    const auto& p = profile[i];
    for (ObjectId x = 0; x < n; ++x) prog.objective[var(i, x)] = n - p.rank_of(x);
    baseline += total_cumulative(p, m.row(i));
    auto cum = cumulative(p, m.row(i));
    std::vector<Rational> coeffs(prog.variables());
    for (int k = 0; k + 1 < n; ++k) {
      coeffs[var(i, p.at(k))] = 1;
      if (sgn(cum[k]) > 0) prog.add(coeffs, lp::Relation::kGreaterEqual, cum[k]);
    }
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> row(prog.variables()), col(prog.variables());
    for (int t = 0; t < n; ++t) {
      row[var(k, t)] = 1;
      col[var(t, k)] = 1;
    }
    prog.add(std::move(row), lp::Relation::kEqual, 1);
    prog.add(std::move(col), lp::Relation::kEqual, 1);
  }
  auto result = lp::solve(prog);
  const auto& opt = std::get<lp::Optimal>(result);
  if (opt.value > baseline) return {false, DominatingMatrix{BistochasticMatrix(n, opt.point), std::nullopt}};
  return {};
}

std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> pair_improvement(
    std::span<const Rational> row_i, std::span<const Rational> row_j, const Preference& pref_i,
    const Preference& pref_j) {
  const int n = pref_i.size();
  // Objects outside the pair's combined support stay at zero.
  std::vector<ObjectId> support;
  std::vector<int> slot(n, -1);
  for (ObjectId x = 0; x < n; ++x) {
    if (sgn(row_i[x]) != 0 || sgn(row_j[x]) != 0) {
      slot[x] = static_cast<int>(support.size());
      support.push_back(x);
    }
  }
  const std::size_t s = support.size();
  const std::size_t t_var = 2 * s;
  lp::LinearProgram prog(2 * s + 1);
  prog.objective[t_var] = 1;

  for (std::size_t k = 0; k < s; ++k) {
    std::vector<Rational> c(prog.variables());
    c[k] = 1;
    c[s + k] = 1;
    prog.add(std::move(c), lp::Relation::kEqual, row_i[support[k]] + row_j[support[k]]);
  }
  {
    std::vector<Rational> c(prog.variables());
    for (std::size_t k = 0; k < s; ++k) c[k] = 1;
    prog.add(std::move(c), lp::Relation::kEqual, 1);
  }
  auto add_agent = [&](const Preference& p, std::span<const Rational> row, std::size_t offset) {
    std::vector<Rational> prefix(prog.variables());
    Rational cum;
    std::size_t seen = 0;
    for (ObjectId x : p.ranking()) {
      if (slot[x] < 0) continue;
      if (++seen == s) break;
      prefix[offset + slot[x]] = 1;
      cum += row[x];
      if (sgn(cum) > 0) prog.add(prefix, lp::Relation::kGreaterEqual, cum);
    }
    std::vector<Rational> total(prog.variables());
    for (std::size_t k = 0; k < s; ++k) total[offset + k] = n - p.rank_of(support[k]);
    total[t_var] = -1;
    prog.add(std::move(total), lp::Relation::kGreaterEqual, total_cumulative(p, row));
  };
  add_agent(pref_i, row_i, 0);
  add_agent(pref_j, row_j, s);

  auto result = lp::solve(prog);
  const auto& opt = std::get<lp::Optimal>(result);
  if (sgn(opt.value) <= 0) return std::nullopt;
  std::vector<Rational> new_i(n), new_j(n);
  for (std::size_t k = 0; k < s; ++k) {
    new_i[support[k]] = opt.point[k];
    new_j[support[k]] = opt.point[s + k];
  }
  return std::pair{std::move(new_i), std::move(new_j)};
}

AxiomVerdict check_sd_pair(const BistochasticMatrix& m, const Profile& profile, AgentId i, AgentId j,
                           const CheckOptions& options) {
  std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> improvement;
  if (options.cache) {
    std::string key = row_key(m.row(i)) + '|' + row_key(m.row(j)) + '|' + profile[i].str() + '|' + profile[j].str();
    auto it = options.cache->pair.find(key);
    if (it == options.cache->pair.end()) {
      it = options.cache->pair.emplace(key, pair_improvement(m.row(i), m.row(j), profile[i], profile[j])).first;
    }
    improvement = it->second;
  } else {
    improvement = pair_improvement(m.row(i), m.row(j), profile[i], profile[j]);
  }
  if (!improvement) return {};
  const int n = m.size();
  std::vector<Rational> entries = m.entries();
  for (ObjectId x = 0; x < n; ++x) {
    entries[i * n + x] = improvement->first[x];
    entries[j * n + x] = improvement->second[x];
  }
  return {false, DominatingMatrix{BistochasticMatrix(n, std::move(entries)), std::pair{i, j}}};
}

AxiomVerdict check_sd_pair_efficient(const BistochasticMatrix& m, const Profile& profile,
                                     const CheckOptions& options) {
  for (AgentId i = 0; i < m.size(); ++i) {
    for (AgentId j = i + 1; j < m.size(); ++j) {
      auto v = check_sd_pair(m, profile, i, j, options);
      if (!v.holds) return v;
    }
  }
  return {};
}

namespace {

AxiomVerdict check_expost(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options,
                          bool (*admissible)(const DeterministicAssignment&, const Profile&)) {
  const int n = m.size();
  if (n > options.max_expost_n) {
    throw std::invalid_argument("ex-post checks are capped at n <= " + std::to_string(options.max_expost_n) +
                                " (n = " + std::to_string(n) + ")");
  }
  const auto& all = assignments_of(n);
  std::vector<DeterministicAssignment> allowed;
  std::string mask;
  for (const auto& p : all) {
    bool ok = admissible(p, profile);
    mask += ok ? '1' : '0';
    if (ok) allowed.push_back(p);
  }
  if (allowed.empty()) throw std::logic_error("no admissible deterministic assignment");

  auto compute = [&] { return decompose_within(m, allowed); };
  ConstrainedDecomposition result;
  if (options.cache) {
    std::string key = row_key(m.entries()) + '|' + mask;
    auto it = options.cache->decompose.find(key);
    if (it == options.cache->decompose.end()) it = options.cache->decompose.emplace(key, compute()).first;
    result = it->second;
  } else {
    result = compute();
  }
  if (auto* d = std::get_if<Decomposition>(&result)) return {true, std::move(*d)};
  return {false, std::get<SeparatingHyperplane>(std::move(result))};
}

}  // namespace

AxiomVerdict check_expost_ir(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options) {
  return check_expost(m, profile, options, det_individually_rational);
}

AxiomVerdict check_expost_pareto(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options) {
  return check_expost(m, profile, options, det_pareto_efficient);
}

AxiomVerdict check_expost_pair(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options) {
  return check_expost(m, profile, options, det_pair_efficient);
}

AxiomVerdict check_sd_top_sp(const RuleTable& table, const ProfileSpace& space, std::uint64_t begin,
                             std::uint64_t end) {
  const auto& domain = space.domain();
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (AgentId i = 0; i < space.agents(); ++i) {
      const std::size_t truth = space.digit(idx, i);
      const ObjectId top = domain[truth].top();
      for (std::size_t d = 0; d < domain.size(); ++d) {
        if (d == truth) continue;
        const auto dev = space.with_digit(idx, i, d);
        bool gain = table.is_deterministic()
                        ? table.object(idx, i) != top && table.object(dev, i) == top
                        : table.probability(dev, i, top) > table.probability(idx, i, top);
        if (gain) return {false, Manipulation{space.profile(idx), i, domain[d]}};
      }
    }
  }
  return {};
}

AxiomVerdict check_sd_sp(const RuleTable& table, const ProfileSpace& space, std::uint64_t begin, std::uint64_t end) {
  const auto& domain = space.domain();
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (AgentId i = 0; i < space.agents(); ++i) {
      const std::size_t truth = space.digit(idx, i);
      const auto& pref = domain[truth];
      for (std::size_t d = 0; d < domain.size(); ++d) {
        if (d == truth) continue;
        const auto dev = space.with_digit(idx, i, d);
        bool gain = table.is_deterministic()
                        ? pref.strictly_prefers(table.object(dev, i), table.object(idx, i))
                        : !sd_weakly_prefers(pref, table.row(idx, i), table.row(dev, i));
        if (gain) return {false, Manipulation{space.profile(idx), i, domain[d]}};
      }
    }
  }
  return {};
}

AxiomVerdict check_sd_top_sp(const AssignmentRule& rule, const Domain& domain) {
  ProfileSpace space(domain, domain.n());
  return check_sd_top_sp(rule.tabulate(space), space, 0, space.size());
}

AxiomVerdict check_sd_sp(const AssignmentRule& rule, const Domain& domain) {
  ProfileSpace space(domain, domain.n());
  return check_sd_sp(rule.tabulate(space), space, 0, space.size());
}

bool ordinal_efficiency_acyclic(const BistochasticMatrix& m, const Profile& profile) {
  const int n = m.size();
  std::vector<std::vector<ObjectId>> succ(n);
  for (AgentId i = 0; i < n; ++i) {
    for (ObjectId y = 0; y < n; ++y) {
      if (sgn(m(i, y)) == 0) continue;
      for (ObjectId x : profile[i].upper_contour(y)) {
        if (x != y) succ[x].push_back(y);
      }
    }
  }
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::function<bool(ObjectId)> has_cycle = [&](ObjectId x) {
    state[x] = 1;
    for (ObjectId y : succ[x]) {
      if (state[y] == 1 || (state[y] == 0 && has_cycle(y))) return true;
    }
    state[x] = 2;
    return false;
  };
  for (ObjectId x = 0; x < n; ++x) {
    if (state[x] == 0 && has_cycle(x)) return false;
  }
  return true;
}

AxiomVerdict check_matrix_axiom(Axiom axiom, const BistochasticMatrix& m, const Profile& profile,
                                const CheckOptions& options) {
  switch (axiom) {
    case Axiom::kSdIr: return check_sd_ir(m, profile);
    case Axiom::kSdPareto: return check_sd_pareto_efficient(m, profile);
    case Axiom::kSdPair: return check_sd_pair_efficient(m, profile, options);
    case Axiom::kExpostIr: return check_expost_ir(m, profile, options);
    case Axiom::kExpostPareto: return check_expost_pareto(m, profile, options);
    case Axiom::kExpostPair: return check_expost_pair(m, profile, options);
    default: break;
  }
  throw std::invalid_argument(axiom_name(axiom) + " is a rule-level axiom");
}

bool witness_is_sound(Axiom axiom, const AxiomVerdict& verdict, const BistochasticMatrix& m, const Profile& profile) {
  auto expost = [&](bool (*admissible)(const DeterministicAssignment&, const Profile&)) {
    std::vector<DeterministicAssignment> allowed;
    for (const auto& p : all_assignments(m.size())) {
      if (admissible(p, profile)) allowed.push_back(p);
    }
    if (verdict.holds) {
      const auto* d = std::get_if<Decomposition>(&verdict.witness);
      if (!d || !d->reproduces(m)) return false;
      for (const auto& t : d->terms) {
        if (!admissible(t.perm, profile)) return false;
      }
      return true;
    }
    const auto* h = std::get_if<SeparatingHyperplane>(&verdict.witness);
    return h && h->separates(m, allowed);
  };
  switch (axiom) {
    case Axiom::kSdIr: {
      if (verdict.holds) return true;
      const auto* w = std::get_if<ViolatingAgent>(&verdict.witness);
      return w && !sd_weakly_prefers(profile[w->agent], m.row(w->agent), unit_row(m.size(), w->agent));
    }
    case Axiom::kSdPareto: {
      if (verdict.holds) return true;
      const auto* w = std::get_if<DominatingMatrix>(&verdict.witness);
      return w && sd_pareto_dominates(w->matrix, m, profile);
    }
    case Axiom::kSdPair: {
      if (verdict.holds) return true;
      const auto* w = std::get_if<DominatingMatrix>(&verdict.witness);
      return w && w->pair && sd_pair_dominates(w->matrix, m, profile, w->pair->first, w->pair->second);
    }
    case Axiom::kExpostIr: return expost(det_individually_rational);
    case Axiom::kExpostPareto: return expost(det_pareto_efficient);
    case Axiom::kExpostPair: return expost(det_pair_efficient);
    default: return false;
  }
}

bool manipulation_is_sound(const AssignmentRule& rule, const Manipulation& w, bool top_only) {
  const auto& truth_pref = w.profile[w.agent];
  auto truth = rule.apply(w.profile);
  auto dev = rule.apply(w.profile.with(w.agent, w.misreport));
  if (top_only) return dev(w.agent, truth_pref.top()) > truth(w.agent, truth_pref.top());
  return !sd_weakly_prefers(truth_pref, truth.row(w.agent), dev.row(w.agent));
}

}  // namespace ttcv
