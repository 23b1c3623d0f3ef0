#include "ttcv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "ttcv/ttc.hpp"

namespace ttcv {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::string object_list(const std::vector<ObjectId>& xs) {
  std::string s = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ",";
    s += "x" + std::to_string(xs[k]);
  }
  return s + ")";
}

// Contiguous chunks [begin, end) of [0, total), one per worker.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition(std::uint64_t total, int jobs) {
  const std::uint64_t k = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1)));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
  for (std::uint64_t c = 0; c < k; ++c) chunks.emplace_back(total * c / k, total * (c + 1) / k);
  return chunks;
}

template <typename F>
void run_chunks(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& chunks, F&& work) {
  if (chunks.size() == 1) {
    work(0, chunks[0].first, chunks[0].second);
    return;
  }
  std::vector<std::jthread> workers;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    workers.emplace_back([&, c] { work(c, chunks[c].first, chunks[c].second); });
  }
}

RuleTable tabulate_parallel(const AssignmentRule& rule, const ProfileSpace& space, int jobs) {
  const int n = space.agents();
  std::vector<std::uint8_t> objects(space.size() * n);
  auto chunks = partition(space.size(), jobs);
  std::vector<char> deterministic(chunks.size(), 1);
  run_chunks(chunks, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      auto d = rule.apply_deterministic(space.profile(idx));
      if (!d) {
        deterministic[c] = 0;
        return;
      }
      for (AgentId i = 0; i < n; ++i) objects[idx * n + i] = static_cast<std::uint8_t>((*d)[i]);
    }
  });
  if (std::all_of(deterministic.begin(), deterministic.end(), [](char v) { return v; })) {
    return RuleTable::deterministic(n, std::move(objects));
  }
  return rule.tabulate(space);
}

void check_domain_condition(const Domain& domain, int theorem) {
  if (theorem == 1 || theorem == 3) {
    if (auto miss = missing_top_pair(domain)) {
      std::vector<ObjectId> m{miss->first, miss->second};
      throw DomainConditionError("theorem " + std::to_string(theorem) +
                                     " needs an FPT domain; no preference starts with " + object_list(m),
                                 m);
    }
    return;
  }
  if (domain.n() < 3) throw DomainConditionError("FTT undefined below three objects", {});
  if (auto miss = missing_top_triple(domain)) {
    std::vector<ObjectId> m(miss->begin(), miss->end());
    throw DomainConditionError("theorem " + std::to_string(theorem) +
                                   " needs an FTT domain; no preference starts with " + object_list(m),
                               m);
  }
}

}  // namespace

std::vector<Axiom> theorem_axioms(int theorem) {
  switch (theorem) {
    case 1: return {Axiom::kSdPareto, Axiom::kSdIr, Axiom::kSdTopSp};
    case 2: return {Axiom::kSdPair, Axiom::kSdIr, Axiom::kSdTopSp};
    case 3: return {Axiom::kExpostPareto, Axiom::kExpostIr, Axiom::kSdTopSp};
    case 4: return {Axiom::kExpostPair, Axiom::kExpostIr, Axiom::kSdTopSp};
    default: throw std::invalid_argument("theorem must be 1, 2, 3 or 4");
  }
}

std::string describe_domain(const Domain& d) {
  const int n = d.n();
  const std::string suffix = "(" + std::to_string(n) + ")";
  // Small minimal domains can coincide with the unrestricted one; say so.
  const bool unrestricted = n <= 8 && d.size() == factorial(n) && d.prefs() == unrestricted_domain(n).prefs();
  const std::string also = unrestricted ? "=unrestricted" + suffix : "";
  if (n >= 2 && d.size() == static_cast<std::size_t>(n * (n - 1)) && d.prefs() == minimal_fpt(n).prefs()) {
    return "minimal-fpt" + suffix + also;
  }
  if (n >= 3 && d.size() == static_cast<std::size_t>(n * (n - 1) * (n - 2)) && d.prefs() == minimal_ftt(n).prefs()) {
    return "minimal-ftt" + suffix + also;
  }
  if (unrestricted) return "unrestricted" + suffix;
  return "custom(n=" + std::to_string(n) + ",size=" + std::to_string(d.size()) + ")";
}

TheoremReport verify_rule_axioms(const AssignmentRule& rule, const Domain& domain, int theorem,
                                 const SweepOptions& options) {
  const auto axioms = theorem_axioms(theorem);
  check_domain_condition(domain, theorem);
  const int n = domain.n();
  ProfileSpace space(domain, n);
  if (!options.ignore_caps && (n > options.max_n || space.size() > options.max_profiles)) {
    throw SizeCapError("profile sweep over " + describe_domain(domain) + " (" + std::to_string(space.size()) +
                       " profiles) exceeds the size cap n <= " + std::to_string(options.max_n) + ", " +
                       std::to_string(options.max_profiles) + " profiles");
  }

  const auto start = std::chrono::steady_clock::now();
  const RuleTable table = tabulate_parallel(rule, space, options.jobs);

  struct ChunkResult {
    std::vector<AxiomTally> tallies;
    std::uint64_t counterexample_count = 0;
    std::vector<Counterexample> counterexamples;
  };
  auto chunks = partition(space.size(), options.jobs);
  std::vector<ChunkResult> results(chunks.size());

  run_chunks(chunks, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    CheckCache cache;
    CheckOptions check{options.max_expost_n, &cache};
    ChunkResult& out = results[c];
    for (Axiom a : axioms) out.tallies.push_back({a});
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Profile profile = space.profile(idx);
      const BistochasticMatrix m = table.matrix(idx);
      for (std::size_t k = 0; k < axioms.size(); ++k) {
        const Axiom a = axioms[k];
        AxiomVerdict v = a == Axiom::kSdTopSp ? check_sd_top_sp(table, space, idx, idx + 1)
                         : a == Axiom::kSdSp  ? check_sd_sp(table, space, idx, idx + 1)
                                              : check_matrix_axiom(a, m, profile, check);
        ++out.tallies[k].checked;
        if (v.holds) continue;
        ++out.tallies[k].violations;
        ++out.counterexample_count;
        if (out.counterexamples.size() < options.max_counterexamples) {
          out.counterexamples.push_back({idx, profile, a, std::move(v)});
        }
      }
    }
  });

  TheoremReport report;
  report.theorem = theorem;
  report.rule = rule.name();
  report.domain = describe_domain(domain);
  report.n = n;
  report.domain_size = domain.size();
  report.profiles_checked = space.size();
  for (Axiom a : axioms) report.verdicts.push_back({a});
  for (auto& r : results) {
    for (std::size_t k = 0; k < axioms.size(); ++k) {
      report.verdicts[k].checked += r.tallies[k].checked;
      report.verdicts[k].violations += r.tallies[k].violations;
    }
    report.counterexample_count += r.counterexample_count;
    for (auto& ce : r.counterexamples) {
      if (report.counterexamples.size() < options.max_counterexamples) report.counterexamples.push_back(std::move(ce));
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TheoremReport verify_ttc_axioms(const Domain& domain, int theorem, const SweepOptions& options) {
  return verify_rule_axioms(ttc_rule(domain), domain, theorem, options);
}

UniquenessReport uniqueness_n2(const Domain& domain) {
  if (domain.n() != 2) throw std::invalid_argument("exhaustive uniqueness is implemented for n = 2 only");
  ProfileSpace space(domain, 2);
  const std::uint64_t profiles = space.size();
  const auto identity = DeterministicAssignment::identity(2);
  const DeterministicAssignment swap({1, 0});

  UniquenessReport report;
  report.domain = describe_domain(domain);
  report.profiles = profiles;
  for (std::uint64_t idx = 0; idx < profiles; ++idx) report.ttc_outcomes.push_back(ttc(space.profile(idx)));

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << profiles); ++mask) {
    ++report.rules_checked;
    std::vector<DeterministicAssignment> outcomes;
    std::vector<std::uint8_t> objects;
    for (std::uint64_t idx = 0; idx < profiles; ++idx) {
      const auto& perm = (mask >> idx) & 1 ? swap : identity;
      outcomes.push_back(perm);
      objects.push_back(static_cast<std::uint8_t>(perm[0]));
      objects.push_back(static_cast<std::uint8_t>(perm[1]));
    }
    const auto table = RuleTable::deterministic(2, std::move(objects));
    bool ok = check_sd_top_sp(table, space, 0, profiles).holds;
    for (std::uint64_t idx = 0; ok && idx < profiles; ++idx) {
      const Profile p = space.profile(idx);
      const BistochasticMatrix m(outcomes[idx]);
      ok = check_sd_ir(m, p).holds && check_sd_pair_efficient(m, p).holds;
    }
    if (ok) report.survivors.push_back(std::move(outcomes));
  }
  return report;
}

Profile cyclic_profile(int n) {
  std::vector<Preference> prefs;
  for (AgentId i = 0; i < n; ++i) {
    std::vector<ObjectId> r;
    for (int k = 0; k < n; ++k) r.push_back((i + k) % n);
    prefs.emplace_back(std::move(r));
  }
  return Profile(std::move(prefs));
}

BistochasticMatrix example1_matrix(int n, const Rational& b) {
  std::vector<Rational> e(static_cast<std::size_t>(n) * n);
  for (AgentId i = 0; i < n; ++i) {
    e[i * n + i] += b;
    e[i * n + (i + 1) % n] += 1 - b;
  }
  return BistochasticMatrix(n, std::move(e));
}

bool Example1Report::all_as_expected() const {
  return std::all_of(rows.begin(), rows.end(), [](const Example1Row& r) { return r.as_expected; });
}

Example1Report repro_example1(int n, const std::vector<Rational>& bs) {
  if (n < 3) throw std::invalid_argument("example 1 needs n >= 3: with two agents pair and Pareto efficiency coincide");
  for (const auto& b : bs) {
    if (sgn(b) < 0 || b > 1) throw std::invalid_argument("b must lie in [0,1], got " + to_string(b));
  }
  const Profile profile = cyclic_profile(n);
  const BistochasticMatrix a1 = example1_matrix(n, 1);
  Example1Report report;
  report.n = n;
  for (const auto& b : bs) {
    const auto m = example1_matrix(n, b);
    const auto pair = check_sd_pair_efficient(m, profile);
    const auto pareto = check_sd_pareto_efficient(m, profile);
    Example1Row row;
    row.b = b;
    row.pair_efficient = pair.holds;
    row.pareto_efficient = pareto.holds;
    row.witness_sound = witness_is_sound(Axiom::kSdPareto, pareto, m, profile) &&
                        witness_is_sound(Axiom::kSdPair, pair, m, profile);
    const bool top = b == 1;
    if (!top) {
      row.dominated_by_a1 = sd_pareto_dominates(a1, m, profile);
      const auto* w = std::get_if<DominatingMatrix>(&pareto.witness);
      row.witness_is_a1 = w && w->matrix == a1;
    }
    row.as_expected = row.pair_efficient && row.pareto_efficient == top && row.witness_sound &&
                      (top || (row.dominated_by_a1 && row.witness_is_a1));
    report.rows.push_back(std::move(row));
  }
  return report;
}

Example2Data example2_data() {
  auto half = Rational(1, 2);
  auto rows = [](std::vector<std::vector<Rational>> r) {
    std::vector<Rational> e;
    for (auto& row : r) e.insert(e.end(), row.begin(), row.end());
    return BistochasticMatrix(4, std::move(e));
  };
  Rational o = 0;
  // a=0, b=1, c=2, d=3
  Profile profile({Preference({2, 0, 1, 3}), Preference({0, 2, 3, 1}), Preference({0, 1, 2, 3}),
                   Preference({2, 3, 0, 1})});
  return Example2Data{
      {"a", "b", "c", "d"},
      profile,
      rows({{half, half, o, o}, {o, o, half, half}, {half, half, o, o}, {o, o, half, half}}),
      rows({{o, half, half, o}, {half, o, o, half}, {half, half, o, o}, {o, o, half, half}}),
      BistochasticMatrix(DeterministicAssignment({0, 3, 1, 2})),
      BistochasticMatrix(DeterministicAssignment({1, 2, 0, 3})),
  };
}

bool Example2Report::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Example2Assertion& a) { return a.passed; });
}

Example2Report repro_example2() {
  const auto data = example2_data();
  const auto& p = data.profile;
  Example2Report report;

  report.sd_pareto = check_sd_pareto_efficient(data.a, p);
  const bool b_dominates = sd_pareto_dominates(data.b, data.a, p);
  report.assertions.push_back(
      {"A is not SD-Pareto efficient",
       std::string("checker witness ") + (witness_is_sound(Axiom::kSdPareto, report.sd_pareto, data.a, p) ? "valid" : "INVALID") +
           "; B dominates A: " + (b_dominates ? "yes" : "no"),
       !report.sd_pareto.holds && witness_is_sound(Axiom::kSdPareto, report.sd_pareto, data.a, p) && b_dominates});

  report.expost_pareto = check_expost_pareto(data.a, p);
  const auto* dec = std::get_if<Decomposition>(&report.expost_pareto.witness);
  report.assertions.push_back(
      {"A is ex-post Pareto efficient",
       dec ? std::to_string(dec->terms.size()) + "-term decomposition over Pareto-efficient assignments"
           : "no decomposition",
       report.expost_pareto.holds && witness_is_sound(Axiom::kExpostPareto, report.expost_pareto, data.a, p)});

  report.ttc_c = ttc_with_endowment(p, DeterministicAssignment({0, 3, 1, 2}));
  report.ttc_d = ttc_with_endowment(p, DeterministicAssignment({1, 2, 0, 3}));
  const bool c_ok = BistochasticMatrix(report.ttc_c) == data.c;
  const bool d_ok = BistochasticMatrix(report.ttc_d) == data.d;
  report.assertions.push_back({"TTC at endowments (a,d,b,c) and (b,c,a,d) gives C and D",
                               std::string("C ") + (c_ok ? "matches" : "differs") + ", D " + (d_ok ? "matches" : "differs"),
                               c_ok && d_ok});

  report.sd_pair_12 = check_sd_pair(data.a, p, 0, 1);
  const auto first = check_sd_pair_efficient(data.a, p);
  const auto* w = std::get_if<DominatingMatrix>(&first.witness);
  const bool first_is_12 = w && w->pair == std::pair<AgentId, AgentId>{0, 1};
  report.assertions.push_back(
      {"A is not SD-pair efficient: agents 1 and 2 can both improve",
       std::string("pair witness ") + (witness_is_sound(Axiom::kSdPair, report.sd_pair_12, data.a, p) ? "valid" : "INVALID"),
       !report.sd_pair_12.holds && witness_is_sound(Axiom::kSdPair, report.sd_pair_12, data.a, p) && first_is_12});
  return report;
}

}  // namespace ttcv
