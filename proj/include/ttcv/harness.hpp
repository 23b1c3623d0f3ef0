#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttcv/axioms.hpp"
#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"
#include "ttcv/rule.hpp"

namespace ttcv {

/// Raised when a domain lacks the FPT/FTT condition a theorem needs.
class DomainConditionError : public std::invalid_argument {
 public:
  DomainConditionError(const std::string& what, std::vector<ObjectId> missing)
      : std::invalid_argument(what), missing_(std::move(missing)) {}
  /// The ordered pair or triple no preference puts on top.
  const std::vector<ObjectId>& missing() const { return missing_; }

 private:
  std::vector<ObjectId> missing_;
};

/// Raised when a sweep exceeds the configured size cap.
class SizeCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Axioms checked for theorem 1..4, in report order.
std::vector<Axiom> theorem_axioms(int theorem);

struct AxiomTally {
  Axiom axiom;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool holds() const { return violations == 0; }
};

struct Counterexample {
  std::uint64_t profile_index;
  Profile profile;
  Axiom axiom;
  AxiomVerdict verdict;
};

struct TheoremReport {
  int theorem = 0;
  std::string rule;
  std::string domain;  // descriptor, e.g. "minimal-ftt(4)"
  int n = 0;
  std::size_t domain_size = 0;
  std::uint64_t profiles_checked = 0;
  std::vector<AxiomTally> verdicts;
  std::uint64_t counterexample_count = 0;
  std::vector<Counterexample> counterexamples;  // first few, in profile order
  double wall_seconds = 0;

  bool all_hold() const { return counterexample_count == 0; }
};

struct SweepOptions {
  int jobs = 1;
  int max_n = 4;
  std::uint64_t max_profiles = 331776;  // 24^4
  bool ignore_caps = false;
  std::size_t max_counterexamples = 20;
  int max_expost_n = 6;
};

/// Describes generated domains by name, anything else by size.
std::string describe_domain(const Domain& d);

/// Runs theorem `theorem`'s axiom bundle on `rule` over every profile of
/// domain^n. Throws DomainConditionError or SizeCapError before sweeping.
TheoremReport verify_rule_axioms(const AssignmentRule& rule, const Domain& domain, int theorem,
                                 const SweepOptions& options = {});
TheoremReport verify_ttc_axioms(const Domain& domain, int theorem, const SweepOptions& options = {});

struct UniquenessReport {
  std::string domain;
  std::uint64_t profiles = 0;
  std::uint64_t rules_checked = 0;
  std::vector<std::vector<DeterministicAssignment>> survivors;  // outcome per profile
  std::vector<DeterministicAssignment> ttc_outcomes;
  bool unique_and_ttc() const { return survivors.size() == 1 && survivors.front() == ttc_outcomes; }
};

/// Enumerates every deterministic rule on domain^2 and keeps those that are
/// SD-top-strategy-proof, individually rational and pair efficient.
/// Throws std::invalid_argument unless n == 2.
UniquenessReport uniqueness_n2(const Domain& domain);

/// Agent i ranks x_i, x_{i+1}, ... cyclically.
Profile cyclic_profile(int n);
/// A^b: b on each agent's endowment, 1-b on the next object.
BistochasticMatrix example1_matrix(int n, const Rational& b);

struct Example1Row {
  Rational b;
  bool pair_efficient = false;
  bool pareto_efficient = false;
  bool witness_sound = false;
  bool dominated_by_a1 = false;  // meaningful for b < 1
  bool witness_is_a1 = false;    // the LP's dominating matrix is A^1
  bool as_expected = false;
};

struct Example1Report {
  int n = 0;
  std::vector<Example1Row> rows;
  bool all_as_expected() const;
};

/// Throws std::invalid_argument for n < 3 or b outside [0,1].
Example1Report repro_example1(int n, const std::vector<Rational>& bs);

struct Example2Assertion {
  std::string name;
  std::string detail;
  bool passed = false;
};

struct Example2Data {
  std::vector<std::string> objects;  // a, b, c, d
  Profile profile;
  BistochasticMatrix a, b, c, d;
};

Example2Data example2_data();

struct Example2Report {
  std::vector<Example2Assertion> assertions;
  AxiomVerdict sd_pareto;     // of A
  AxiomVerdict expost_pareto; // of A
  AxiomVerdict sd_pair_12;    // of A at agents 0,1
  DeterministicAssignment ttc_c, ttc_d;
  bool all_passed() const;
};

Example2Report repro_example2();

}  // namespace ttcv
