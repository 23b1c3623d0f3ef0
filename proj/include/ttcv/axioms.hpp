#pragma once

// Decision procedures for the efficiency, rationality and incentive axioms.
// Every negative verdict carries a witness that can be re-checked
// independently; positive ex-post verdicts carry the decomposition.
//
// Strict dominance is compiled into max-slack LPs: an assignment is
// dominated iff the LP optimum of total cumulative slack is positive.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"
#include "ttcv/rule.hpp"

namespace ttcv {

enum class Axiom { kSdIr, kSdPareto, kSdPair, kExpostIr, kExpostPareto, kExpostPair, kSdTopSp, kSdSp };

/// CLI names: sd-ir, sd-pareto, sd-pair, ep-ir, ep-pareto, ep-pair, sd-top-sp, sd-sp.
std::string axiom_name(Axiom a);
std::optional<Axiom> parse_axiom(std::string_view name);

struct ViolatingAgent {
  AgentId agent;
};

struct DominatingMatrix {
  BistochasticMatrix matrix;
  std::optional<std::pair<AgentId, AgentId>> pair;  // set for pair domination
};

struct Manipulation {
  Profile profile;
  AgentId agent;
  Preference misreport;
};

using Witness =
    std::variant<std::monostate, ViolatingAgent, DominatingMatrix, Manipulation, Decomposition, SeparatingHyperplane>;

struct AxiomVerdict {
  bool holds = true;
  Witness witness;
};

// Memo tables for bulk checking. Entries are keyed by exactly the inputs the
// underlying LP reads, so reuse is exact.
struct CheckCache {
  std::unordered_map<std::string, std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>>> pair;
  std::unordered_map<std::string, ConstrainedDecomposition> decompose;
};

struct CheckOptions {
  int max_expost_n = 6;  // ex-post checks enumerate all n! assignments
  CheckCache* cache = nullptr;
};

// Deterministic axioms.
bool det_individually_rational(const DeterministicAssignment& perm, const Profile& profile);
/// Exhaustive scan over all n! assignments.
bool det_pareto_efficient(const DeterministicAssignment& perm, const Profile& profile);
bool det_pair_efficient(const DeterministicAssignment& perm, const Profile& profile);

// Dominance relations used by witnesses.
bool sd_pareto_dominates(const BistochasticMatrix& by, const BistochasticMatrix& m, const Profile& profile);
/// Rows outside {i,j} equal; both i and j strictly better off.
bool sd_pair_dominates(const BistochasticMatrix& by, const BistochasticMatrix& m, const Profile& profile, AgentId i,
                       AgentId j);

/// New rows for agents i and j that both strictly SD-improve while keeping
/// their combined column mass, or nullopt if none exist.
std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> pair_improvement(
    std::span<const Rational> row_i, std::span<const Rational> row_j, const Preference& pref_i,
    const Preference& pref_j);

AxiomVerdict check_sd_ir(const BistochasticMatrix& m, const Profile& profile);
AxiomVerdict check_sd_pareto_efficient(const BistochasticMatrix& m, const Profile& profile);
/// Pair (i,j) only.
AxiomVerdict check_sd_pair(const BistochasticMatrix& m, const Profile& profile, AgentId i, AgentId j,
                           const CheckOptions& options = {});
/// Every pair, lexicographically; the witness names the first dominated pair.
AxiomVerdict check_sd_pair_efficient(const BistochasticMatrix& m, const Profile& profile,
                                     const CheckOptions& options = {});

// Ex-post axioms: decomposition within the deterministic assignments that
// satisfy the corresponding deterministic axiom. Throw std::invalid_argument
// for n above options.max_expost_n.
AxiomVerdict check_expost_ir(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options = {});
AxiomVerdict check_expost_pareto(const BistochasticMatrix& m, const Profile& profile,
                                 const CheckOptions& options = {});
AxiomVerdict check_expost_pair(const BistochasticMatrix& m, const Profile& profile, const CheckOptions& options = {});

// Rule-level incentive axioms over domain^n; misreports range over the domain.
AxiomVerdict check_sd_top_sp(const AssignmentRule& rule, const Domain& domain);
AxiomVerdict check_sd_sp(const AssignmentRule& rule, const Domain& domain);
/// Same checks restricted to truthful profiles with index in [begin, end).
AxiomVerdict check_sd_top_sp(const RuleTable& table, const ProfileSpace& space, std::uint64_t begin,
                             std::uint64_t end);
AxiomVerdict check_sd_sp(const RuleTable& table, const ProfileSpace& space, std::uint64_t begin, std::uint64_t end);

/// Cross-check: no cycle in the object relation "x preferred to y by some
/// agent holding part of y".
bool ordinal_efficiency_acyclic(const BistochasticMatrix& m, const Profile& profile);

/// Dispatches the matrix-level axioms (not the rule-level SP axioms).
AxiomVerdict check_matrix_axiom(Axiom axiom, const BistochasticMatrix& m, const Profile& profile,
                                const CheckOptions& options = {});

/// Re-validates a matrix-level verdict's witness against the definitions.
bool witness_is_sound(Axiom axiom, const AxiomVerdict& verdict, const BistochasticMatrix& m, const Profile& profile);
/// Re-validates a manipulation by evaluating the rule at both profiles.
bool manipulation_is_sound(const AssignmentRule& rule, const Manipulation& w, bool top_only);

}  // namespace ttcv
