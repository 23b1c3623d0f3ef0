#pragma once

// JSON reading and writing for profiles, domains, matrices, verdicts and
// reports. Rationals are always strings ("p/q" or "k").

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ttcv/axioms.hpp"
#include "ttcv/harness.hpp"
#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"
#include "ttcv/ttc.hpp"

namespace ttcv::io {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws InputError naming the source, line and column on malformed JSON.
json parse_json(std::string_view text, const std::string& source);
json read_json_file(const std::string& path);

/// Internal object k is the user's object names[k]; agent k owns it.
struct Labels {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }
  /// Throws InputError for unknown names.
  ObjectId index_of(std::string_view name) const;
};

/// x0..x{n-1}.
Labels default_labels(int n);

/// "objects" when present, else names in first-seen order across "prefs".
std::vector<std::string> object_names(const json& doc);

/// Labels for agents owning `objects` in order, or `endowment` when given
/// (a permutation of the same names).
Labels make_labels(const std::vector<std::string>& objects, const std::optional<std::vector<std::string>>& endowment);

std::vector<std::string> split_names(std::string_view csv);

/// Array of names or a "c,a,b,d" string.
Preference read_preference(const json& value, const Labels& labels);
Profile read_profile(const json& doc, const Labels& labels);
Domain read_domain(const json& doc, const Labels& labels);
/// Columns follow the matrix's own "objects" if present, else `columns`.
BistochasticMatrix read_matrix(const json& doc, const std::vector<std::string>& columns, const Labels& labels);

json preference_json(const Preference& p, const Labels& labels);
json profile_json(const Profile& p, const Labels& labels);
json domain_json(const Domain& d, const Labels& labels);
json matrix_json(const BistochasticMatrix& m, const Labels& labels);
json assignment_json(const DeterministicAssignment& a, const Labels& labels);
json decomposition_json(const Decomposition& d, const Labels& labels);
json verdict_json(Axiom axiom, const AxiomVerdict& v, const Labels& labels);
json trace_json(const TtcTrace& trace, const Labels& labels);

json theorem_report_json(const TheoremReport& r, const Labels& labels, bool include_timing);
json uniqueness_report_json(const UniquenessReport& r, const Labels& labels);
json example1_report_json(const Example1Report& r);
json example2_report_json(const Example2Report& r);

}  // namespace ttcv::io
