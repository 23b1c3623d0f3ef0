#include "ttcv/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ttcv::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing \"") + key + "\"");
  return doc.at(key);
}

std::string name_of(const json& v) {
  if (!v.is_string()) throw InputError("object names must be strings, got " + v.dump());
  return v.get<std::string>();
}

Rational read_rational(const json& v) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("rationals must be strings like \"1/2\" or integers, got " + v.dump());
}

json rational_json(const Rational& r) { return to_string(r); }

json agent_pair(AgentId i, AgentId j) { return json::array({i, j}); }

}  // namespace

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

ObjectId Labels::index_of(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("unknown object \"" + std::string(name) + "\"");
  return static_cast<ObjectId>(it - names.begin());
}

Labels default_labels(int n) {
  Labels l;
  for (int k = 0; k < n; ++k) l.names.push_back("x" + std::to_string(k));
  return l;
}

std::vector<std::string> object_names(const json& doc) {
  std::vector<std::string> names;
  if (doc.is_object() && doc.contains("objects")) {
    for (const auto& v : doc.at("objects")) names.push_back(name_of(v));
    return names;
  }
  for (const auto& pref : require(doc, "prefs")) {
    std::vector<std::string> items;
    if (pref.is_string()) {
      items = split_names(pref.get<std::string>());
    } else {
      for (const auto& v : pref) items.push_back(name_of(v));
    }
    for (auto& s : items) {
      if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
    }
  }
  return names;
}

Labels make_labels(const std::vector<std::string>& objects, const std::optional<std::vector<std::string>>& endowment) {
  std::vector<std::string> sorted = objects;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("duplicate object names");
  if (!endowment) return Labels{objects};
  std::vector<std::string> e = *endowment;
  std::sort(e.begin(), e.end());
  if (e != sorted) throw InputError("endowment must list every object exactly once");
  return Labels{*endowment};
}

std::vector<std::string> split_names(std::string_view csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    auto item = csv.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw InputError("empty object name in \"" + std::string(csv) + "\"");
    out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

Preference read_preference(const json& value, const Labels& labels) {
  std::vector<std::string> items;
  if (value.is_string()) {
    items = split_names(value.get<std::string>());
  } else if (value.is_array()) {
    for (const auto& v : value) items.push_back(name_of(v));
  } else {
    throw InputError("a preference is an array of names or a comma-separated string");
  }
  if (static_cast<int>(items.size()) != labels.size()) {
    throw InputError("preference lists " + std::to_string(items.size()) + " objects, expected " +
                     std::to_string(labels.size()));
  }
  std::vector<ObjectId> ranking;
  for (const auto& s : items) ranking.push_back(labels.index_of(s));
  try {
    return Preference(std::move(ranking));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

namespace {

void check_n(const json& doc, int expected) {
  if (doc.is_object() && doc.contains("n") && doc.at("n") != expected) {
    throw InputError("\"n\" is " + doc.at("n").dump() + " but the document has " + std::to_string(expected) +
                     " objects");
  }
}

}  // namespace

Profile read_profile(const json& doc, const Labels& labels) {
  check_n(doc, labels.size());
  std::vector<Preference> prefs;
  for (const auto& v : require(doc, "prefs")) prefs.push_back(read_preference(v, labels));
  if (static_cast<int>(prefs.size()) != labels.size()) {
    throw InputError("profile has " + std::to_string(prefs.size()) + " agents but " + std::to_string(labels.size()) +
                     " objects");
  }
  return Profile(std::move(prefs));
}

Domain read_domain(const json& doc, const Labels& labels) {
  check_n(doc, labels.size());
  std::vector<Preference> prefs;
  for (const auto& v : require(doc, "prefs")) prefs.push_back(read_preference(v, labels));
  try {
    return Domain(labels.size(), std::move(prefs));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

BistochasticMatrix read_matrix(const json& doc, const std::vector<std::string>& columns, const Labels& labels) {
  std::vector<std::string> cols = columns;
  if (doc.is_object() && doc.contains("objects")) {
    cols.clear();
    for (const auto& v : doc.at("objects")) cols.push_back(name_of(v));
  }
  const int n = labels.size();
  const auto& rows = require(doc, "rows");
  check_n(doc, n);
  if (static_cast<int>(cols.size()) != n || static_cast<int>(rows.size()) != n) {
    throw InputError("matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  std::vector<Rational> entries(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) entries[i * n + labels.index_of(cols[c])] = read_rational(rows[i][c]);
  }
  try {
    return BistochasticMatrix(n, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json preference_json(const Preference& p, const Labels& labels) {
  json a = json::array();
  for (ObjectId x : p.ranking()) a.push_back(labels.names[x]);
  return a;
}

json profile_json(const Profile& p, const Labels& labels) {
  json prefs = json::array();
  for (const auto& pref : p.prefs()) prefs.push_back(preference_json(pref, labels));
  return {{"n", p.size()}, {"objects", labels.names}, {"prefs", prefs}};
}

json domain_json(const Domain& d, const Labels& labels) {
  json prefs = json::array();
  for (const auto& pref : d.prefs()) prefs.push_back(preference_json(pref, labels));
  return {{"n", d.n()}, {"objects", labels.names}, {"prefs", prefs}};
}

json matrix_json(const BistochasticMatrix& m, const Labels& labels) {
  json rows = json::array();
  for (AgentId i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (const auto& v : m.row(i)) row.push_back(rational_json(v));
    rows.push_back(row);
  }
  return {{"n", m.size()}, {"objects", labels.names}, {"rows", rows}};
}

json assignment_json(const DeterministicAssignment& a, const Labels& labels) {
  json names = json::array();
  for (ObjectId x : a.objects()) names.push_back(labels.names[x]);
  return {{"perm", a.objects()}, {"objects", names}};
}

json decomposition_json(const Decomposition& d, const Labels& labels) {
  json terms = json::array();
  for (const auto& t : d.terms) {
    json term = assignment_json(t.perm, labels);
    term["weight"] = rational_json(t.weight);
    terms.push_back(term);
  }
  return terms;
}

json verdict_json(Axiom axiom, const AxiomVerdict& v, const Labels& labels) {
  json out = {{"axiom", axiom_name(axiom)}, {"holds", v.holds}};
  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, ViolatingAgent>) {
          out["witness"] = {{"kind", "violating-agent"}, {"agent", w.agent}};
        } else if constexpr (std::is_same_v<W, DominatingMatrix>) {
          out["witness"] = {{"kind", "dominating-matrix"}, {"matrix", matrix_json(w.matrix, labels)}};
          if (w.pair) out["witness"]["pair"] = agent_pair(w.pair->first, w.pair->second);
        } else if constexpr (std::is_same_v<W, Manipulation>) {
          out["witness"] = {{"kind", "manipulation"},
                            {"profile", profile_json(w.profile, labels)},
                            {"agent", w.agent},
                            {"misreport", preference_json(w.misreport, labels)}};
        } else if constexpr (std::is_same_v<W, Decomposition>) {
          out["witness"] = {{"kind", "decomposition"}, {"terms", decomposition_json(w, labels)}};
        } else if constexpr (std::is_same_v<W, SeparatingHyperplane>) {
          json coeffs = json::array();
          const int n = labels.size();
          for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(rational_json(w.coefficients[i * n + j]));
            coeffs.push_back(row);
          }
          out["witness"] = {{"kind", "separating-hyperplane"},
                            {"coefficients", coeffs},
                            {"offset", rational_json(w.offset)}};
        }
      },
      v.witness);
  return out;
}

json trace_json(const TtcTrace& trace, const Labels& labels) {
  json rounds = json::array();
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const auto& round = trace.rounds[r];
    json edges = json::array(), assigned = json::array();
    for (auto [i, j] : round.edges) edges.push_back(agent_pair(i, j));
    for (auto [i, x] : round.assigned) assigned.push_back({{"agent", i}, {"object", labels.names[x]}});
    rounds.push_back({{"round", r + 1},
                      {"remaining", round.remaining},
                      {"edges", edges},
                      {"cycle", round.cycle},
                      {"assigned", assigned}});
  }
  return rounds;
}

json theorem_report_json(const TheoremReport& r, const Labels& labels, bool include_timing) {
  json verdicts = json::array();
  for (const auto& t : r.verdicts) {
    verdicts.push_back({{"axiom", axiom_name(t.axiom)},
                        {"checked", t.checked},
                        {"violations", t.violations},
                        {"holds", t.holds()}});
  }
  json ces = json::array();
  for (const auto& ce : r.counterexamples) {
    ces.push_back({{"profile_index", ce.profile_index},
                   {"profile", profile_json(ce.profile, labels)},
                   {"verdict", verdict_json(ce.axiom, ce.verdict, labels)}});
  }
  json out = {{"theorem", r.theorem},
              {"rule", r.rule},
              {"domain", r.domain},
              {"n", r.n},
              {"domain_size", r.domain_size},
              {"profiles_checked", r.profiles_checked},
              {"verdicts", verdicts},
              {"all_hold", r.all_hold()},
              {"counterexample_count", r.counterexample_count},
              {"counterexamples", ces}};
  if (include_timing) out["wall_seconds"] = r.wall_seconds;
  return out;
}

json uniqueness_report_json(const UniquenessReport& r, const Labels& labels) {
  auto outcomes = [&](const std::vector<DeterministicAssignment>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(assignment_json(p, labels));
    return a;
  };
  json survivors = json::array();
  for (const auto& s : r.survivors) survivors.push_back(outcomes(s));
  return {{"domain", r.domain},
          {"profiles", r.profiles},
          {"rules_checked", r.rules_checked},
          {"axioms", {"sd-top-sp", "sd-ir", "sd-pair"}},
          {"survivor_count", r.survivors.size()},
          {"survivors", survivors},
          {"ttc", outcomes(r.ttc_outcomes)},
          {"unique_and_ttc", r.unique_and_ttc()}};
}

json example1_report_json(const Example1Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"b", rational_json(row.b)},
                    {"sd_pair_efficient", row.pair_efficient},
                    {"sd_pareto_efficient", row.pareto_efficient},
                    {"witnesses_valid", row.witness_sound},
                    {"dominated_by_A1", row.dominated_by_a1},
                    {"witness_is_A1", row.witness_is_a1},
                    {"as_expected", row.as_expected}});
  }
  return {{"example", 1}, {"n", r.n}, {"rows", rows}, {"all_as_expected", r.all_as_expected()}};
}

json example2_report_json(const Example2Report& r) {
  const Labels labels{{"a", "b", "c", "d"}};
  json assertions = json::array();
  for (const auto& a : r.assertions) {
    assertions.push_back({{"assertion", a.name}, {"detail", a.detail}, {"passed", a.passed}});
  }
  return {{"example", 2},
          {"assertions", assertions},
          {"all_passed", r.all_passed()},
          {"sd_pareto", verdict_json(Axiom::kSdPareto, r.sd_pareto, labels)},
          {"expost_pareto", verdict_json(Axiom::kExpostPareto, r.expost_pareto, labels)},
          {"sd_pair_agents_1_2", verdict_json(Axiom::kSdPair, r.sd_pair_12, labels)},
          {"ttc_endowment_adbc", assignment_json(r.ttc_c, labels)},
          {"ttc_endowment_bcad", assignment_json(r.ttc_d, labels)}};
}

}  // namespace ttcv::io
