// ttc-verify: TTC runs, axiom checks, decompositions, domain tooling,
// theorem sweeps and example reproduction. JSON on stdout (or --out),
// diagnostics on stderr. Exit 0 = success/holds, 1 = fails, 2 = input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttcv/axioms.hpp"
#include "ttcv/harness.hpp"
#include "ttcv/io.hpp"
#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"
#include "ttcv/rule.hpp"
#include "ttcv/ttc.hpp"

namespace {

using ttcv::io::json;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

struct Output {
  std::string path;

  void emit(const json& doc) const {
    if (path.empty()) {
      std::cout << doc.dump(2) << '\n';
      return;
    }
    std::ofstream out(path);
    if (!out) throw ttcv::io::InputError("cannot write " + path);
    out << doc.dump(2) << '\n';
  }
};

std::optional<int> env_max_n() {
  const char* v = std::getenv("TTC_VERIFY_MAX_N");
  if (!v || !*v) return std::nullopt;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw ttcv::io::InputError(std::string("TTC_VERIFY_MAX_N must be an integer, got \"") + v + "\"");
  }
}

std::optional<std::vector<std::string>> endowment_arg(const std::string& csv) {
  if (csv.empty()) return std::nullopt;
  return ttcv::io::split_names(csv);
}

// Profile plus the labels that map internal objects back to user names.
struct LoadedProfile {
  std::vector<std::string> objects;  // user order
  ttcv::io::Labels labels;
  ttcv::Profile profile;
};

LoadedProfile load_profile(const std::string& path, const std::string& endowment) {
  auto doc = ttcv::io::read_json_file(path);
  LoadedProfile lp;
  lp.objects = ttcv::io::object_names(doc);
  lp.labels = ttcv::io::make_labels(lp.objects, endowment_arg(endowment));
  lp.profile = ttcv::io::read_profile(doc, lp.labels);
  return lp;
}

std::pair<ttcv::Domain, ttcv::io::Labels> load_domain(const std::string& path) {
  auto doc = ttcv::io::read_json_file(path);
  auto labels = ttcv::io::make_labels(ttcv::io::object_names(doc), std::nullopt);
  return {ttcv::io::read_domain(doc, labels), labels};
}

ttcv::Domain generate_domain(const std::string& kind, int n) {
  if (kind == "minimal-fpt") return ttcv::minimal_fpt(n);
  if (kind == "minimal-ftt") return ttcv::minimal_ftt(n);
  if (kind == "unrestricted") return ttcv::unrestricted_domain(n);
  throw ttcv::io::InputError("unknown domain generator \"" + kind + "\"");
}

std::string describe_missing(const std::vector<ttcv::ObjectId>& missing, const ttcv::io::Labels& labels) {
  std::string s;
  for (std::size_t k = 0; k < missing.size(); ++k) {
    if (k) s += ",";
    s += labels.names.at(missing[k]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top Trading Cycles and assignment-axiom verifier"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--out", out.path, "Write the JSON result to FILE instead of stdout");

  // ttc
  auto* ttc_cmd = app.add_subcommand("ttc", "Run Top Trading Cycles on a profile");
  std::string profile_path, endowment;
  bool want_trace = false;
  ttc_cmd->add_option("--profile", profile_path, "Profile JSON")->required();
  ttc_cmd->add_option("--endowment", endowment, "Endowment, one object per agent (e.g. a,d,b,c)");
  ttc_cmd->add_flag("--trace", want_trace, "Include the round-by-round trace");

  // check
  auto* check_cmd = app.add_subcommand("check", "Check one axiom");
  std::string axiom_name, matrix_path, rule_name, domain_path;
  check_cmd->add_option("--axiom", axiom_name, "sd-pareto|sd-pair|sd-ir|ep-pareto|ep-pair|ep-ir|sd-sp|sd-top-sp")
      ->required();
  check_cmd->add_option("--matrix", matrix_path, "Assignment matrix JSON");
  check_cmd->add_option("--profile", profile_path, "Profile JSON");
  check_cmd->add_option("--endowment", endowment, "Endowment, one object per agent");
  check_cmd->add_option("--rule", rule_name, "Rule for sd-sp/sd-top-sp (ttc)");
  check_cmd->add_option("--domain", domain_path, "Domain JSON for sd-sp/sd-top-sp");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Birkhoff or constrained decomposition");
  std::string within;
  decompose_cmd->add_option("--matrix", matrix_path, "Assignment matrix JSON")->required();
  decompose_cmd->add_option("--profile", profile_path, "Profile JSON (needed with --within)");
  decompose_cmd->add_option("--endowment", endowment, "Endowment, one object per agent");
  decompose_cmd->add_option("--within", within, "Restrict to ir|pareto|pair deterministic assignments");

  // domain
  auto* domain_cmd = app.add_subcommand("domain", "Generate or inspect preference domains");
  std::string gen;
  int n = 0;
  domain_cmd->add_option("--gen", gen, "minimal-fpt|minimal-ftt|unrestricted");
  domain_cmd->add_option("--n", n, "Number of objects");
  domain_cmd->add_option("--check", domain_path, "Domain JSON to test for FPT/FTT");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Sweep a theorem's axiom bundle for TTC over a domain");
  int theorem = 0, jobs = 1;
  bool timing = false, ignore_caps = false;
  verify_cmd->add_option("--theorem", theorem, "1|2|3|4")->required()->check(CLI::Range(1, 4));
  verify_cmd->add_option("--domain", domain_path, "Domain JSON");
  verify_cmd->add_option("--gen", gen, "Generate the domain instead: minimal-fpt|minimal-ftt|unrestricted");
  verify_cmd->add_option("--n", n, "Number of objects for --gen");
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--timing", timing, "Include wall time in the report");
  verify_cmd->add_flag("--ignore-caps", ignore_caps, "Sweep beyond the default size caps");

  // repro
  auto* repro_cmd = app.add_subcommand("repro", "Reproduce a worked example");
  repro_cmd->require_subcommand(1);
  auto* ex1_cmd = repro_cmd->add_subcommand("example1", "Cyclic profile with the A^b family");
  int ex1_n = 3;
  std::string bs_csv = "0,1/4,1/2,3/4,1";
  ex1_cmd->add_option("--n", ex1_n, "Number of agents (>= 3)");
  ex1_cmd->add_option("--b", bs_csv, "Comma-separated values of b in [0,1]");
  auto* ex2_cmd = repro_cmd->add_subcommand("example2", "Ex-post but not SD-Pareto efficient assignment");

  // uniqueness
  auto* uniq_cmd = app.add_subcommand("uniqueness", "Exhaustive rule enumeration at n = 2");
  int uniq_n = 2;
  uniq_cmd->add_option("--n", uniq_n, "Must be 2");
  uniq_cmd->add_option("--domain", domain_path, "Domain JSON (default: unrestricted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    const auto max_n = env_max_n();
    ttcv::CheckOptions check_options;
    if (max_n) check_options.max_expost_n = *max_n;

    if (*ttc_cmd) {
      auto lp = load_profile(profile_path, endowment);
      ttcv::TtcTrace trace;
      auto assignment = ttcv::ttc(lp.profile, want_trace ? &trace : nullptr);
      json doc = {{"labels", lp.labels.names},
                  {"assignment", ttcv::io::assignment_json(assignment, lp.labels)},
                  {"matrix", ttcv::io::matrix_json(ttcv::BistochasticMatrix(assignment), lp.labels)}};
      if (want_trace) doc["trace"] = ttcv::io::trace_json(trace, lp.labels);
      out.emit(doc);
      return kHolds;
    }

    if (*check_cmd) {
      auto axiom = ttcv::parse_axiom(axiom_name);
      if (!axiom) throw ttcv::io::InputError("unknown axiom \"" + axiom_name + "\"");
      if (*axiom == ttcv::Axiom::kSdSp || *axiom == ttcv::Axiom::kSdTopSp) {
        if (rule_name != "ttc") throw ttcv::io::InputError("--rule ttc is required for " + axiom_name);
        if (domain_path.empty()) throw ttcv::io::InputError("--domain is required for " + axiom_name);
        auto [domain, labels] = load_domain(domain_path);
        const ttcv::SweepOptions caps;
        const int cap = max_n.value_or(caps.max_n);
        if (domain.n() > cap || ttcv::ProfileSpace(domain, domain.n()).size() > caps.max_profiles) {
          throw ttcv::io::InputError("domain exceeds the size cap n <= " + std::to_string(cap));
        }
        auto rule = ttcv::ttc_rule(domain);
        auto v = *axiom == ttcv::Axiom::kSdSp ? ttcv::check_sd_sp(rule, domain) : ttcv::check_sd_top_sp(rule, domain);
        json doc = ttcv::io::verdict_json(*axiom, v, labels);
        doc["rule"] = rule.name();
        doc["labels"] = labels.names;
        out.emit(doc);
        return v.holds ? kHolds : kFails;
      }
      if (matrix_path.empty() || profile_path.empty()) {
        throw ttcv::io::InputError("--matrix and --profile are required for " + axiom_name);
      }
      auto lp = load_profile(profile_path, endowment);
      auto m = ttcv::io::read_matrix(ttcv::io::read_json_file(matrix_path), lp.objects, lp.labels);
      auto v = ttcv::check_matrix_axiom(*axiom, m, lp.profile, check_options);
      json doc = ttcv::io::verdict_json(*axiom, v, lp.labels);
      doc["labels"] = lp.labels.names;
      out.emit(doc);
      return v.holds ? kHolds : kFails;
    }

    if (*decompose_cmd) {
      std::optional<LoadedProfile> lp;
      std::vector<std::string> columns;
      ttcv::io::Labels labels;
      auto mdoc = ttcv::io::read_json_file(matrix_path);
      if (!profile_path.empty()) {
        lp = load_profile(profile_path, endowment);
        columns = lp->objects;
        labels = lp->labels;
      } else {
        columns = mdoc.contains("objects") ? ttcv::io::object_names(mdoc)
                                           : ttcv::io::default_labels(static_cast<int>(mdoc.at("rows").size())).names;
        labels = ttcv::io::make_labels(columns, endowment_arg(endowment));
      }
      auto m = ttcv::io::read_matrix(mdoc, columns, labels);
      if (within.empty()) {
        auto d = ttcv::birkhoff_decompose(m);
        out.emit({{"labels", labels.names}, {"feasible", true}, {"terms", ttcv::io::decomposition_json(d, labels)}});
        return kHolds;
      }
      if (!lp) throw ttcv::io::InputError("--within needs --profile");
      ttcv::Axiom ax = within == "ir"       ? ttcv::Axiom::kExpostIr
                       : within == "pareto" ? ttcv::Axiom::kExpostPareto
                       : within == "pair"   ? ttcv::Axiom::kExpostPair
                                            : throw ttcv::io::InputError("--within must be ir, pareto or pair");
      auto v = ttcv::check_matrix_axiom(ax, m, lp->profile, check_options);
      json doc = ttcv::io::verdict_json(ax, v, labels);
      doc["labels"] = labels.names;
      doc["feasible"] = v.holds;
      out.emit(doc);
      return v.holds ? kHolds : kFails;
    }

    if (*domain_cmd) {
      if (!gen.empty()) {
        auto d = generate_domain(gen, n);
        out.emit(ttcv::io::domain_json(d, ttcv::io::default_labels(n)));
        return kHolds;
      }
      if (domain_path.empty()) throw ttcv::io::InputError("domain needs --gen or --check");
      auto [d, labels] = load_domain(domain_path);
      json doc = {{"n", d.n()}, {"size", d.size()}, {"labels", labels.names}};
      auto pair = ttcv::missing_top_pair(d);
      doc["fpt"] = !pair.has_value();
      if (pair) doc["missing_pair"] = {labels.names[pair->first], labels.names[pair->second]};
      if (d.n() >= 3) {
        auto triple = ttcv::missing_top_triple(d);
        doc["ftt"] = !triple.has_value();
        if (triple) doc["missing_triple"] = {labels.names[(*triple)[0]], labels.names[(*triple)[1]], labels.names[(*triple)[2]]};
      } else {
        doc["ftt"] = nullptr;
      }
      out.emit(doc);
      return kHolds;
    }

    if (*verify_cmd) {
      std::optional<ttcv::Domain> domain;
      ttcv::io::Labels labels;
      if (!domain_path.empty()) {
        auto loaded = load_domain(domain_path);
        domain = std::move(loaded.first);
        labels = std::move(loaded.second);
      } else if (!gen.empty()) {
        domain = generate_domain(gen, n);
        labels = ttcv::io::default_labels(n);
      } else {
        throw ttcv::io::InputError("verify needs --domain or --gen");
      }
      ttcv::SweepOptions opts;
      opts.jobs = jobs;
      opts.ignore_caps = ignore_caps;
      if (max_n) {
        opts.max_n = opts.max_expost_n = *max_n;
      }
      if (ignore_caps) std::cerr << "warning: size caps disabled; the sweep may take very long\n";
      try {
        auto report = ttcv::verify_ttc_axioms(*domain, theorem, opts);
        out.emit(ttcv::io::theorem_report_json(report, labels, timing));
        if (timing) std::cerr << "swept " << report.profiles_checked << " profiles in " << report.wall_seconds << " s\n";
        return report.all_hold() ? kHolds : kFails;
      } catch (const ttcv::DomainConditionError& e) {
        if (e.missing().empty()) throw;
        throw ttcv::io::InputError(std::string("theorem ") + std::to_string(theorem) + " needs an " +
                                   (e.missing().size() == 2 ? "FPT" : "FTT") +
                                   " domain; no preference starts with " + describe_missing(e.missing(), labels));
      }
    }

    if (*repro_cmd) {
      if (*ex1_cmd) {
        std::vector<ttcv::Rational> bs;
        for (const auto& s : ttcv::io::split_names(bs_csv)) bs.push_back(ttcv::parse_rational(s));
        auto report = ttcv::repro_example1(ex1_n, bs);
        out.emit(ttcv::io::example1_report_json(report));
        return report.all_as_expected() ? kHolds : kFails;
      }
      if (*ex2_cmd) {
        auto report = ttcv::repro_example2();
        out.emit(ttcv::io::example2_report_json(report));
        return report.all_passed() ? kHolds : kFails;
      }
    }

    if (*uniq_cmd) {
      if (uniq_n != 2) throw ttcv::io::InputError("exhaustive uniqueness is only feasible at n = 2");
      ttcv::Domain domain = ttcv::unrestricted_domain(2);
      ttcv::io::Labels labels = ttcv::io::default_labels(2);
      if (!domain_path.empty()) {
        auto loaded = load_domain(domain_path);
        domain = std::move(loaded.first);
        labels = std::move(loaded.second);
      }
      auto report = ttcv::uniqueness_n2(domain);
      out.emit(ttcv::io::uniqueness_report_json(report, labels));
      return report.unique_and_ttc() ? kHolds : kFails;
    }
  } catch (const ttcv::io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
