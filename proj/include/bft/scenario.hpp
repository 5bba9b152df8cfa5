#pragma once

// Scenario files: a frame, named bbas, and optional named conditioning
// events, as JSON:
//
//   {
//     "frame": { "atoms": ["F", "E", "N"],
//                "model": "shafer" | "free" | { "empty": ["a&b", ...] } },
//     "bbas":  { "m1": [ { "expr": "F", "mass": 0.2 },
//                        { "expr": "F|E", "mass": "2/7" }, ... ] },
//     "events": { "truth": "F|E" }            // optional
//   }
//
// Masses are JSON numbers or exact-rational "p/q" strings, converted on
// load.  check_scenario collects every problem it finds; load_scenario
// demands a fully valid file.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bft/conditioning.hpp"
#include "bft/expr.hpp"
#include "bft/fusion.hpp"

namespace bft {

struct Scenario {
  FramePtr frame;
  std::map<std::string, MassFunction> bbas;
  std::map<std::string, SetElement> events;
};

struct ScenarioIssue {
  std::string where;  // JSON path of the offending field
  std::string message;
};

class ScenarioIoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ScenarioValidationError : public std::runtime_error {
 public:
  ScenarioValidationError(std::string message, std::vector<ScenarioIssue> issues)
      : std::runtime_error(std::move(message)), issues_(std::move(issues)) {}

  const std::vector<ScenarioIssue>& issues() const { return issues_; }

 private:
  std::vector<ScenarioIssue> issues_;
};

struct ScenarioCheck {
  std::optional<Scenario> scenario;  // present only when issues is empty
  std::vector<ScenarioIssue> issues;
};

namespace detail {

// "p/q" with integer p and positive integer q
inline std::optional<double> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) return std::nullopt;
    const std::string den = text.substr(slash + 1);
    const long long q = std::stoll(den, &used);
    if (used != den.size() || q <= 0) return std::nullopt;
    return static_cast<double>(p) / static_cast<double>(q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline void check_known_keys(const nlohmann::json& obj, std::initializer_list<const char*> known,
                             const std::string& where, std::vector<ScenarioIssue>& issues) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) issues.push_back({where, "unknown key '" + key + "'"});
  }
}

}  // namespace detail

inline ScenarioCheck read_scenario(const nlohmann::json& doc) {
  ScenarioCheck out;
  auto& issues = out.issues;

  if (!doc.is_object()) {
    issues.push_back({"$", "scenario must be a JSON object"});
    return out;
  }
  detail::check_known_keys(doc, {"frame", "bbas", "events"}, "$", issues);

  // --- frame -------------------------------------------------------------
  FramePtr frame;
  if (!doc.contains("frame") || !doc["frame"].is_object()) {
    issues.push_back({"frame", "missing or not an object"});
  } else {
    const auto& jf = doc["frame"];
    detail::check_known_keys(jf, {"atoms", "model"}, "frame", issues);
    std::vector<std::string> atoms;
    if (!jf.contains("atoms") || !jf["atoms"].is_array()) {
      issues.push_back({"frame.atoms", "missing or not an array"});
    } else {
      bool ok = true;
      for (const auto& a : jf["atoms"]) {
        if (!a.is_string()) {
          issues.push_back({"frame.atoms", "atom names must be strings"});
          ok = false;
          break;
        }
        atoms.push_back(a.get<std::string>());
      }
      if (ok) {
        ModelSpec spec = ModelSpec::shafer();
        bool model_ok = true;
        if (!jf.contains("model")) {
          issues.push_back({"frame.model", "missing"});
          model_ok = false;
        } else if (jf["model"].is_string()) {
          const std::string kind = jf["model"].get<std::string>();
          if (kind == "shafer") {
            spec = ModelSpec::shafer();
          } else if (kind == "free") {
            spec = ModelSpec::free_model();
          } else {
            issues.push_back({"frame.model", "expected \"shafer\", \"free\", or {\"empty\": [...]}"});
            model_ok = false;
          }
        } else if (jf["model"].is_object()) {
          detail::check_known_keys(jf["model"], {"empty"}, "frame.model", issues);
          if (!jf["model"].contains("empty") || !jf["model"]["empty"].is_array()) {
            issues.push_back({"frame.model.empty", "missing or not an array"});
            model_ok = false;
          } else {
            std::vector<std::string> exprs;
            for (const auto& e : jf["model"]["empty"]) {
              if (!e.is_string()) {
                issues.push_back({"frame.model.empty", "constraints must be strings"});
                model_ok = false;
                break;
              }
              exprs.push_back(e.get<std::string>());
            }
            if (model_ok) spec = ModelSpec::hybrid(std::move(exprs));
          }
        } else {
          issues.push_back({"frame.model", "expected a string or an object"});
          model_ok = false;
        }
        if (model_ok) {
          try {
            frame = build_frame(std::move(atoms), spec);
          } catch (const std::exception& e) {
            issues.push_back({"frame", e.what()});
          }
        }
      }
    }
  }

  // --- bbas ---------------------------------------------------------------
  std::map<std::string, MassFunction> bbas;
  if (doc.contains("bbas")) {
    if (!doc["bbas"].is_object()) {
      issues.push_back({"bbas", "must be an object of entry arrays"});
    } else if (frame) {
      for (const auto& [name, jentries] : doc["bbas"].items()) {
        const std::string where = "bbas." + name;
        if (!jentries.is_array()) {
          issues.push_back({where, "must be an array of {expr, mass} entries"});
          continue;
        }
        std::vector<MassFunction::Entry> entries;
        bool ok = true;
        for (std::size_t i = 0; i < jentries.size(); ++i) {
          const std::string at = where + "[" + std::to_string(i) + "]";
          const auto& je = jentries[i];
          if (!je.is_object()) {
            issues.push_back({at, "entry must be an object"});
            ok = false;
            continue;
          }
          detail::check_known_keys(je, {"expr", "mass"}, at, issues);
          if (!je.contains("expr") || !je["expr"].is_string()) {
            issues.push_back({at + ".expr", "missing or not a string"});
            ok = false;
            continue;
          }
          double mass = 0.0;
          if (!je.contains("mass")) {
            issues.push_back({at + ".mass", "missing"});
            ok = false;
            continue;
          } else if (je["mass"].is_number()) {
            mass = je["mass"].get<double>();
          } else if (je["mass"].is_string()) {
            const auto v = detail::parse_fraction(je["mass"].get<std::string>());
            if (!v) {
              issues.push_back({at + ".mass", "expected a number or a \"p/q\" fraction"});
              ok = false;
              continue;
            }
            mass = *v;
          } else {
            issues.push_back({at + ".mass", "expected a number or a \"p/q\" fraction"});
            ok = false;
            continue;
          }
          try {
            entries.emplace_back(parse_expr(je["expr"].get<std::string>(), frame), mass);
          } catch (const ParseError& e) {
            issues.push_back({at + ".expr", e.what()});
            ok = false;
          }
        }
        if (!ok) continue;
        MassFunction m = MassFunction::make(frame, std::move(entries));
        for (const auto& v : validate_bba(m)) issues.push_back({where, v.detail});
        bbas.emplace(name, std::move(m));
      }
    }
  }

  // --- events --------------------------------------------------------------
  std::map<std::string, SetElement> events;
  if (doc.contains("events")) {
    if (!doc["events"].is_object()) {
      issues.push_back({"events", "must be an object of expressions"});
    } else if (frame) {
      for (const auto& [name, jexpr] : doc["events"].items()) {
        const std::string where = "events." + name;
        if (!jexpr.is_string()) {
          issues.push_back({where, "must be an expression string"});
          continue;
        }
        try {
          SetElement e = parse_expr(jexpr.get<std::string>(), frame);
          if (is_empty(e)) {
            issues.push_back({where, "event expression denotes the empty set"});
            continue;
          }
          events.emplace(name, std::move(e));
        } catch (const ParseError& e) {
          issues.push_back({where, e.what()});
        }
      }
    }
  }

  if (issues.empty() && frame)
    out.scenario = Scenario{std::move(frame), std::move(bbas), std::move(events)};
  return out;
}

// Reads and checks a scenario file.  I/O failures throw ScenarioIoError;
// everything else (bad JSON, schema, content) becomes issues.
inline ScenarioCheck check_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioIoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ScenarioIoError("cannot read '" + path.string() + "'");

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    return {std::nullopt, {{path.string(), std::string("invalid JSON: ") + e.what()}}};
  }
  return read_scenario(doc);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  ScenarioCheck checked = check_scenario(path);
  if (!checked.scenario) {
    std::string msg = "invalid scenario '" + path.string() + "'";
    for (const auto& issue : checked.issues)
      msg += "\n  " + issue.where + ": " + issue.message;
    throw ScenarioValidationError(std::move(msg), std::move(checked.issues));
  }
  return std::move(*checked.scenario);
}

}  // namespace bft
