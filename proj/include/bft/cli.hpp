#pragma once

// Command-line driver.  One verb per library operation:
//
//   bft validate <file>
//   bft condition --rule <id> --bba <name> --given <expr|event> [options] <file>
//   bft compare   --bba <name> --given <expr|event> [options] <file>
//   bft combine   --left <name> --right <name> [options] <file>
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 validation (bad scenario,
// expression, or name), 4 undefined conditioning (Pl(A) = 0), 5 I/O.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bft/render.hpp"
#include "bft/scenario.hpp"

namespace bft::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int validation = 3;
inline constexpr int undefined_conditioning = 4;
inline constexpr int io = 5;
}  // namespace exit_code

namespace detail {

class NamedError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const MassFunction& resolve_bba(const Scenario& scenario, const std::string& name) {
  const auto it = scenario.bbas.find(name);
  if (it != scenario.bbas.end()) return it->second;
  std::string known;
  for (const auto& [n, m] : scenario.bbas) known += (known.empty() ? "" : ", ") + n;
  throw NamedError("unknown bba '" + name + "' (scenario defines: " + known + ")");
}

// --given accepts a named event from the scenario or an inline expression.
inline ConditioningEvent resolve_event(const Scenario& scenario, const std::string& given) {
  const auto it = scenario.events.find(given);
  if (it != scenario.events.end()) return ConditioningEvent(it->second);
  return ConditioningEvent(parse_expr(given, scenario.frame));
}

inline std::optional<ClassParams> assemble_class_params(
    const std::vector<std::string>& alpha_specs, const std::vector<std::string>& beta_specs) {
  if (alpha_specs.empty() && beta_specs.empty()) return std::nullopt;
  ClassParams params;
  for (const auto& spec : alpha_specs) params.alpha.push_back(parse_weight(spec));
  for (const auto& spec : beta_specs) params.beta.push_back(parse_weight(spec));
  return params;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief-function conditioning toolkit"};
  app.require_subcommand(1);

  std::string file;
  std::string bba_name;
  std::string given;
  std::string rule_spec;
  std::string left_name;
  std::string right_name;
  std::string format_name = "markdown";
  std::vector<std::string> alpha_specs;
  std::vector<std::string> beta_specs;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"json", "tsv", "markdown"}));
  };
  const auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "scenario file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
  add_file(validate);

  CLI::App* condition = app.add_subcommand("condition", "apply one conditioning rule");
  condition->add_option("--rule", rule_spec, "DCR, TBM, DSM1, DSM2, or CLASS")
      ->required()
      ->check(CLI::IsMember({"DCR", "TBM", "DSM1", "DSM2", "CLASS"}, CLI::ignore_case));
  condition->add_option("--bba", bba_name, "bba name")->required();
  condition->add_option("--given", given, "conditioning event: expression or event name")
      ->required();
  condition->add_option("--class-alpha", alpha_specs,
                        "CLASS weight factor (mass, cardinality, constant:<v>); repeatable");
  condition->add_option("--class-beta", beta_specs,
                        "CLASS inverse weight factor; repeatable");
  add_format(condition);
  add_file(condition);

  CLI::App* compare = app.add_subcommand("compare", "run every rule and tabulate");
  compare->add_option("--bba", bba_name, "bba name")->required();
  compare->add_option("--given", given, "conditioning event: expression or event name")
      ->required();
  compare->add_option("--class-alpha", alpha_specs,
                      "CLASS weight factor (mass, cardinality, constant:<v>); repeatable");
  compare->add_option("--class-beta", beta_specs, "CLASS inverse weight factor; repeatable");
  add_format(compare);
  add_file(compare);

  CLI::App* combine = app.add_subcommand("combine", "conjunctive combination of two bbas");
  combine->add_option("--left", left_name, "first bba")->required();
  combine->add_option("--right", right_name, "second bba")->required();
  add_format(combine);
  add_file(combine);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  const OutputFormat format = *output_format_from_name(format_name);

  try {
    if (validate->parsed()) {
      const ScenarioCheck checked = check_scenario(file);
      if (checked.scenario) {
        out << "ok\n";
        return exit_code::ok;
      }
      for (const auto& issue : checked.issues)
        err << "error: " << issue.where << ": " << issue.message << "\n";
      return exit_code::validation;
    }

    std::optional<ClassParams> class_params;
    try {
      class_params = detail::assemble_class_params(alpha_specs, beta_specs);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::usage;
    }

    const Scenario scenario = load_scenario(file);

    if (condition->parsed()) {
      const RuleId rule = *rule_from_name(rule_spec);
      if (class_params && rule != RuleId::dsm_class) {
        err << "error: --class-alpha/--class-beta apply to --rule CLASS only\n";
        return exit_code::usage;
      }
      const MassFunction& m = detail::resolve_bba(scenario, bba_name);
      const ConditioningEvent event = detail::resolve_event(scenario, given);
      const ConditioningReport report = bft::condition(m, event, rule, class_params);
      out << render_report(report, format);
      return exit_code::ok;
    }

    if (compare->parsed()) {
      const MassFunction& m = detail::resolve_bba(scenario, bba_name);
      const ConditioningEvent event = detail::resolve_event(scenario, given);
      const CombineResult conjunctive = conjunctive_combine(m, point_mass(event.element()));
      const std::vector<RuleOutcome> outcomes = compare_all(m, event, class_params);
      out << render_compare(event, conjunctive, outcomes, format);
      return exit_code::ok;
    }

    if (combine->parsed()) {
      const MassFunction& lhs = detail::resolve_bba(scenario, left_name);
      const MassFunction& rhs = detail::resolve_bba(scenario, right_name);
      out << render_combine(conjunctive_combine(lhs, rhs), format);
      return exit_code::ok;
    }

    err << "error: no command\n";
    return exit_code::usage;
  } catch (const ScenarioIoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const ScenarioValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const UndefinedConditioningError& e) {
    err << "error: undefined conditioning: " << e.what() << "\n";
    return exit_code::undefined_conditioning;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const detail::NamedError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

}  // namespace bft::cli
