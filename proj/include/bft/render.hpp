#pragma once

// Deterministic text rendering of conditioning reports, rule comparisons,
// and combination results.  Same input, same bytes, every run.

#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bft/conditioning.hpp"
#include "bft/fusion.hpp"

namespace bft {

enum class OutputFormat { json, tsv, markdown };

inline std::optional<OutputFormat> output_format_from_name(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "markdown") return OutputFormat::markdown;
  return std::nullopt;
}

// 12 significant digits; enough to reparse within 1e-12 of the original.
inline std::string format_mass_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

inline std::string md_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

inline std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) {
    out += ' ';
    out += c;
    out += " |";
  }
  out += '\n';
  return out;
}

inline std::string md_separator(std::size_t columns) {
  std::string out = "|";
  for (std::size_t i = 0; i < columns; ++i) out += " --- |";
  out += '\n';
  return out;
}

inline nlohmann::json masses_as_json(const MassFunction& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [elem, mass] : m.entries()) j[format_expr(elem)] = mass;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single conditioning report
// ---------------------------------------------------------------------------

inline std::string render_report(const ConditioningReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::tsv: {
      std::string out;
      for (const auto& [elem, mass] : report.result.entries())
        out += format_expr(elem) + "\t" + format_mass_value(mass) + "\n";
      return out;
    }
    case OutputFormat::markdown: {
      std::string out;
      out += detail::md_row({"element", "mass"});
      out += detail::md_separator(2);
      for (const auto& [elem, mass] : report.result.entries())
        out += detail::md_row({detail::md_escape(format_expr(elem)), format_mass_value(mass)});
      out += "\n";
      out += "rule: " + std::string(rule_name(report.rule)) + "\n";
      out += "given: " + format_expr(report.event.element()) + "\n";
      out += "k_cond: " + format_mass_value(report.k_cond) + "\n";
      if (report.rule == RuleId::dsm2) {
        out += "recipients:";
        for (const auto& r : report.recipients) out += " " + format_expr(r);
        out += "\n";
        out += std::string("fallback_used: ") +
               (report.degenerate_fallback_used ? "true" : "false") + "\n";
      }
      return out;
    }
    case OutputFormat::json: {
      nlohmann::json j;
      j["rule"] = rule_name(report.rule);
      j["given"] = format_expr(report.event.element());
      j["k_cond"] = report.k_cond;
      j["masses"] = detail::masses_as_json(report.result);
      if (report.rule == RuleId::dsm2) {
        auto recipients = nlohmann::json::array();
        for (const auto& r : report.recipients) recipients.push_back(format_expr(r));
        j["recipients"] = std::move(recipients);
        j["fallback_used"] = report.degenerate_fallback_used;
      }
      return j.dump(2) + "\n";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rule comparison: one row per rule, one column per element, mirroring the
// layout of a conditioning table.  The conjunctive combination with the
// point mass on the event leads the rows; undefined rules render as N/A.
// ---------------------------------------------------------------------------

inline std::string render_compare(const ConditioningEvent& event, const CombineResult& conjunctive,
                                  const std::vector<RuleOutcome>& outcomes,
                                  OutputFormat format) {
  const FramePtr& frame = conjunctive.mass.frame();

  std::set<SetElement, CanonicalLess> columns;
  columns.insert(frame->empty_element());
  for (const auto& [elem, mass] : conjunctive.mass.entries()) columns.insert(elem);
  for (const auto& outcome : outcomes)
    if (outcome.defined())
      for (const auto& [elem, mass] : outcome.report->result.entries()) columns.insert(elem);

  struct Row {
    std::string label;
    const MassFunction* masses;  // nullptr: undefined
  };
  std::vector<Row> rows;
  rows.push_back({"conjunctive", &conjunctive.mass});
  for (const auto& outcome : outcomes)
    rows.push_back({rule_name(outcome.rule),
                    outcome.defined() ? &outcome.report->result : nullptr});

  switch (format) {
    case OutputFormat::tsv: {
      std::string out = "rule";
      for (const auto& col : columns) out += "\t" + format_expr(col);
      out += "\n";
      for (const auto& row : rows) {
        out += row.label;
        for (const auto& col : columns)
          out += "\t" + (row.masses ? format_mass_value(row.masses->mass_of(col))
                                    : std::string("N/A"));
        out += "\n";
      }
      return out;
    }
    case OutputFormat::markdown: {
      std::string out = "given: " + format_expr(event.element()) + "\n\n";
      std::vector<std::string> header{"rule"};
      for (const auto& col : columns) header.push_back(detail::md_escape(format_expr(col)));
      out += detail::md_row(header);
      out += detail::md_separator(header.size());
      for (const auto& row : rows) {
        std::vector<std::string> cells{row.label};
        for (const auto& col : columns)
          cells.push_back(row.masses ? format_mass_value(row.masses->mass_of(col))
                                     : std::string("N/A"));
        out += detail::md_row(cells);
      }
      return out;
    }
    case OutputFormat::json: {
      nlohmann::json j;
      j["given"] = format_expr(event.element());
      auto cols = nlohmann::json::array();
      for (const auto& col : columns) cols.push_back(format_expr(col));
      j["columns"] = std::move(cols);
      j["conjunctive"] = detail::masses_as_json(conjunctive.mass);
      auto rules = nlohmann::json::array();
      for (const auto& outcome : outcomes) {
        nlohmann::json r;
        r["rule"] = rule_name(outcome.rule);
        r["defined"] = outcome.defined();
        if (outcome.defined()) {
          r["k_cond"] = outcome.report->k_cond;
          r["masses"] = detail::masses_as_json(outcome.report->result);
        } else {
          r["reason"] = outcome.undefined_reason;
        }
        rules.push_back(std::move(r));
      }
      j["rules"] = std::move(rules);
      return j.dump(2) + "\n";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Conjunctive combination: masses (empty set explicit) plus the ledger.
// ---------------------------------------------------------------------------

inline std::string render_combine(const CombineResult& combined, OutputFormat format) {
  const FramePtr& frame = combined.mass.frame();
  const SetElement empty = frame->empty_element();
  const bool has_empty_entry = combined.mass.mass_of(empty) != 0.0;

  switch (format) {
    case OutputFormat::tsv: {
      std::string out;
      if (!has_empty_entry) out += "mass\t0\t0\n";
      for (const auto& [elem, mass] : combined.mass.entries())
        out += "mass\t" + format_expr(elem) + "\t" + format_mass_value(mass) + "\n";
      for (const auto& pair : combined.ledger.pairs)
        out += "conflict\t" + format_expr(pair.left) + "\t" + format_expr(pair.right) +
               "\t" + format_mass_value(pair.product) + "\n";
      out += "total_conflict\t" + format_mass_value(combined.ledger.total) + "\n";
      return out;
    }
    case OutputFormat::markdown: {
      std::string out;
      out += detail::md_row({"element", "mass"});
      out += detail::md_separator(2);
      if (!has_empty_entry) out += detail::md_row({"0", "0"});
      for (const auto& [elem, mass] : combined.mass.entries())
        out += detail::md_row({detail::md_escape(format_expr(elem)), format_mass_value(mass)});
      out += "\n";
      out += detail::md_row({"conflict pair", "product"});
      out += detail::md_separator(2);
      for (const auto& pair : combined.ledger.pairs)
        out += detail::md_row(
            {detail::md_escape(format_expr(pair.left)) + " , " +
                 detail::md_escape(format_expr(pair.right)),
             format_mass_value(pair.product)});
      out += "\n";
      out += "total_conflict: " + format_mass_value(combined.ledger.total) + "\n";
      return out;
    }
    case OutputFormat::json: {
      nlohmann::json j;
      j["masses"] = detail::masses_as_json(combined.mass);
      if (!has_empty_entry) j["masses"]["0"] = 0.0;
      auto pairs = nlohmann::json::array();
      for (const auto& pair : combined.ledger.pairs) {
        nlohmann::json p;
        p["left"] = format_expr(pair.left);
        p["right"] = format_expr(pair.right);
        p["product"] = pair.product;
        pairs.push_back(std::move(p));
      }
      j["conflict_pairs"] = std::move(pairs);
      j["conflict_total"] = combined.ledger.total;
      return j.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace bft
