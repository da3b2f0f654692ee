#include "memlab/render.hpp"

#include <sstream>

#include "json.hpp"

namespace memlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json outcome_to_json(const Outcome& outcome, const LitmusTest& test) {
  ordered_json registers = ordered_json::object();
  for (const auto& [key, value] : outcome.registers) {
    std::size_t index = static_cast<std::size_t>(key.tid.index);
    std::string thread = index < test.threads.size()
                             ? test.threads[index].name
                             : "T" + std::to_string(key.tid.index);
    registers[thread + ":" + key.reg.name] = value;
  }
  ordered_json memory = ordered_json::object();
  for (const auto& [loc, value] : outcome.memory) {
    memory[loc.name] = value;
  }
  ordered_json out = ordered_json::object();
  out["registers"] = std::move(registers);
  out["memory"] = std::move(memory);
  return out;
}

ordered_json stats_to_json(const ExploreReport& report) {
  ordered_json stats = ordered_json::object();
  stats["states_visited"] = report.states_visited;
  stats["dedup_hits"] = report.dedup_hits;
  stats["complete"] = !report.limit_exhausted;
  stats["invariant_violations"] = report.invariant_violations.size();
  stats["progress_violations"] =
      report.progress_violations + report.depth_violations;
  return stats;
}

}  // namespace

std::string outcome_json(const Outcome& outcome, const LitmusTest& test) {
  return outcome_to_json(outcome, test).dump();
}

std::string render_run(const LitmusTest& test, const MemoryModel& model,
                       const ExploreReport& report,
                       const std::vector<AssertionResult>& results,
                       OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json out = ordered_json::object();
    out["test"] = test.name;
    out["model"] = model.describe();
    ordered_json outcomes = ordered_json::array();
    for (const Outcome& outcome : report.outcomes) {
      outcomes.push_back(outcome_to_json(outcome, test));
    }
    out["outcomes"] = std::move(outcomes);
    ordered_json assertions = ordered_json::array();
    for (const AssertionResult& result : results) {
      ordered_json entry = ordered_json::object();
      entry["clause"] = to_string(result.assertion, test);
      entry["verdict"] = to_string(result.verdict);
      assertions.push_back(std::move(entry));
    }
    out["assertions"] = std::move(assertions);
    out["stats"] = stats_to_json(report);
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "test: " << test.name << "\n";
  out << "model: " << model.describe() << "\n";
  out << "outcomes (" << report.outcomes.size() << "):\n";
  for (const Outcome& outcome : report.outcomes) {
    out << "  " << to_string(outcome, test) << "\n";
  }
  if (!results.empty()) {
    out << "assertions:\n";
    for (const AssertionResult& result : results) {
      out << "  [" << to_string(result.verdict) << "] "
          << to_string(result.assertion, test) << "\n";
    }
  }
  out << "stats: states_visited=" << report.states_visited
      << " dedup_hits=" << report.dedup_hits
      << " complete=" << (report.limit_exhausted ? "no" : "yes");
  if (!report.invariant_violations.empty() || report.progress_violations > 0 ||
      report.depth_violations > 0) {
    out << " invariant_violations=" << report.invariant_violations.size()
        << " progress_violations="
        << (report.progress_violations + report.depth_violations);
  }
  out << "\n";
  for (const InvariantViolation& violation : report.invariant_violations) {
    out << "invariant violation: " << to_string(violation.kind) << ": "
        << violation.detail << "\n";
  }
  return out.str();
}

std::string render_compare(const LitmusTest& test,
                           const std::vector<ComparisonRow>& rows,
                           OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json out = ordered_json::object();
    out["test"] = test.name;
    ordered_json models = ordered_json::array();
    for (const ComparisonRow& row : rows) {
      ordered_json entry = ordered_json::object();
      entry["model"] = row.model;
      entry["outcomes"] = row.report.outcomes.size();
      entry["states_visited"] = row.report.states_visited;
      entry["complete"] = !row.report.limit_exhausted;
      ordered_json witnesses = ordered_json::array();
      for (std::size_t i = 0; i < test.assertions.size(); ++i) {
        ordered_json witness = ordered_json::object();
        witness["clause"] = to_string(test.assertions[i], test);
        witness["witness"] = i < row.witnesses.size() && row.witnesses[i];
        witnesses.push_back(std::move(witness));
      }
      entry["witnesses"] = std::move(witnesses);
      models.push_back(std::move(entry));
    }
    out["models"] = std::move(models);
    return out.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "test: " << test.name << "\n";
  for (const ComparisonRow& row : rows) {
    out << "model " << row.model << ": outcomes=" << row.report.outcomes.size()
        << " states_visited=" << row.report.states_visited
        << " complete=" << (row.report.limit_exhausted ? "no" : "yes") << "\n";
    for (std::size_t i = 0; i < test.assertions.size(); ++i) {
      bool witness = i < row.witnesses.size() && row.witnesses[i];
      out << "  witness " << to_string(test.assertions[i], test) << ": "
          << (witness ? "yes" : "no") << "\n";
    }
  }
  return out.str();
}

int overall_exit_code(const std::vector<AssertionResult>& results) {
  bool unknown = false;
  for (const AssertionResult& result : results) {
    if (result.verdict == Verdict::Fail) return 1;
    if (result.verdict == Verdict::Unknown) unknown = true;
  }
  return unknown ? 3 : 0;
}

}  // namespace memlab
