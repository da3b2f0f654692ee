#pragma once

#include <string>
#include <vector>

#include "memlab/explore.hpp"

namespace memlab {

enum class OutputFormat { Text, Json };

// Byte-stable report for one test under one model: outcomes, assertion
// verdicts, stats. Json field order: test, model, outcomes, assertions,
// stats.
std::string render_run(const LitmusTest& test, const MemoryModel& model,
                       const ExploreReport& report,
                       const std::vector<AssertionResult>& results,
                       OutputFormat format);

// Side-by-side table over several models: outcome count, states visited,
// witness flag per assertion.
std::string render_compare(const LitmusTest& test,
                           const std::vector<ComparisonRow>& rows,
                           OutputFormat format);

// One outcome as a JSON object {"registers": {...}, "memory": {...}}.
std::string outcome_json(const Outcome& outcome, const LitmusTest& test);

// CLI contract: 0 all pass, 1 some assertion failed, 3 inconclusive.
int overall_exit_code(const std::vector<AssertionResult>& results);

}  // namespace memlab
