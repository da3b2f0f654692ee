#include "memlab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "memlab/error.hpp"
#include "memlab/explore.hpp"
#include "memlab/litmus.hpp"
#include "memlab/model.hpp"
#include "memlab/render.hpp"

struct memlab_test {
  memlab::LitmusTest test;
};

struct memlab_model {
  memlab::MemoryModel model;
  std::string label;  // stable storage for memlab_model_name
};

struct memlab_report {
  memlab::ExploreReport report;
};

namespace {

thread_local std::string tl_error;

void set_error(std::string message) { tl_error = std::move(message); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body` with the standard exception-to-status translation; `body`
// returns a memlab_status itself so argument checks can short-circuit.
template <typename Fn>
memlab_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const memlab::UnknownProduct& e) {
    set_error(e.what());
    return MEMLAB_ERR_UNKNOWN_PRODUCT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MEMLAB_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return MEMLAB_ERR_INTERNAL;
  }
}

memlab::ExploreConfig make_config(const memlab_options* opts) {
  memlab::ExploreConfig config;
  if (opts == nullptr) return config;
  if (opts->max_states > 0) config.max_states = opts->max_states;
  config.dedup = opts->dedup != 0;
  if (opts->random_samples > 0) {
    config.mode = memlab::ExploreConfig::Mode::RandomWalk;
    config.seed = opts->random_seed;
    config.samples = opts->random_samples;
  }
  return config;
}

memlab_status parse_into(const std::string& text, memlab_test** out) {
  memlab::ParseResult result = memlab::parse_litmus(text);
  if (!result.ok()) {
    std::ostringstream message;
    for (std::size_t i = 0; i < result.errors.size(); ++i) {
      const memlab::ParseError& e = result.errors[i];
      if (i > 0) message << "\n";
      message << "line " << e.line << ":" << e.column << ": " << e.message;
    }
    set_error(message.str());
    return MEMLAB_ERR_PARSE;
  }
  *out = new memlab_test{std::move(*result.test)};
  return MEMLAB_OK;
}

}  // namespace

extern "C" {

const char* memlab_version(void) { return "0.1.0"; }

const char* memlab_last_error(void) { return tl_error.c_str(); }

void memlab_string_free(char* s) { std::free(s); }

void memlab_options_init(memlab_options* opts) {
  if (opts == nullptr) return;
  opts->max_states = 1000000;
  opts->dedup = 1;
  opts->random_seed = 0;
  opts->random_samples = 0;
}

memlab_status memlab_test_parse(const char* text, memlab_test** out) {
  if (text == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { return parse_into(text, out); });
}

memlab_status memlab_test_load(const char* path, memlab_test** out) {
  if (path == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      set_error(std::string("cannot read ") + path);
      return MEMLAB_ERR_IO;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_into(text.str(), out);
  });
}

void memlab_test_free(memlab_test* test) { delete test; }

const char* memlab_test_name(const memlab_test* test) {
  return test == nullptr ? nullptr : test->test.name.c_str();
}

int memlab_test_thread_count(const memlab_test* test) {
  return test == nullptr ? 0 : static_cast<int>(test->test.threads.size());
}

int memlab_test_access_count(const memlab_test* test) {
  return test == nullptr ? 0 : test->test.total_accesses();
}

size_t memlab_test_assertion_count(const memlab_test* test) {
  return test == nullptr ? 0 : test->test.assertions.size();
}

char* memlab_test_assertion(const memlab_test* test, size_t index) {
  if (test == nullptr || index >= test->test.assertions.size()) return nullptr;
  return dup_string(
      memlab::to_string(test->test.assertions[index], test->test));
}

char* memlab_test_format(const memlab_test* test) {
  if (test == nullptr) return nullptr;
  return dup_string(memlab::format_litmus(test->test));
}

memlab_status memlab_model_product(const char* name, memlab_model** out) {
  if (name == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    memlab::MemoryModel model = memlab::MemoryModel::product(name);
    std::string label = model.describe();
    *out = new memlab_model{std::move(model), std::move(label)};
    return MEMLAB_OK;
  });
}

memlab_status memlab_model_features(const char* comma_list,
                                    memlab_model** out) {
  if (comma_list == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    memlab::FeatureSet features;
    std::string item;
    std::istringstream in(comma_list);
    while (std::getline(in, item, ',')) {
      while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) {
        item.erase(item.begin());
      }
      while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) {
        item.pop_back();
      }
      if (item.empty()) continue;
      auto feature = memlab::feature_from_string(item);
      if (!feature) {
        set_error("unknown feature " + item +
                  " (known: WR, WW, RR, RW, ReadEarly)");
        return MEMLAB_ERR_BAD_FEATURE;
      }
      features.insert(*feature);
    }
    memlab::MemoryModel model = memlab::MemoryModel::compose(features);
    std::string label = model.describe();
    *out = new memlab_model{std::move(model), std::move(label)};
    return MEMLAB_OK;
  });
}

void memlab_model_free(memlab_model* model) { delete model; }

const char* memlab_model_name(const memlab_model* model) {
  return model == nullptr ? nullptr : model->label.c_str();
}

memlab_status memlab_explore(const memlab_test* test,
                             const memlab_model* model,
                             const memlab_options* opts,
                             memlab_report** out) {
  if (test == nullptr || model == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    *out = new memlab_report{
        memlab::explore(test->test, model->model, make_config(opts))};
    return MEMLAB_OK;
  });
}

memlab_status memlab_oracle(const memlab_test* test, memlab_report** out) {
  if (test == nullptr || out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    memlab::ExploreReport report;
    report.outcomes = memlab::interleaving_oracle(test->test);
    *out = new memlab_report{std::move(report)};
    return MEMLAB_OK;
  });
}

void memlab_report_free(memlab_report* report) { delete report; }

size_t memlab_report_outcome_count(const memlab_report* report) {
  return report == nullptr ? 0 : report->report.outcomes.size();
}

char* memlab_report_outcome(const memlab_report* report,
                            const memlab_test* test, size_t index) {
  if (report == nullptr || test == nullptr ||
      index >= report->report.outcomes.size()) {
    return nullptr;
  }
  auto it = std::next(report->report.outcomes.begin(),
                      static_cast<std::ptrdiff_t>(index));
  return dup_string(memlab::to_string(*it, test->test));
}

char* memlab_report_outcome_json(const memlab_report* report,
                                 const memlab_test* test, size_t index) {
  if (report == nullptr || test == nullptr ||
      index >= report->report.outcomes.size()) {
    return nullptr;
  }
  auto it = std::next(report->report.outcomes.begin(),
                      static_cast<std::ptrdiff_t>(index));
  return dup_string(memlab::outcome_json(*it, test->test));
}

uint64_t memlab_report_states_visited(const memlab_report* report) {
  return report == nullptr ? 0 : report->report.states_visited;
}

uint64_t memlab_report_dedup_hits(const memlab_report* report) {
  return report == nullptr ? 0 : report->report.dedup_hits;
}

int memlab_report_complete(const memlab_report* report) {
  return (report != nullptr && !report->report.limit_exhausted) ? 1 : 0;
}

size_t memlab_report_invariant_violations(const memlab_report* report) {
  return report == nullptr ? 0 : report->report.invariant_violations.size();
}

char* memlab_report_invariant_violation(const memlab_report* report,
                                        size_t index) {
  if (report == nullptr ||
      index >= report->report.invariant_violations.size()) {
    return nullptr;
  }
  const memlab::InvariantViolation& violation =
      report->report.invariant_violations[index];
  return dup_string(std::string(memlab::to_string(violation.kind)) + ": " +
                    violation.detail);
}

uint64_t memlab_report_progress_violations(const memlab_report* report) {
  if (report == nullptr) return 0;
  return report->report.progress_violations + report->report.depth_violations;
}

memlab_verdict memlab_report_assertion_verdict(const memlab_report* report,
                                               const memlab_test* test,
                                               size_t index) {
  if (report == nullptr || test == nullptr ||
      index >= test->test.assertions.size()) {
    return MEMLAB_VERDICT_UNKNOWN;
  }
  auto results = memlab::evaluate_assertions(report->report, test->test);
  switch (results[index].verdict) {
    case memlab::Verdict::Pass:
      return MEMLAB_VERDICT_PASS;
    case memlab::Verdict::Fail:
      return MEMLAB_VERDICT_FAIL;
    case memlab::Verdict::Unknown:
      return MEMLAB_VERDICT_UNKNOWN;
  }
  return MEMLAB_VERDICT_UNKNOWN;
}

int memlab_report_exit_code(const memlab_report* report,
                            const memlab_test* test) {
  if (report == nullptr || test == nullptr) return 2;
  return memlab::overall_exit_code(
      memlab::evaluate_assertions(report->report, test->test));
}

memlab_status memlab_render_run(const memlab_test* test,
                                const memlab_model* model,
                                const memlab_report* report,
                                memlab_format format, char** out) {
  if (test == nullptr || model == nullptr || report == nullptr ||
      out == nullptr) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    auto results = memlab::evaluate_assertions(report->report, test->test);
    std::string text = memlab::render_run(
        test->test, model->model, report->report, results,
        format == MEMLAB_FORMAT_JSON ? memlab::OutputFormat::Json
                                     : memlab::OutputFormat::Text);
    *out = dup_string(text);
    return *out != nullptr ? MEMLAB_OK : MEMLAB_ERR_INTERNAL;
  });
}

memlab_status memlab_render_compare(const memlab_test* test,
                                    const memlab_model* const* models,
                                    size_t model_count,
                                    const memlab_options* opts,
                                    memlab_format format, char** out) {
  if (test == nullptr || out == nullptr ||
      (models == nullptr && model_count > 0)) {
    set_error("null argument");
    return MEMLAB_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() -> memlab_status {
    std::vector<memlab::MemoryModel> list;
    for (size_t i = 0; i < model_count; ++i) {
      if (models[i] == nullptr) {
        set_error("null model in list");
        return MEMLAB_ERR_INVALID_ARGUMENT;
      }
      list.push_back(models[i]->model);
    }
    auto rows = memlab::compare_models(test->test, list, make_config(opts));
    std::string text = memlab::render_compare(
        test->test, rows,
        format == MEMLAB_FORMAT_JSON ? memlab::OutputFormat::Json
                                     : memlab::OutputFormat::Text);
    *out = dup_string(text);
    return *out != nullptr ? MEMLAB_OK : MEMLAB_ERR_INTERNAL;
  });
}

}  // extern "C"
