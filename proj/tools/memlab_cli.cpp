// Command-line front end for the memlab shared library. Everything goes
// through the public C API; the C++ headers stay an implementation
// detail of the library.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "memlab.h"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct TestHandle {
  memlab_test* p = nullptr;
  ~TestHandle() { memlab_test_free(p); }
};

struct ModelHandle {
  memlab_model* p = nullptr;
  ModelHandle() = default;
  ModelHandle(ModelHandle&& other) noexcept : p(other.p) { other.p = nullptr; }
  ModelHandle& operator=(ModelHandle&& other) noexcept {
    std::swap(p, other.p);
    return *this;
  }
  ~ModelHandle() { memlab_model_free(p); }
};

struct ReportHandle {
  memlab_report* p = nullptr;
  ~ReportHandle() { memlab_report_free(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { memlab_string_free(p); }
};

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int fail_api() { return fail_usage(memlab_last_error()); }

struct CommonOpts {
  std::string file;
  std::string model;
  std::string features;
  std::string models;  // compare only
  std::string format = "text";
  std::uint64_t max_states = 0;
  std::string random;
};

// --random SEED:SAMPLES
bool parse_random(const std::string& arg, memlab_options& opts) {
  auto colon = arg.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used = 0;
    opts.random_seed = std::stoull(arg.substr(0, colon), &used);
    if (used != colon) return false;
    std::string samples = arg.substr(colon + 1);
    opts.random_samples = std::stoull(samples, &used);
    return used == samples.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool build_options(const CommonOpts& cli, memlab_options& opts) {
  memlab_options_init(&opts);
  if (cli.max_states > 0) opts.max_states = cli.max_states;
  if (!cli.random.empty() && !parse_random(cli.random, opts)) return false;
  return true;
}

memlab_format to_format(const std::string& name) {
  return name == "json" ? MEMLAB_FORMAT_JSON : MEMLAB_FORMAT_TEXT;
}

int load_test(const std::string& path, TestHandle& test) {
  if (memlab_test_load(path.c_str(), &test.p) != MEMLAB_OK) return fail_api();
  return 0;
}

int build_model(const CommonOpts& cli, ModelHandle& model) {
  memlab_status status;
  if (!cli.features.empty()) {
    status = memlab_model_features(cli.features.c_str(), &model.p);
  } else {
    status = memlab_model_product(
        cli.model.empty() ? "SC" : cli.model.c_str(), &model.p);
  }
  return status == MEMLAB_OK ? 0 : fail_api();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::string trimmed;
    for (char c : item) {
      if (c != ' ' && c != '\t') trimmed += c;
    }
    if (!trimmed.empty()) out.push_back(trimmed);
  }
  return out;
}

int cmd_run(const CommonOpts& cli) {
  TestHandle test;
  if (int rc = load_test(cli.file, test)) return rc;
  ModelHandle model;
  if (int rc = build_model(cli, model)) return rc;
  memlab_options opts;
  if (!build_options(cli, opts)) {
    return fail_usage("--random expects SEED:SAMPLES");
  }
  ReportHandle report;
  if (memlab_explore(test.p, model.p, &opts, &report.p) != MEMLAB_OK) {
    return fail_api();
  }
  Str out;
  if (memlab_render_run(test.p, model.p, report.p, to_format(cli.format),
                        &out.p) != MEMLAB_OK) {
    return fail_api();
  }
  std::cout << out.p;
  return memlab_report_exit_code(report.p, test.p);
}

int cmd_compare(const CommonOpts& cli) {
  TestHandle test;
  if (int rc = load_test(cli.file, test)) return rc;
  std::vector<std::string> names = split_list(
      cli.models.empty() ? "SC,IBM370,TSO,PSO" : cli.models);
  if (names.empty()) return fail_usage("--models list is empty");
  std::vector<ModelHandle> models;
  std::vector<const memlab_model*> raw;
  for (const std::string& name : names) {
    ModelHandle model;
    if (memlab_model_product(name.c_str(), &model.p) != MEMLAB_OK) {
      return fail_api();
    }
    models.push_back(std::move(model));
  }
  raw.reserve(models.size());
  for (const ModelHandle& model : models) raw.push_back(model.p);
  memlab_options opts;
  if (!build_options(cli, opts)) {
    return fail_usage("--random expects SEED:SAMPLES");
  }
  Str out;
  if (memlab_render_compare(test.p, raw.data(), raw.size(), &opts,
                            to_format(cli.format), &out.p) != MEMLAB_OK) {
    return fail_api();
  }
  std::cout << out.p;
  return 0;
}

int cmd_oracle(const CommonOpts& cli) {
  TestHandle test;
  if (int rc = load_test(cli.file, test)) return rc;
  ReportHandle report;
  if (memlab_oracle(test.p, &report.p) != MEMLAB_OK) return fail_api();
  size_t count = memlab_report_outcome_count(report.p);
  if (to_format(cli.format) == MEMLAB_FORMAT_JSON) {
    ordered_json out = ordered_json::object();
    out["test"] = memlab_test_name(test.p);
    ordered_json outcomes = ordered_json::array();
    for (size_t i = 0; i < count; ++i) {
      Str line;
      line.p = memlab_report_outcome_json(report.p, test.p, i);
      outcomes.push_back(ordered_json::parse(line.p));
    }
    out["outcomes"] = std::move(outcomes);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "test: " << memlab_test_name(test.p) << "\n";
    std::cout << "oracle outcomes (" << count << "):\n";
    for (size_t i = 0; i < count; ++i) {
      Str line;
      line.p = memlab_report_outcome(report.p, test.p, i);
      std::cout << "  " << line.p << "\n";
    }
  }
  return 0;
}

// Product names for one suite file: the .models sidecar next to it, or
// the whole catalog when there is none.
std::vector<std::string> suite_models(const fs::path& litmus) {
  fs::path sidecar = litmus;
  sidecar.replace_extension(".models");
  std::vector<std::string> names;
  std::ifstream in(sidecar);
  if (in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.resize(hash);
      }
      for (char& c : line) {
        if (c == ',') c = ' ';
      }
      std::istringstream tokens(line);
      std::string name;
      while (tokens >> name) names.push_back(name);
    }
  }
  if (names.empty()) names = {"SC", "IBM370", "TSO", "PSO"};
  return names;
}

const char* verdict_name(memlab_verdict v) {
  switch (v) {
    case MEMLAB_VERDICT_PASS:
      return "Pass";
    case MEMLAB_VERDICT_FAIL:
      return "Fail";
    default:
      return "Unknown";
  }
}

int cmd_suite(const std::string& dir, const CommonOpts& cli) {
  std::error_code ec;
  std::vector<fs::path> files;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (it->path().extension() == ".litmus") files.push_back(it->path());
  }
  if (ec) return fail_usage("cannot read directory " + dir);
  if (files.empty()) return fail_usage("no .litmus files in " + dir);
  std::sort(files.begin(), files.end());

  memlab_options opts;
  if (!build_options(cli, opts)) {
    return fail_usage("--random expects SEED:SAMPLES");
  }

  bool json = to_format(cli.format) == MEMLAB_FORMAT_JSON;
  ordered_json runs = ordered_json::array();
  std::uint64_t pass = 0, fail = 0, unknown = 0;

  for (const fs::path& file : files) {
    TestHandle test;
    if (memlab_test_load(file.string().c_str(), &test.p) != MEMLAB_OK) {
      return fail_usage(file.filename().string() + ": " + memlab_last_error());
    }
    for (const std::string& name : suite_models(file)) {
      ModelHandle model;
      if (memlab_model_product(name.c_str(), &model.p) != MEMLAB_OK) {
        return fail_api();
      }
      ReportHandle report;
      if (memlab_explore(test.p, model.p, &opts, &report.p) != MEMLAB_OK) {
        return fail_api();
      }
      size_t asserts = memlab_test_assertion_count(test.p);
      bool any_fail = false, any_unknown = false;
      std::vector<std::string> detail;
      ordered_json verdicts = ordered_json::array();
      for (size_t i = 0; i < asserts; ++i) {
        memlab_verdict v =
            memlab_report_assertion_verdict(report.p, test.p, i);
        Str clause;
        clause.p = memlab_test_assertion(test.p, i);
        if (json) {
          ordered_json entry = ordered_json::object();
          entry["clause"] = clause.p;
          entry["verdict"] = verdict_name(v);
          verdicts.push_back(std::move(entry));
        } else if (v != MEMLAB_VERDICT_PASS) {
          detail.push_back(std::string("[") + verdict_name(v) + "] " +
                           clause.p);
        }
        any_fail = any_fail || v == MEMLAB_VERDICT_FAIL;
        any_unknown = any_unknown || v == MEMLAB_VERDICT_UNKNOWN;
      }
      std::uint64_t violations = memlab_report_invariant_violations(report.p) +
                                 memlab_report_progress_violations(report.p);
      if (violations > 0) {
        any_fail = true;
        detail.push_back("machine invariant violations: " +
                         std::to_string(violations));
      }
      const char* status =
          any_fail ? "fail" : (any_unknown ? "unknown" : "pass");
      if (any_fail) {
        ++fail;
      } else if (any_unknown) {
        ++unknown;
      } else {
        ++pass;
      }
      if (json) {
        ordered_json entry = ordered_json::object();
        entry["file"] = file.filename().string();
        entry["model"] = name;
        entry["status"] = status;
        entry["verdicts"] = std::move(verdicts);
        entry["invariant_violations"] = violations;
        runs.push_back(std::move(entry));
      } else {
        std::cout << file.filename().string() << " [" << name
                  << "]: " << status << "\n";
        for (const std::string& line : detail) {
          std::cout << "    " << line << "\n";
        }
      }
    }
  }

  std::uint64_t total = pass + fail + unknown;
  if (json) {
    ordered_json out = ordered_json::object();
    out["runs"] = std::move(runs);
    ordered_json summary = ordered_json::object();
    summary["runs"] = total;
    summary["pass"] = pass;
    summary["fail"] = fail;
    summary["unknown"] = unknown;
    out["summary"] = std::move(summary);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "suite: " << total << " runs, " << pass << " pass, " << fail
              << " fail, " << unknown << " unknown\n";
  }
  if (fail > 0) return 1;
  if (unknown > 0) return 3;
  return 0;
}

void add_model_flags(CLI::App* cmd, CommonOpts& opts) {
  auto* model = cmd->add_option("--model", opts.model,
                                "named product (SC, IBM370, TSO, PSO)");
  auto* features = cmd->add_option(
      "--features", opts.features,
      "comma-separated feature list (WR, WW, RR, RW, ReadEarly)");
  model->excludes(features);
  features->excludes(model);
}

void add_explore_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--max-states", opts.max_states,
                  "state budget before giving up (default 1000000)");
  cmd->add_option("--random", opts.random,
                  "random-walk sampling instead of exhaustive search, "
                  "SEED:SAMPLES");
}

void add_format_flag(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak memory model laboratory"};
  app.set_version_flag("--version", memlab_version());
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand(
      "run", "explore one litmus test under one model");
  run->add_option("file", run_opts.file, "litmus file")->required();
  add_model_flags(run, run_opts);
  add_explore_flags(run, run_opts);
  add_format_flag(run, run_opts);

  CommonOpts compare_opts;
  CLI::App* compare = app.add_subcommand(
      "compare", "explore one litmus test under several products");
  compare->add_option("file", compare_opts.file, "litmus file")->required();
  compare->add_option("--models", compare_opts.models,
                      "comma-separated product names (default all four)");
  add_explore_flags(compare, compare_opts);
  add_format_flag(compare, compare_opts);

  std::string suite_dir;
  CommonOpts suite_opts;
  CLI::App* suite = app.add_subcommand(
      "suite", "run every litmus test in a directory");
  suite->add_option("dir", suite_dir, "directory of .litmus files")
      ->required();
  add_explore_flags(suite, suite_opts);
  add_format_flag(suite, suite_opts);

  CommonOpts oracle_opts;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "print the sequentially consistent reference outcomes");
  oracle->add_option("file", oracle_opts.file, "litmus file")->required();
  add_format_flag(oracle, oracle_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return cmd_run(run_opts);
  if (compare->parsed()) return cmd_compare(compare_opts);
  if (suite->parsed()) return cmd_suite(suite_dir, suite_opts);
  if (oracle->parsed()) return cmd_oracle(oracle_opts);
  return 2;
}
