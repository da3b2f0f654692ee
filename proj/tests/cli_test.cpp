// Black-box tests for the installed CLI binary. The harness passes the
// binary and the bundled suite directory through the environment.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

std::string cli_path() {
  const char* path = std::getenv("MEMLAB_CLI");
  REQUIRE(path != nullptr);
  return path;
}

std::string suite_dir() {
  const char* dir = std::getenv("MEMLAB_SUITE_DIR");
  REQUIRE(dir != nullptr);
  return dir;
}

std::string litmus(const std::string& stem) {
  return "'" + suite_dir() + "/" + stem + ".litmus'";
}

RunResult run_cli(const std::string& args) {
  std::string command = "'" + cli_path() + "' " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("run reports outcomes and verdicts") {
  RunResult weak = run_cli("run " + litmus("sb") + " --model TSO");
  CHECK(weak.status == 0);
  CHECK(contains(weak.output, "test: SB"));
  CHECK(contains(weak.output, "model: TSO"));
  CHECK(contains(weak.output, "outcomes (4):"));
  CHECK(contains(weak.output, "T0:r1=0 T1:r2=0 | v=1 w=1"));
  CHECK(contains(weak.output, "[Pass] exists"));

  RunResult strong = run_cli("run " + litmus("sb") + " --model SC");
  CHECK(strong.status == 1);
  CHECK(contains(strong.output, "outcomes (3):"));
  CHECK(contains(strong.output, "[Fail] exists"));

  RunResult forbidden = run_cli("run " + litmus("sb_sc") + " --model SC");
  CHECK(forbidden.status == 0);
  CHECK(contains(forbidden.output, "[Pass] forbidden"));
}

TEST_CASE("run surfaces usage errors on stderr with exit 2") {
  RunResult missing = run_cli("run /nonexistent.litmus");
  CHECK(missing.status == 2);
  CHECK(contains(missing.output, "error:"));

  RunResult unknown = run_cli("run " + litmus("sb") + " --model XYZ");
  CHECK(unknown.status == 2);
  CHECK(contains(unknown.output,
                 "unknown product XYZ (known: SC, IBM370, TSO, PSO)"));

  RunResult both =
      run_cli("run " + litmus("sb") + " --model TSO --features WR");
  CHECK(both.status == 2);

  RunResult bad_random = run_cli("run " + litmus("sb") + " --random 7");
  CHECK(bad_random.status == 2);
  CHECK(contains(bad_random.output, "SEED:SAMPLES"));

  RunResult bad_format =
      run_cli("run " + litmus("sb") + " --format yaml");
  CHECK(bad_format.status == 2);
}

TEST_CASE("json output is stable and model-spelling independent") {
  std::string args = "run " + litmus("sb") + " --model TSO --format json";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.status == 0);
  CHECK(first.output == second.output);

  auto doc = nlohmann::json::parse(first.output);
  CHECK(doc["test"] == "SB");
  CHECK(doc["model"] == "TSO");
  CHECK(doc["outcomes"].size() == 4);
  CHECK(doc["stats"]["complete"] == true);

  RunResult features = run_cli("run " + litmus("sb") +
                               " --features WR,ReadEarly --format json");
  CHECK(features.status == 0);
  auto custom = nlohmann::json::parse(features.output);
  CHECK(custom["model"] == "WR+ReadEarly");
  CHECK(custom["outcomes"] == doc["outcomes"]);
}

TEST_CASE("compare walks the product catalog") {
  RunResult all = run_cli("compare " + litmus("sb"));
  CHECK(all.status == 0);
  CHECK(contains(all.output, "model SC: outcomes=3"));
  CHECK(contains(all.output, "model IBM370: outcomes=4"));
  CHECK(contains(all.output, "model PSO: outcomes=4"));
  CHECK(contains(all.output, "witness"));

  RunResult pair = run_cli("compare " + litmus("sb") +
                           " --models SC,TSO --format json");
  CHECK(pair.status == 0);
  auto doc = nlohmann::json::parse(pair.output);
  CHECK(doc["models"].size() == 2);
  CHECK(doc["models"][0]["model"] == "SC");
  CHECK(doc["models"][1]["witnesses"][0]["witness"] == true);

  RunResult bogus = run_cli("compare " + litmus("sb") + " --models XYZ");
  CHECK(bogus.status == 2);
  CHECK(contains(bogus.output, "unknown product"));
}

TEST_CASE("oracle prints the interleaving reference") {
  RunResult text = run_cli("oracle " + litmus("sb"));
  CHECK(text.status == 0);
  CHECK(contains(text.output, "oracle outcomes (3):"));

  RunResult json = run_cli("oracle " + litmus("sb") + " --format json");
  CHECK(json.status == 0);
  auto doc = nlohmann::json::parse(json.output);
  CHECK(doc["test"] == "SB");
  CHECK(doc["outcomes"].size() == 3);
}

TEST_CASE("suite runs every bundled test against its models") {
  RunResult text = run_cli("suite '" + suite_dir() + "'");
  CHECK(text.status == 0);
  CHECK(contains(text.output, "sb.litmus [TSO]: pass"));
  CHECK(contains(text.output, "sb_sc.litmus [SC]: pass"));
  CHECK(contains(text.output, "stress.litmus [PSO]: pass"));
  CHECK(contains(text.output, " 0 fail, 0 unknown"));

  RunResult json = run_cli("suite '" + suite_dir() + "' --format json");
  CHECK(json.status == 0);
  auto doc = nlohmann::json::parse(json.output);
  CHECK(doc["summary"]["fail"] == 0);
  CHECK(doc["summary"]["unknown"] == 0);
  CHECK(doc["summary"]["runs"] == doc["runs"].size());
  for (const auto& entry : doc["runs"]) {
    CHECK(entry["status"] == "pass");
    CHECK(entry["invariant_violations"] == 0);
  }
}

TEST_CASE("suite rejects unusable directories") {
  RunResult missing = run_cli("suite /nonexistent-dir");
  CHECK(missing.status == 2);

  char tmpl[] = "/tmp/memlab_empty_XXXXXX";
  char* dir = mkdtemp(tmpl);
  REQUIRE(dir != nullptr);
  RunResult empty = run_cli("suite '" + std::string(dir) + "'");
  CHECK(empty.status == 2);
  CHECK(contains(empty.output, "no .litmus files"));
  rmdir(dir);
}

TEST_CASE("random sampling is reproducible from the seed") {
  std::string args = "run " + litmus("sb") + " --model PSO --random 7:50";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.status != 2);
  CHECK(first.status == second.status);
  CHECK(first.output == second.output);
  CHECK(contains(first.output, "complete=no"));
}

TEST_CASE("top-level flags") {
  RunResult version = run_cli("--version");
  CHECK(version.status == 0);
  CHECK(contains(version.output, "0.1.0"));

  RunResult help = run_cli("--help");
  CHECK(help.status == 0);
  CHECK(contains(help.output, "run"));
  CHECK(contains(help.output, "compare"));

  RunResult bare = run_cli("");
  CHECK(bare.status == 2);

  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.status == 2);
}
