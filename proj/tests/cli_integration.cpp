// End-to-end tests of the command-line tool: every subcommand, every exit
// code, and byte-identical reruns. The binary path is injected by the build
// as NASHEXEC_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (size_t got = std::fread(buffer, 1, sizeof(buffer), pipe))
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli_path() { return NASHEXEC_CLI_PATH; }

// One scratch directory per test process; unique via mkdtemp.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    std::string templ =
        (fs::temp_directory_path() / "nashexec_cli_XXXXXX").string();
    char* made = mkdtemp(templ.data());
    REQUIRE(made != nullptr);
    return fs::path(made);
  }();
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << body;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

const char* kScenarioConfig =
    R"({"scenario":{"n_opportunists":1,"gamma_liq":0.1,"gamma_opp":0.1,)"
    R"("rho":0.95,"horizon":1.0},"grid":201,"solver":"fredholm"})";

}  // namespace

TEST_CASE("help exits zero") {
  CHECK(run_command(cli_path() + " --help 2>/dev/null").exit_code == 0);
  CHECK(run_command(cli_path() + " solve --help 2>/dev/null").exit_code == 0);
}

TEST_CASE("solve: scenario config, output files, determinism") {
  const fs::path config = write_config("scenario.json", kScenarioConfig);
  const fs::path dir_a = scratch_dir() / "solve_a";
  const fs::path dir_b = scratch_dir() / "solve_b";

  const CommandResult first =
      run_command(cli_path() + " solve --config " + config.string() +
                  " --out " + dir_a.string() + " 2>/dev/null");
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("\"solver\":\"fredholm\"") != std::string::npos);
  CHECK(first.output.find("\"eta\":[") != std::string::npos);
  CHECK(first.output.find("\"rows\":201") != std::string::npos);
  CHECK(first.output.find("solution.csv") != std::string::npos);

  const std::string csv_a = read_file(dir_a / "solution.csv");
  CHECK(csv_a.rfind("t,alpha_0,alpha_1,X_0,X_1,S\n", 0) == 0);
  CHECK(count_lines(csv_a) == 202);  // header + one row per node

  const CommandResult second =
      run_command(cli_path() + " solve --config " + config.string() +
                  " --out " + dir_b.string() + " 2>/dev/null");
  CHECK(second.exit_code == 0);
  CHECK(read_file(dir_b / "solution.csv") == csv_a);  // byte identical
}

TEST_CASE("solve: --grid flag overrides the config") {
  const fs::path config = write_config("scenario_grid.json", kScenarioConfig);
  const fs::path dir = scratch_dir() / "solve_grid";
  const CommandResult result =
      run_command(cli_path() + " solve --config " + config.string() +
                  " --grid 51 --out " + dir.string() + " 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"rows\":51") != std::string::npos);
  CHECK(count_lines(read_file(dir / "solution.csv")) == 52);
}

TEST_CASE("solve: full game config with the closed-form solver") {
  const fs::path config = write_config(
      "game.json",
      R"({"game":{"horizon":1.0,"investors":[{"x":-1.0,"gamma":1.0},)"
      R"({"x":0.5,"gamma":0.3}],"kernel":{"kind":"exponential","rho":0.5}},)"
      R"("solver":"closed-form","grid":101})");
  const fs::path dir = scratch_dir() / "solve_game";
  const CommandResult result =
      run_command(cli_path() + " solve --config " + config.string() +
                  " --out " + dir.string() + " 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"solver\":\"closed-form\"") != std::string::npos);
  const std::string csv = read_file(dir / "solution.csv");
  CHECK(csv.rfind("t,alpha_0,alpha_1,X_0,X_1,S\n", 0) == 0);
}

TEST_CASE("sweep: csv shape and report count") {
  const fs::path config = write_config("sweep.json", kScenarioConfig);
  const fs::path dir = scratch_dir() / "sweep_out";
  const CommandResult result = run_command(
      cli_path() + " sweep --config " + config.string() +
      " --vary n --values 0,1,2 --grid 151 --out " + dir.string() +
      " 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"vary\":\"n\"") != std::string::npos);
  CHECK(result.output.find("\"rows\":3") != std::string::npos);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(csv.rfind(
            "swept_value,J_liq,J_opp_total,J_opp_each,sigma,sign_changes\n",
            0) == 0);
  CHECK(count_lines(csv) == 4);  // header + three swept values
}

TEST_CASE("verify: passes at the default tolerance, exit 3 when strict") {
  const fs::path config = write_config("verify.json", kScenarioConfig);
  const CommandResult ok = run_command(
      cli_path() + " verify --config " + config.string() + " 2>/dev/null");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"pass\":true") != std::string::npos);

  const CommandResult strict =
      run_command(cli_path() + " verify --config " + config.string() +
                  " --tol 1e-15 2>/dev/null");
  CHECK(strict.exit_code == 3);
  CHECK(strict.output.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("check-kernel: positive and non-positive verdicts") {
  const fs::path good = write_config(
      "kernel_good.json", R"({"kernel":{"kind":"exponential","rho":0.95}})");
  const CommandResult ok = run_command(
      cli_path() + " check-kernel --config " + good.string() + " 2>/dev/null");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"positive_type\":true") != std::string::npos);

  const fs::path bad = write_config(
      "kernel_bad.json",
      R"({"kernel":{"kind":"tabulated","samples":[[0.0,0.0],[1.0,1.0]]},)"
      R"("grid":100})");
  const CommandResult rejected = run_command(
      cli_path() + " check-kernel --config " + bad.string() + " 2>/dev/null");
  CHECK(rejected.exit_code == 4);
  CHECK(rejected.output.find("\"positive_type\":false") != std::string::npos);
}

TEST_CASE("exit 1: configuration problems") {
  // Nonexistent config file (rejected by argument validation).
  CHECK(run_command(cli_path() + " solve --config " +
                    (scratch_dir() / "missing.json").string() +
                    " 2>/dev/null")
            .exit_code == 1);

  // Malformed JSON.
  const fs::path broken = write_config("broken.json", "{not json");
  CHECK(run_command(cli_path() + " solve --config " + broken.string() +
                    " 2>/dev/null")
            .exit_code == 1);

  // Unknown top-level key.
  const fs::path typo = write_config(
      "typo.json", R"({"scenaro":{"n_opportunists":1,"gamma_liq":0.1,)"
                   R"("gamma_opp":0.1,"rho":0.95,"horizon":1.0}})");
  CHECK(run_command(cli_path() + " solve --config " + typo.string() +
                    " 2>/dev/null")
            .exit_code == 1);

  // Both a scenario and a game in one config.
  const fs::path both = write_config(
      "both.json",
      R"({"scenario":{"n_opportunists":1,"gamma_liq":0.1,"gamma_opp":0.1,)"
      R"("rho":0.95,"horizon":1.0},"game":{"horizon":1.0,)"
      R"("investors":[{"x":-1.0,"gamma":1.0}],)"
      R"("kernel":{"kind":"constant"}}})");
  CHECK(run_command(cli_path() + " solve --config " + both.string() +
                    " 2>/dev/null")
            .exit_code == 1);

  // Closed-form solver demands an exponential kernel.
  const fs::path mismatch = write_config(
      "mismatch.json", R"({"game":{"horizon":1.0,)"
                       R"("investors":[{"x":-1.0,"gamma":1.0}],)"
                       R"("kernel":{"kind":"constant"}},)"
                       R"("solver":"closed-form","grid":51})");
  CHECK(run_command(cli_path() + " solve --config " + mismatch.string() +
                    " 2>/dev/null")
            .exit_code == 1);
}

TEST_CASE("exit 2: near-singular equilibrium system") {
  // Vanishing instantaneous costs with a kernel that is identically zero
  // leave the collocation rows degenerate.
  const fs::path config = write_config(
      "singular.json",
      R"({"game":{"horizon":1.0,"investors":[{"x":-1.0,"gamma":1e-300},)"
      R"({"x":0.0,"gamma":1e-300}],)"
      R"("kernel":{"kind":"tabulated","samples":[[0.0,0.0],[1.0,0.0]]}},)"
      R"("grid":51})");
  const fs::path dir = scratch_dir() / "singular_out";
  const CommandResult result =
      run_command(cli_path() + " solve --config " + config.string() +
                  " --out " + dir.string() + " 2>&1");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("condition") != std::string::npos);
}
