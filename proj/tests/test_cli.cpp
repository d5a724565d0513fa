#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wflo/io.hpp"

using namespace wflo;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("wflo_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string command = std::string(WFLO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: cases and argument validation") {
  CHECK(run_cli("cases") == 0);
  CHECK(run_cli("optimize --case XZ --out /tmp/wflo_cli_never") != 0);
  CHECK(run_cli("optimize --case IA --layout hexagon --out /tmp/wflo_cli_never") != 0);
  CHECK(run_cli("optimize --case IA --algo annealing --out /tmp/wflo_cli_never") != 0);
  CHECK(run_cli("optimize --unknown-flag 3") != 0);
  CHECK_FALSE(fs::exists("/tmp/wflo_cli_never/manifest.txt"));  // no partial outputs
}

TEST_CASE("cli: optimize writes the full artifact set deterministically") {
  const fs::path dir = fresh_dir("optimize");
  const std::string flags = "optimize --case IA --layout aligned --algo rlga --seed 1 "
                            "--generations 300 --out ";
  REQUIRE(run_cli(flags + (dir / "a").string()) == 0);
  REQUIRE(run_cli(flags + (dir / "b").string()) == 0);

  for (const char* name : {"manifest.txt", "convergence.csv", "best_layout.csv", "qtable.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / "a" / name));
    // reruns with identical flags are byte-identical
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }

  const KeyValueMap manifest = read_key_value_file(dir / "a" / "manifest.txt");
  CHECK(manifest.at("seed") == "1");
  CHECK(manifest.at("case") == "IA");
  CHECK(manifest.at("algo") == "rlga");
  CHECK(manifest.at("generations") == "300");
  CHECK(manifest.at("alpha") == "0.1");  // defaults are echoed too

  SECTION("ga runs omit the agent outputs") {
    REQUIRE(run_cli("optimize --case IA --layout aligned --algo ga --seed 1 --generations 100 "
                    "--out " + (dir / "ga").string()) == 0);
    CHECK(fs::exists(dir / "ga" / "convergence.csv"));
    CHECK_FALSE(fs::exists(dir / "ga" / "qtable.csv"));
    const std::string header = slurp(dir / "ga" / "convergence.csv");
    CHECK(header.rfind("generation,best_fitness,best_fobj,best_power_kw,n_turbines\n", 0) == 0);
  }
}

TEST_CASE("cli: a manifest alone reproduces the run byte for byte") {
  const fs::path dir = fresh_dir("manifest_rerun");
  REQUIRE(run_cli("optimize --case IA --layout staggered --algo rlga --seed 9 "
                  "--generations 250 --epsilon 0.2 --out " + (dir / "orig").string()) == 0);
  REQUIRE(run_cli("optimize --config " + (dir / "orig" / "manifest.txt").string() +
                  " --out " + (dir / "rerun").string()) == 0);
  for (const char* name : {"manifest.txt", "convergence.csv", "best_layout.csv", "qtable.csv"}) {
    CAPTURE(name);
    CHECK(slurp(dir / "orig" / name) == slurp(dir / "rerun" / name));
  }

  SECTION("explicit flags override the config file") {
    REQUIRE(run_cli("optimize --config " + (dir / "orig" / "manifest.txt").string() +
                    " --seed 10 --out " + (dir / "override").string()) == 0);
    const KeyValueMap manifest = read_key_value_file(dir / "override" / "manifest.txt");
    CHECK(manifest.at("seed") == "10");
    CHECK(manifest.at("epsilon") == "0.2");  // config value survives
    CHECK(slurp(dir / "orig" / "convergence.csv") !=
          slurp(dir / "override" / "convergence.csv"));
  }
  SECTION("unknown config keys are rejected") {
    std::ofstream(dir / "bad.conf") << "seeed=3\n";
    CHECK(run_cli("optimize --config " + (dir / "bad.conf").string() + " --out " +
                  (dir / "bad_out").string()) != 0);
  }
}

TEST_CASE("cli: evaluate") {
  const fs::path dir = fresh_dir("evaluate");

  SECTION("single wake-free turbine") {
    std::ofstream(dir / "one.csv") << "index,x,y\n0,1000,1000\n";
    REQUIRE(run_cli("evaluate --layout-file " + (dir / "one.csv").string() + " --case IA --out " +
                    (dir / "report").string()) == 0);
    const std::string report = slurp(dir / "report" / "report.csv");
    CHECK(report.find("1,518.4") != std::string::npos);  // N=1, P=518.4 kW
    CHECK(report.find(",1\n") != std::string::npos);     // eta exactly 1
  }
  SECTION("two-turbine inline layout reproduces the wake composition") {
    std::ofstream(dir / "two.csv") << "index,x,y\n0,1000,1000\n1,1000,1200\n";
    REQUIRE(run_cli("evaluate --layout-file " + (dir / "two.csv").string() + " --case IA --out " +
                    (dir / "report2").string()) == 0);
    const std::string report = slurp(dir / "report2" / "report.csv");
    CHECK(report.find("2,752.845") != std::string::npos);
  }
  SECTION("rejects empty and out-of-extent layouts") {
    std::ofstream(dir / "empty.csv") << "index,x,y\n";
    CHECK(run_cli("evaluate --layout-file " + (dir / "empty.csv").string() + " --case IA") != 0);
    std::ofstream(dir / "outside.csv") << "index,x,y\n0,2500,100\n";
    CHECK(run_cli("evaluate --layout-file " + (dir / "outside.csv").string() + " --case IA") !=
          0);
    CHECK(run_cli("evaluate --layout-file " + (dir / "missing.csv").string() + " --case IA") !=
          0);
  }
}

TEST_CASE("cli: field") {
  const fs::path dir = fresh_dir("field");
  std::ofstream(dir / "empty.csv") << "index,x,y\n";
  const fs::path out = dir / "field.csv";
  REQUIRE(run_cli("field --layout-file " + (dir / "empty.csv").string() +
                  " --case IA --direction 0 --resolution 10 --out " + out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 100);
  // empty farm: free stream everywhere
  CHECK(text.find("100,100,12\n") != std::string::npos);
  CHECK(run_cli("field --layout-file " + (dir / "empty.csv").string() +
                " --case IA --resolution 1 --out " + out.string()) != 0);
}

TEST_CASE("cli: bench pairs seeds and summarizes both algorithms") {
  const fs::path dir = fresh_dir("bench");
  REQUIRE(run_cli("bench --case IA --layout aligned --seeds 3 --generations 150 --out " +
                  dir.string()) == 0);

  const std::string summary = slurp(dir / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 6);  // 2 algos x 3 seeds
  for (int seed = 1; seed <= 3; ++seed) {
    CHECK(fs::exists(dir / ("ga_seed" + std::to_string(seed) + ".csv")));
    CHECK(fs::exists(dir / ("rlga_seed" + std::to_string(seed) + ".csv")));
  }

  SECTION("ga rows are unchanged by the rlga side (stream isolation)") {
    const fs::path solo = fresh_dir("bench_solo");
    REQUIRE(run_cli("optimize --case IA --layout aligned --algo ga --seed 2 --generations 150 "
                    "--out " + solo.string()) == 0);
    CHECK(slurp(solo / "convergence.csv") == slurp(dir / "ga_seed2.csv"));
  }
}
