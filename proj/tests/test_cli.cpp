#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(AUGLS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) output += buf;
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("augls_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("kellogg-params prints the solved parameters") {
  const CommandResult res = run_cli("kellogg-params --gamma 0.5 --rho 0.7853981633974483");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.output);
  CHECK(std::abs(j["R"].get<double>() - 5.82842712474619) <= 1e-10);
  CHECK(std::abs(j["phi"].get<double>() - (-2.3561944901923448)) <= 1e-10);
  CHECK(j["residual"].get<double>() <= 1e-12);
  CHECK(j["constraints_ok"].get<bool>());
}

TEST_CASE("run writes history, summary, and mesh artifacts") {
  const fs::path dir = temp_dir("run");
  const CommandResult res = run_cli("run --method aug2 --data 4 --bc dirichlet "
                                    "--fixed-iterations 8 --out " + dir.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(fs::exists(dir / "history.csv"));
  REQUIRE(fs::exists(dir / "summary.json"));
  REQUIRE(fs::exists(dir / "final_mesh.vtk"));

  const json summary = json::parse(read_file(dir / "summary.json"));
  CHECK(summary["schema_version"] == 1);
  CHECK(summary["config"]["method"] == "aug2");
  CHECK(summary["qma"]["satisfied"] == false);
  CHECK(summary["final"]["rel_err"].get<double>() > 0.0);

  const std::string history = read_file(dir / "history.csv");
  CHECK(history.rfind("k,n,dofs,eta,true_error,eff_index,rel_err", 0) == 0);
  // 9 rows + header
  CHECK(std::count(history.begin(), history.end(), '\n') == 10);
}

TEST_CASE("identical configurations produce identical histories") {
  const fs::path dir1 = temp_dir("det1");
  const fs::path dir2 = temp_dir("det2");
  const std::string flags = "run --method aug1 --data 4 --fixed-iterations 10 --out ";
  REQUIRE(run_cli(flags + dir1.string()).exit_code == 0);
  REQUIRE(run_cli(flags + dir2.string()).exit_code == 0);
  CHECK(read_file(dir1 / "history.csv") == read_file(dir2 / "history.csv"));
}

TEST_CASE("run converges on the benchmark and lands in the expected band") {
  const fs::path dir = temp_dir("aug1d4");
  const CommandResult res =
      run_cli("run --method aug1 --data 4 --bc dirichlet --out " + dir.string());
  REQUIRE(res.exit_code == 0);
  const json summary = json::parse(read_file(dir / "summary.json"));
  CHECK(summary["stopping_reason"] == "converged");
  const double eff = summary["final"]["eff_index"].get<double>();
  CHECK(eff >= 0.95);
  CHECK(eff <= 1.15);
  CHECK(summary["final"]["rel_err"].get<double>() <= 0.010);
}

TEST_CASE("mixed-boundary least-squares run shows the low effectivity index") {
  const fs::path dir = temp_dir("lsmix");
  const CommandResult res =
      run_cli("run --method ls --data 4 --bc mixed --max-iter 40 --out " + dir.string());
  REQUIRE(res.exit_code == 0);
  const json summary = json::parse(read_file(dir / "summary.json"));
  CHECK(summary["final"]["eff_index"].get<double>() <= 0.65);
}

TEST_CASE("table command writes per-row verdicts") {
  const fs::path dir = temp_dir("table4");
  const CommandResult res = run_cli("table --which 4 --out " + dir.string());
  // exit code 0 when every row is in band, 3 otherwise; both produce the csv
  REQUIRE((res.exit_code == 0 || res.exit_code == 3));
  const std::string csv = read_file(dir / "table4.csv");
  CHECK(csv.rfind("data,method,space,bc,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
  CHECK(csv.find("aug2,bdm1-p2,dirichlet") != std::string::npos);
  const bool has_verdict =
      csv.find(",pass\n") != std::string::npos || csv.find(",fail\n") != std::string::npos;
  CHECK(has_verdict);
}

TEST_CASE("mesh-dump writes a vtk file") {
  const fs::path dir = temp_dir("mesh");
  const fs::path out = dir / "mesh.vtk";
  const CommandResult res = run_cli("mesh-dump --n 2 --refine 1 --out " + out.string());
  REQUIRE(res.exit_code == 0);
  const std::string vtk = read_file(out);
  CHECK(vtk.rfind("# vtk DataFile", 0) == 0);
  CHECK(vtk.find("CELL_TYPES 64") != std::string::npos);
}

TEST_CASE("usage errors exit with the usage status") {
  CHECK(run_cli("run --method bogus --data 4").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("table --which 11").exit_code == 2);
}

TEST_CASE("numerical failures exit with the numerical status") {
  // gamma outside (0,2) cannot be solved
  CHECK(run_cli("kellogg-params --gamma 2.5").exit_code == 3);
}

}  // TEST_SUITE
