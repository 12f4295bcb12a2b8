// End-to-end tests of the varwave binary: spawn it, inspect exit codes and
// emitted files.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "varwave_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(VARWAVE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int code = -1;
#ifdef _WIN32
  code = raw;
#else
  if (WIFEXITED(raw)) code = WEXITSTATUS(raw);
#endif
  return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("catalog --json lists eleven mappings") {
  RunResult r = run("catalog --json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.size() == 11);
  CHECK(j[0]["id"] == "M1");
  CHECK(j[3]["id"] == "Q");
  CHECK(j[10]["id"] == "C2");
}

TEST_CASE("classify reads off the delta family") {
  RunResult r = run("classify --c \"(x^2-4)/(t^2-4)\"");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["family"] == "delta");
  CHECK(std::abs(j["delta"].get<double>() - 4.0) < 1e-9);

  RunResult r2 = run("classify --c \"x^2\"");
  CHECK(json::parse(r2.out)["family"] == "quadratic-x");

  RunResult r3 = run("classify --c \"1+x^2\"");
  CHECK(json::parse(r3.out)["family"] == "profile");

  RunResult r4 = run("classify --c \"x^2*t\"");
  CHECK(json::parse(r4.out)["family"] == "general");
}

TEST_CASE("solve writes a csv with one header row and a json sidecar") {
  const fs::path csv = work_dir() / "solve_out.csv";
  RunResult r = run("solve --family quad17 --F \"sin(s)\" --G \"cos(s)\" --grid "
                    "\"x:1:2:8,t:0:1:8\" --out " +
                    csv.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(csv));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,t,u");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 64);

  REQUIRE(fs::exists(csv.string() + ".json"));
  std::ifstream meta(csv.string() + ".json");
  json j = json::parse(meta);
  CHECK(j["family"] == "quad17");
  CHECK(j["failures"] == 0);
}

TEST_CASE("solve supports the delta family and records failures near singular lines") {
  RunResult r = run("solve --family delta --delta 1 --F s --G s --grid "
                    "\"x:1.5:2.5:4,t:1.5:2.5:4\" --json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["family"] == "delta");
  CHECK(j["rows"] == 16);
}

TEST_CASE("ivp recovers the constant solution") {
  RunResult r = run("ivp --phi 1 --psi 0 --a 1 --b 4 --grid \"x:1.5:2.5:4,t:0:0.1:3\"");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,t,u");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    CHECK(std::abs(std::stod(line.substr(last + 1)) - 1.0) < 1e-9);
  }
}

TEST_CASE("verify subsets pass and injections flip the exit code") {
  CHECK(run("verify --suite roundtrip --trials 5").exit_code == 0);
  CHECK(run("verify --suite integral --trials 5").exit_code == 0);
  CHECK(run("verify --suite integral --inject scale-kappa --trials 5").exit_code == 1);
  CHECK(run("verify --suite roundtrip --inject flip-inverse-sign --trials 5").exit_code == 1);
}

TEST_CASE("verify json reports are byte-identical across runs") {
  RunResult a = run("verify --suite integral --trials 5 --json");
  RunResult b = run("verify --suite integral --trials 5 --json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("compare emits the convergence table and a fitted order") {
  RunResult r = run("compare --family quad17 --grid \"x:1:2:16,t:0:0.2:2\" --json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  const double order = j["order"].get<double>();
  CHECK(order > 1.5);
  CHECK(order < 2.5);
}

TEST_CASE("usage errors exit 2, domain errors exit 1") {
  CHECK(run("nonsense-subcommand").exit_code == 2);
  CHECK(run("solve --no-such-flag").exit_code == 2);
  CHECK(run("solve --family bogus --grid \"x:1:2:4,t:0:1:4\"").exit_code == 1);
  CHECK(run("solve --family quad17 --grid \"x:2:1:4,t:0:1:4\"").exit_code == 1);
  CHECK(run("verify --suite bogus").exit_code == 1);
  // grid entirely on the singular line x=0
  RunResult r = run("solve --family quad17 --F s --G s --grid \"x:0:0.0000001:2,t:0:1:2\"");
  CHECK(r.exit_code == 1);
}

TEST_CASE("config file supplies defaults, flags override") {
  const fs::path cfg = work_dir() / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"json({"family":"quad17","F":"sin(s)","G":"cos(s)","grid":"x:1:2:4,t:0:1:4"})json";
  }
  RunResult r = run("--config " + cfg.string() + " solve --json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["family"] == "quad17");
  CHECK(j["F"] == "sin(s)");

  RunResult r2 = run("--config " + cfg.string() + " solve --F \"s^2\" --json");
  REQUIRE(r2.exit_code == 0);
  CHECK(json::parse(r2.out)["F"] == "s^2");
}
