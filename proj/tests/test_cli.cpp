#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(ANTS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kReport = "cli_report.json";

}  // namespace

TEST_CASE("verify passes and writes a schema-complete report") {
  CHECK(run(std::string("verify --out ") + kReport) == 0);
  auto doc = nlohmann::json::parse(slurp(kReport));
  CHECK(doc["all_pass"] == true);
  REQUIRE(doc["checks"].is_array());
  CHECK(doc["checks"].size() > 30);
  bool saw_eq15 = false;
  for (const auto& c : doc["checks"]) {
    for (const char* key : {"check_id", "paper_anchor", "status",
                            "residual_or_value", "tolerance", "runtime_ms"})
      CHECK(c.contains(key));
    CHECK(c["status"] == "pass");
    if (c["check_id"] == "eq15-structure-equations") {
      saw_eq15 = true;
      CHECK(c["residual_or_value"] == "0");
      CHECK(c["tolerance"] == "0");
    }
  }
  CHECK(saw_eq15);
}

TEST_CASE("mutated structure constant fails the run") {
  CHECK(run("verify --mutate-eq15 --out cli_mutated.json") == 1);
  auto doc = nlohmann::json::parse(slurp("cli_mutated.json"));
  CHECK(doc["all_pass"] == false);
}

TEST_CASE("only filter selects a subset") {
  CHECK(run("verify --only extremals --out cli_subset.json") == 0);
  auto doc = nlohmann::json::parse(slurp("cli_subset.json"));
  REQUIRE(doc["checks"].size() > 0);
  for (const auto& c : doc["checks"]) {
    std::string id = c["check_id"];
    CHECK(id.rfind("extremals", 0) == 0);
  }
}

TEST_CASE("identical seeds produce byte-identical reports") {
  CHECK(run("verify --seed 777 --out cli_a.json") == 0);
  CHECK(run("verify --seed 777 --out cli_b.json") == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));
}

TEST_CASE("analyze reports") {
  CHECK(run("analyze rule-a --format text --out cli_rule_a.txt") == 0);
  auto a = slurp("cli_rule_a.txt");
  CHECK(contains(a, "growth: (3,6)"));
  CHECK(contains(a, "symmetry dimension: 8"));

  CHECK(run("analyze rule-b --format text --out cli_rule_b.txt") == 0);
  auto b = slurp("cli_rule_b.txt");
  CHECK(contains(b, "growth: (3,5,5)"));
  CHECK(contains(b, "first integral: 32A"));

  CHECK(run("analyze sqrt-b --format text --out cli_sqrt_b.txt") == 0);
  CHECK(contains(slurp("cli_sqrt_b.txt"), "growth: (2,3,5)"));

  CHECK(run("analyze no-such-model --format text --out cli_unknown.txt") == 2);
}

TEST_CASE("simulate emits trajectory and manifest") {
  CHECK(run("simulate --rule b --out cli_traj.csv") == 0);
  auto csv = slurp("cli_traj.csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "t,x1,y1,x2,y2,x3,y3,l1,l2,l3,l4,l5,l6,u1,u2,u3,inv_sum,inv_prod,"
        "bary_x,bary_y");
  auto manifest = nlohmann::json::parse(slurp("cli_traj.csv.manifest.json"));
  CHECK(manifest.contains("seed"));
  CHECK(manifest.contains("step"));
  CHECK(manifest["flagged"] == false);

  // an initial covector target violating u1+u2+u3 = 0 is rejected up front
  CHECK(run("simulate --rule b --u0 1,1,1 --out cli_bad.csv") == 2);
}

TEST_CASE("quartic and ellipse commands") {
  CHECK(run("quartic --cartan 1 --out cli_q1.txt") == 0);
  CHECK(contains(slurp("cli_q1.txt"), "no_real"));

  CHECK(run("quartic --coeffs 0,1,0,-1,0 --out cli_q2.txt") == 0);
  CHECK(contains(slurp("cli_q2.txt"), "four_distinct_real"));

  CHECK(run("ellipse --triangle 0,0,1,0,0,1 --u 1,1,-2 --out cli_e.json") ==
        0);
  auto e = nlohmann::json::parse(slurp("cli_e.json"));
  CHECK(e["center"][0] == "1/3");
  CHECK(e["center"][1] == "1/3");
  CHECK(e["speed_constant"] == "3");
}
