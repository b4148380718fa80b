#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "faircon/io.hpp"
#include "helpers.hpp"

using namespace faircon;
using testing::q;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "faircon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("faircon_cli_" + std::to_string(counter()++))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("generate") {
  TempDir dir;
  Run r = cli({"generate", "partition-ef", "--set", "1,2,3", "--out", dir / "p.json"});
  CHECK(r.code == 0);
  Instance inst = load_instance(dir / "p.json");
  CHECK(inst.agents() == 3);
  CHECK(inst.tasks() == 4);
  CHECK(read_json_file(dir / "p.json.manifest.json")["generator"] == "partition-ef");

  CHECK(cli({"generate", "pof-sqrt", "--n", "9", "--out", dir / "s.json"}).code == 0);
  CHECK(load_instance(dir / "s.json").tasks() == 9);

  CHECK(cli({"generate", "random", "--n", "3", "--m", "4", "--seed", "7", "--out", dir / "a.json"}).code == 0);
  CHECK(cli({"generate", "random", "--n", "3", "--m", "4", "--seed", "7", "--out", dir / "b.json"}).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  Run g = cli({"generate", "independent-set", "--vertices", "3", "--edges", "0-1,1-2"});
  CHECK(g.code == 0);
  CHECK(Json::parse(g.out)["n"] == 3);

  CHECK(cli({"generate", "partition-ef", "--set", "1,x"}).code == 3);
  CHECK(cli({"generate", "independent-set", "--vertices", "3", "--edges", "0-"}).code == 3);
  CHECK(cli({"generate", "pof-sqrt", "--n", "4"}).code == 3);
  CHECK(cli({"generate", "mystery"}).code == 3);
  CHECK(cli({"frobnicate"}).code == 3);
}

TEST_CASE("solve and verify") {
  TempDir dir;
  REQUIRE(cli({"generate", "example", "--name", "5.2", "--eps", "0.01", "--out", dir / "ex.json"}).code == 0);

  SUBCASE("exact EF on the two-agent example") {
    Run r = cli({"solve", dir / "ex.json", "--method", "exact-ef", "--out", dir / "sol.json"});
    CHECK(r.code == 0);
    Json doc = read_json_file(dir / "sol.json");
    CHECK(doc["revenue"].get<double>() == doctest::Approx(0.09).epsilon(1e-9));
    CHECK(doc["verified"] == true);
    CHECK(cli({"verify", dir / "ex.json", dir / "sol.json", "--notion", "ef"}).code == 0);

    Run exact = cli({"solve", dir / "ex.json", "--method", "exact-ef", "--exact-arith"});
    CHECK(Json::parse(exact.out)["revenue"] == "9/100");
  }
  SUBCASE("every method re-verifies") {
    REQUIRE(cli({"generate", "random", "--n", "2", "--m", "3", "--seed", "11", "--out", dir / "r.json"}).code == 0);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"greedy", "ef"},        {"exact-ef", "ef"},       {"exact-eps-ef", "eps-ef"}, {"exact-ef1", "ef1"},
        {"exact-efs", "efs"},    {"dp-eps-ef", "eps-ef"},  {"dp-ef1", "ef1"},          {"round-robin", "ef1"}};
    for (const auto& [method, notion] : runs) {
      CAPTURE(method);
      const std::string out = dir / (method + ".json");
      Run s = cli({"solve", dir / "r.json", "--method", method, "--eps", "0.25", "--f-bits", "6", "--out", out});
      CHECK(s.code == 0);
      Run v = cli({"verify", dir / "r.json", out, "--notion", notion, "--eps", "0.25"});
      CHECK(v.code == 0);
    }
  }
  SUBCASE("single agent greedy equals the optimum") {
    REQUIRE(cli({"generate", "random", "--profile", "single-agent", "--m", "4", "--out", dir / "one.json"}).code == 0);
    Json doc = Json::parse(cli({"solve", dir / "one.json", "--method", "greedy", "--exact-arith"}).out);
    CHECK(doc["revenue"] == doc["opt"]);
  }
  SUBCASE("envious contract fails verification") {
    write_json_file(dir / "bad.json", Json{{"assignment", {1}}, {"alpha", {"1/2"}}});
    Run v = cli({"verify", dir / "ex.json", dir / "bad.json", "--notion", "ef"});
    CHECK(v.code == 1);
    Json rep = Json::parse(v.out);
    CHECK(rep["ok"] == false);
    CHECK(rep["ef"]["slack"].size() == 2);
  }
  SUBCASE("bare contract takes the agent count from the instance") {
    write_json_file(dir / "bare.json", Json{{"assignment", {0}}, {"alpha", {"1/10"}}});
    CHECK(cli({"verify", dir / "ex.json", dir / "bare.json", "--notion", "ef"}).code == 0);
  }
  SUBCASE("subsidy contract from the example verifies") {
    write_json_file(dir / "efs.json", Json{{"assignment", {1}}, {"alpha", {"3/5"}}, {"subsidies", {"1/20", "0"}}});
    CHECK(cli({"verify", dir / "ex.json", dir / "efs.json", "--notion", "efs"}).code == 0);
    CHECK(cli({"verify", dir / "ex.json", dir / "efs.json", "--notion", "ef"}).code == 1);
  }
  SUBCASE("errors map to exit codes") {
    CHECK(cli({"solve", dir / "ex.json", "--method", "dp-eps-ef"}).code == 3);
    CHECK(cli({"solve", dir / "ex.json", "--method", "nope"}).code == 3);
    CHECK(cli({"solve", dir / "missing.json"}).code == 3);
    CHECK(cli({"solve", dir / "ex.json", "--method", "exact-ef", "--budget-lps", "1"}).code == 2);
    CHECK(cli({"solve", dir / "ex.json", "--method", "dp-eps-ef", "--eps", "0.05", "--budget-states", "3"}).code ==
          2);
    CHECK(cli({"verify", dir / "ex.json", dir / "ex.json"}).code == 3);
    write_json_file(dir / "plain.json", Json{{"assignment", {1}}, {"alpha", {"1/2"}}});
    CHECK(cli({"verify", dir / "ex.json", dir / "plain.json", "--notion", "efs"}).code == 3);
    CHECK(cli({"verify", dir / "ex.json", dir / "plain.json", "--notion", "fair"}).code == 3);
  }
}

TEST_CASE("bench") {
  TempDir dir;
  write_json_file(dir / "cfg.json", Json{{"families",
                                          {{{"family", "example"}, {"name", "5.2"}, {"eps", {"0.01", "0.001"}}},
                                           {{"family", "single-agent"}, {"m", 3}, {"count", 2}},
                                           {{"family", "random"}, {"n", 2}, {"m", 2}, {"count", 3}, {"seed", 5}}}},
                                         {"ef", "exact"},
                                         {"ef1", "exact"}});
  Run r = cli({"bench-pof", dir / "cfg.json", "--out", dir / "out.csv"});
  CHECK(r.code == 0);
  std::ifstream in(dir / "out.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "instance_id,n,m,opt,opt_ef,opt_ef1_lb,ratio_ef,ratio_ef1,method,runtime_states");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  REQUIRE(rows.size() == 7);
  CHECK(std::stod(rows[0][6]) == doctest::Approx(0.36).epsilon(1e-9));
  CHECK(std::stod(rows[1][6]) == doctest::Approx(0.036).epsilon(1e-9));
  CHECK(rows[2][6] == "1");
  CHECK(rows[3][6] == "1");
  for (std::size_t t = 4; t < 7; ++t) CHECK(std::stod(rows[t][7]) >= std::stod(rows[t][6]));
  // same config, same bytes
  CHECK(cli({"bench-pof", dir / "cfg.json", "--out", dir / "again.csv"}).code == 0);
  CHECK(slurp(dir / "out.csv") == slurp(dir / "again.csv"));

  write_json_file(dir / "half.json",
                  Json{{"families", {{{"family", "pof-sqrt"}, {"n", {9}}, {"ef", "bogus"}},
                                     {{"family", "example"}, {"name", "5.2"}, {"eps", "0.01"}}}}});
  Run half = cli({"bench-pof", dir / "half.json"});
  CHECK(half.code == 0);
  CHECK(half.out.find("pof-sqrt-n9,9,9,,,,,,failed,0") != std::string::npos);

  write_json_file(dir / "none.json", Json{{"families", {{{"family", "pof-sqrt"}, {"n", {9}}, {"ef", "bogus"}}}}});
  CHECK(cli({"bench-pof", dir / "none.json"}).code == 3);
  write_json_file(dir / "broken.json", Json{{"families", 3}});
  CHECK(cli({"bench-pof", dir / "broken.json"}).code == 3);
}
