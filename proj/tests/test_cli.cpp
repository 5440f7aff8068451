#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "toda/cli.hpp"

using namespace toda;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("toda_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("vertex of two empty partitions prints 1") {
  auto r = run({"vertex"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(run({"vertex", "--nu", "\xE2\x88\x85", "--nubar", "[]"}).out == "1\n");
  auto hook = run({"vertex", "--nu", "2,1", "--nubar", "1", "--form", "hook"});
  auto def = run({"vertex", "--nu", "[2,1]", "--nubar", "[1]"});
  CHECK(hook.code == 0);
  CHECK(hook.out == def.out);
}

TEST_CASE("tau table at degree zero has a single entry") {
  auto r = run({"tau", "--deg", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["entries"].size() == 1);
  CHECK(j["entries"][0]["gamma"] == "1");
  auto text = run({"tau", "--deg", "0"});
  CHECK(lines(text.out).size() == 2);
}

TEST_CASE("laxcheck reports every relation") {
  for (auto [a, b] : {std::pair{"1", "1"}, {"2", "3"}}) {
    auto r = run({"laxcheck", "--a", a, "--b", b, "--T", "6", "--deg", "5"});
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["schema"] == 1);
    std::set<std::string> names;
    for (const auto& c : j["checks"]) {
      names.insert(c["name"].get<std::string>());
      CHECK(c["pass"] == true);
    }
    for (const char* n : {"L0Lbar0-rel", "L0M0", "Lbar0Mbar0", "LM-rel", "tau-W", "tau-Wbar", "t1-Lax", "stability"})
      CHECK(names.count(n) == 1);
  }
}

TEST_CASE("usage errors exit with 2") {
  auto nc = run({"laxcheck", "--a", "2", "--b", "2"});
  CHECK(nc.code == 2);
  CHECK(nc.err.find("coprime") != std::string::npos);
  CHECK(nc.err.find("laxcheck") != std::string::npos);
  CHECK(run({"laxcheck", "--sign", "-"}).code == 2);
  CHECK(run({"tau", "--a", "1", "--b", "1", "--sign", "-"}).code == 2);
  CHECK(run({"tau", "--shift", "1/0"}).code == 2);
  CHECK(run({"tau", "--sign", "x"}).code == 2);
  CHECK(run({"vertex", "--nu", "[a]"}).code == 2);
  CHECK(run({"simulate", "--a", "2", "--b", "4"}).code == 2);
  CHECK(run({"simulate", "--dt", "0"}).code == 2);
  CHECK(run({"laxcheck", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"identities", "--vertex-weight", "-1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("identity suite") {
  auto r = run({"identities", "--vertex-weight", "3", "--symmetry-weight", "3", "--schur-weight", "3",
                "--shift-degree", "2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() >= 7);

  auto vacuous = run({"identities", "--vertex-weight", "0", "--symmetry-weight", "0", "--schur-weight", "0",
                      "--shift-degree", "0"});
  CHECK(vacuous.code == 0);
}

TEST_CASE("sign fault is caught with a counterexample") {
  auto r = run({"identities", "--fault", "sign", "--vertex-weight", "2", "--symmetry-weight", "2", "--schur-weight",
                "2", "--shift-degree", "1"});
  CHECK(r.code == 1);
  auto j = json::parse(r.out);
  CHECK(j["pass"] == false);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["pass"] == false) {
      found = true;
      CHECK(c["name"] == "vertex-q-inversion");
      CHECK(c["detail"].get<std::string>().find("lhs = ") != std::string::npos);
    }
  CHECK(found);
  auto lax = run({"laxcheck", "--T", "5", "--fault", "sign"});
  CHECK(lax.code == 1);
}

TEST_CASE("simulate on zero data writes a constant trajectory") {
  auto r = run({"simulate", "--init", "zero", "--sites", "3", "--t-end", "0.05", "--record-every", "10"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "t,u_0,u_1,u_2,u_3,u_4,u_5,H_1,H_2,H_3");
  auto tail = [](const std::string& row) { return row.substr(row.find(',')); };
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(tail(rows[i]) == tail(rows[1]));
}

TEST_CASE("simulate summary and determinism") {
  auto csv = temp_file("traj.csv"), summary = temp_file("summary.json");
  std::vector<std::string> args{"simulate",  "--t-end", "0.5",         "--csv", csv.string(), "--summary",
                                summary.string(), "--order-check", "--dt", "0.01"};
  auto r1 = run(args);
  const std::string c1 = slurp(csv), s1 = slurp(summary);
  auto r2 = run(args);
  CHECK(r1.code == r2.code);
  CHECK(slurp(csv) == c1);
  CHECK(slurp(summary) == s1);
  auto j = json::parse(s1);
  CHECK(j["schema"] == 1);
  CHECK(j["H0"].size() == 3);
  CHECK(j["max_drift"].get<double>() < 1e-8);
  CHECK(j["order_ratio"].is_number());
  std::filesystem::remove(csv);
  std::filesystem::remove(summary);

  auto t1 = run({"tau", "--a", "1", "--b", "2", "--deg", "2", "--format", "json"});
  auto t2 = run({"tau", "--a", "1", "--b", "2", "--deg", "2", "--format", "json"});
  CHECK(t1.out == t2.out);
}

TEST_CASE("config file sections with flag overrides") {
  auto cfg = temp_file("config.ini");
  {
    std::ofstream f(cfg);
    f << "[tau]\na = 1\nb = 2\ndeg = 1\nformat = json\n\n[vertex]\nnu = [1]\n";
  }
  auto fromfile = json::parse(run({"--config", cfg.string(), "tau"}).out);
  CHECK(fromfile["params"]["b"] == 2);
  CHECK(fromfile["entries"].size() == 4);
  auto overridden = json::parse(run({"--config", cfg.string(), "tau", "--b", "3"}).out);
  CHECK(overridden["params"]["b"] == 3);
  CHECK(overridden["params"]["deg"] == 1);
  auto v = run({"vertex", "--config", cfg.string()});
  CHECK(v.code == 0);
  CHECK(v.out != "1\n");
  CHECK(run({"--config", (cfg.string() + ".missing"), "tau"}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("partition arguments") {
  CHECK(cli::parse_partition("").empty());
  CHECK(cli::parse_partition("[]").empty());
  CHECK(cli::parse_partition("3, 1") == Partition{3, 1});
  CHECK_THROWS_AS(cli::parse_partition("[1,3]"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_partition("[x]"), std::invalid_argument);
}
