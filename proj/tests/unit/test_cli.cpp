#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "p3p/cli.hpp"

using namespace p3p;

namespace {
struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "p3p");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(P3P_TEST_DATA_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string column(const std::string& line, int idx) {
  std::istringstream in(line);
  std::string cell;
  for (int i = 0; i <= idx; ++i) std::getline(in, cell, ',');
  return cell;
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("p3p_unit_" + name);
}
}  // namespace

TEST_CASE("cli solve") {
  SUBCASE("axis scene") {
    const auto r = cli({"solve", "--scene", data("equilateral_axis.json")});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& t : j["triplets"]) {
      found |= std::abs(t["s1"].get<double>() - 1.1547005383792515) < 1e-9 &&
               std::abs(t["s2"].get<double>() - 1.1547005383792515) < 1e-9 &&
               std::abs(t["s3"].get<double>() - 1.1547005383792515) < 1e-9;
    }
    CHECK(found);
    CHECK(j["region"]["outside_union"].get<bool>());
  }
  SUBCASE("alpha on the A pair") {
    const auto r = cli({"solve", "--scene", data("on_toroid_A.json")});
    CHECK(r.code == 3);
    CHECK(r.err.find("pair A") != std::string::npos);
  }
  SUBCASE("degenerate triangle") {
    const auto r = cli({"solve", "--scene", data("degenerate.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("DegenerateTriangle") != std::string::npos);
  }
  SUBCASE("csv") {
    const auto r = cli({"--format", "csv", "solve", "--scene", data("synthesized.json")});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).front() == "s1,s2,s3,u,v,class,residual,root_multiplicity");
  }
  SUBCASE("angles with no solution") {
    const auto r = cli({"solve", "--scene", data("empty_angles.json")});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n_solutions"] == 0);
  }
  SUBCASE("bad usage") {
    CHECK(cli({"solve"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"--format", "xml", "solve", "--scene", data("synthesized.json")}).code == 2);
    CHECK(cli({"solve", "--scene", data("missing.json")}).code == 2);
  }
}

TEST_CASE("cli region") {
  SUBCASE("far field") {
    const auto r = cli({"region", "--scene", data("far_field.json")});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["outside_union"].get<bool>());
  }
  SUBCASE("planar center") {
    const auto r = cli({"region", "--scene", data("planar_center.json")});
    CHECK(r.code == 2);
    CHECK(r.err.find("PlanarCenter") != std::string::npos);
  }
  SUBCASE("just above the circumcenter") {
    const auto r = cli({"region", "--scene", data("near_circumcenter.json")});
    REQUIRE(r.code == 0);
    std::set<std::string> inside;
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& t : j["toroids"]) {
      if (t["status"] == "Inside") inside.insert(t["label"].get<std::string>());
    }
    CHECK(inside == std::set<std::string>{"T_A", "T_B", "T_C"});
  }
  SUBCASE("angles scene has no position") {
    CHECK(cli({"region", "--scene", data("on_toroid_A.json")}).code == 2);
  }
}

TEST_CASE("cli sweep") {
  SUBCASE("outer surface crossing") {
    const auto out = tmp("outer.csv");
    const auto r = cli({"--format", "csv", "--out", out.string(), "sweep", "--scene", data("sweep_outer.json")});
    REQUIRE(r.code == 0);
    const auto ev = lines(read_file(out.string() + ".events.csv"));
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == "toroid,t_cross,direction,count_before,count_after,verdict");
    CHECK(column(ev[1], 2) == "OutsideToInside");
    CHECK(column(ev[1], 5) == "ConsistentThm4");
    CHECK(std::stoi(column(ev[1], 4)) == std::stoi(column(ev[1], 3)) - 1);
    CHECK(lines(read_file(out.string())).size() == 1002);
  }
  SUBCASE("no crossing") {
    const auto out = tmp("none.csv");
    const auto evf = tmp("none.events.csv");
    const auto r = cli({"--format", "csv", "--out", out.string(), "sweep", "--scene", data("sweep_outside.json"),
                        "--events", evf.string()});
    REQUIRE(r.code == 0);
    CHECK(lines(read_file(evf.string())).size() == 1);
    const auto rows = lines(read_file(out.string()));
    REQUIRE(rows.size() == 1002);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(column(rows[i], 10) == column(rows[1], 10));
  }
  SUBCASE("json") {
    const auto r = cli({"sweep", "--scene", data("sweep_outer.json"), "--steps", "200"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["samples"].size() == 201);
    CHECK(j["events"].size() == 1);
  }
  SUBCASE("validation") {
    CHECK(cli({"sweep", "--scene", data("sweep_outer.json"), "--steps", "50"}).code == 2);
    CHECK(cli({"sweep", "--scene", data("sweep_outer.json"), "--delta", "0.5"}).code == 2);
    CHECK(cli({"sweep", "--scene", data("equilateral_axis.json")}).code == 2);
  }
}

TEST_CASE("cli verify") {
  SUBCASE("theorem 1") {
    const auto r = cli({"verify", "--theorem", "1", "--trials", "2000", "--seed", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["reports"][0]["violations"] == 0);
    CHECK(j["reports"][0]["trials"] == 2000);
  }
  SUBCASE("theorem 2 carries the S-solution check") {
    const auto r = cli({"verify", "--theorem", "2", "--trials", "300", "--triangle", "345"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["reports"].size() == 2);
  }
  SUBCASE("theorem 3 on an obtuse triangle") {
    const auto r = cli({"verify", "--theorem", "3", "--trials", "20", "--triangle", "obtuse"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["reports"][0]["exceptional"].get<int>() >= 0);
  }
  SUBCASE("same seed, same bytes") {
    const auto a = cli({"--seed", "4", "verify", "--theorem", "lemmas", "--trials", "300"});
    const auto b = cli({"--seed", "4", "verify", "--theorem", "lemmas", "--trials", "300"});
    CHECK(a.out == b.out);
  }
  SUBCASE("errors") {
    CHECK(cli({"verify", "--theorem", "9"}).code == 2);
    CHECK(cli({"verify", "--theorem", "1", "--trials", "0"}).code == 2);
    CHECK(cli({"verify", "--theorem", "1", "--triangle", "square"}).code == 2);
  }
}

TEST_CASE("cli oracle") {
  SUBCASE("synthesized scene") {
    const auto r = cli({"oracle", "--scene", data("synthesized.json")});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["solver_count"] == j["oracle_count"]);
    CHECK(j["match"].get<bool>());
    CHECK(j["max_distance"].get<double>() < 1e-4 * 1.2);
  }
  SUBCASE("coarse grid") { CHECK(cli({"oracle", "--scene", data("synthesized.json"), "--grid", "32"}).code == 2); }
  SUBCASE("no solutions") {
    const auto r = cli({"oracle", "--scene", data("empty_angles.json"), "--grid", "128"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["solver_count"] == 0);
    CHECK(j["oracle_count"] == 0);
  }
}
