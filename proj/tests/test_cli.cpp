#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

fs::path workdir() {
  auto dir = fs::temp_directory_path() / "cobound_cli_tests";
  fs::create_directories(dir);
  return dir;
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const fs::path out = workdir() / "stdout.txt";
  const std::string cmd = std::string(COBOUND_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

}  // namespace

TEST_CASE("build, hk and bounds") {
  REQUIRE(run("build --family partition 2 2 -o " + path("oct.json")).code == 0);
  Run hk = run("hk " + path("oct.json") + " --dim 0");
  REQUIRE(hk.code == 0);
  auto j = nlohmann::json::parse(hk.out);
  CHECK(j["value"] == "1/1");
  CHECK(j["exact"] == true);
  CHECK(j["manifest"]["command"] == "hk");
  CHECK(j["manifest"]["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);

  Run threaded = run("hk " + path("oct.json") + " --dim 1 --threads 3 --no-prune");
  Run single = run("hk " + path("oct.json") + " --dim 1");
  CHECK(nlohmann::json::parse(threaded.out)["value"] == nlohmann::json::parse(single.out)["value"]);
  CHECK(nlohmann::json::parse(threaded.out)["witness"] == nlohmann::json::parse(single.out)["witness"]);

  REQUIRE(run("build --family simplex 3 -o " + path("d3.json") + " --facets " + path("d3.txt")).code == 0);
  CHECK(nlohmann::json::parse(run("hk " + path("d3.json") + " --dim 0").out)["value"] == "4/3");
  CHECK(nlohmann::json::parse(run("hk " + path("d3.txt") + " --dim 0").out)["value"] == "4/3");

  Run bounds = run("bounds --family partition 3 2 --dim 1");
  REQUIRE(bounds.code == 0);
  bool found = false;
  const auto parsed = nlohmann::json::parse(bounds.out);
  for (const auto& c : parsed["certificates"])
    if (c["name"] == "expcolor") found = c["value"] == "1/1";
  CHECK(found);
  CHECK(run("bounds " + path("oct.json") + " --dim 0").code == 0);
}

TEST_CASE("certify") {
  REQUIRE(run("build --family building 1 2 -o " + path("fano.json")).code == 0);
  Run c = run("certify " + path("fano.json") + " --kmax 0");
  REQUIRE(c.code == 0);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["passed"] == true);
  for (const auto& cert : j["levels"][0]["certificates"]) {
    const std::string v = cert["value"];
    const auto slash = v.find('/');
    CHECK(std::stoll(v.substr(0, slash)) * 6 >= std::stoll(v.substr(slash + 1)));
  }

  std::ofstream(path("two_edges.txt")) << "a b\nb c\n";
  Run fail = run("certify " + path("two_edges.txt") + " --kmax 0");
  CHECK(fail.code == 4);
  CHECK(nlohmann::json::parse(fail.out)["passed"] == false);
}

TEST_CASE("test subcommand") {
  REQUIRE(run("build --family simplex 2 -o " + path("d2.json")).code == 0);
  std::ofstream(path("v.txt")) << "0\n";
  Run t = run("test " + path("d2.json") + " " + path("v.txt") + " --dim 0 --trials 20000 --seed 4");
  REQUIRE(t.code == 0);
  auto j = nlohmann::json::parse(t.out);
  CHECK(j["expected_rate"] == "2/3");
  CHECK(j["consistent_4sigma"] == true);
  CHECK(j["sound"] == true);
  Run again = run("test " + path("d2.json") + " " + path("v.txt") + " --dim 0 --trials 20000 --seed 4 --threads 3");
  CHECK(nlohmann::json::parse(again.out)["rejections"] == j["rejections"]);
}

TEST_CASE("explore-conjecture emits CSV") {
  Run e = run("explore-conjecture 2");
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("q,f_0,f_1,exact,h_exact", 0) == 0);
  CHECK(e.out.find("2,14,21,true,2/3") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("hk").code == 1);
  CHECK(run("hk " + path("nope.json") + " --dim 0").code == 2);
  CHECK(run("build --family building 1 4").code == 2);
  std::ofstream(path("bad.txt")) << "1 2 3\n4 5\n";
  CHECK(run("hk " + path("bad.txt") + " --dim 0").code == 2);
  REQUIRE(run("build --family building 1 3 -o " + path("f3.json")).code == 0);
  CHECK(run("hk " + path("f3.json") + " --dim 0 --budget 1000").code == 3);
  const std::string env = "COBOUND_BUDGET=1000 ";
  const int status = std::system((env + COBOUND_CLI + " hk " + path("f3.json") + " --dim 0 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 3);
}
