#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace cohoforge;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, bool cache = false) {
  if (!cache) args.push_back("--no-cache");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("dims") {
  CHECK(json_of({"dims", "Q8", "--p", "2", "--max-degree", "8"})["result"]["dims"] ==
        nlohmann::json::array({1, 2, 2, 1, 1, 2, 2, 1, 1}));
  CHECK(json_of({"dims", "C1", "--max-degree", "3"})["result"]["dims"] == nlohmann::json::array({1, 0, 0, 0}));
  CHECK(json_of({"dims", "A2(2;1)", "--max-degree", "4"})["result"]["dims"] ==
        nlohmann::json::array({1, 2, 3, 4, 5}));
  auto text = run({"dims", "Q8", "--max-degree", "8"});
  CHECK(text.code == 0);
  CHECK(text.out.find("dims: (1,2,2,1,1,2,2,1,1)") != std::string::npos);
  auto greedy = json_of({"dims", "S3", "--p", "3", "--max-degree", "4", "--strategy", "greedy"});
  CHECK(greedy["result"]["dims"] == nlohmann::json::array({1, 0, 0, 1, 1}));
}

TEST_CASE("fingerprint") {
  CHECK(json_of({"fingerprint", "Q8"})["result"]["dec_dims"] == nlohmann::json::array({1, 2, 2, 1, 0}));
  auto v4 = json_of({"fingerprint", "V4", "--max-degree", "5"})["result"];
  CHECK(v4["dec_dims"] == v4["dims"]);
  CHECK(json_of({"fingerprint", "C4", "--max-degree", "3"})["result"]["dec_dims"] ==
        nlohmann::json::array({1, 1, 0, 0}));
}

TEST_CASE("inflate") {
  const std::string h = "pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}";
  auto killed = json_of({"inflate", h, "Q8", "--degree", "4"})["result"]["classes"];
  REQUIRE(killed.size() == 1);
  CHECK(killed[0]["vanishes"] == true);
  auto product = json_of({"inflate", h + "xC2", "Q8", "--map", "g->g,h->h,g2->g^2"})["result"]["classes"];
  REQUIRE(product.size() == 1);
  CHECK(product[0]["vanishes"] == false);
  CHECK(product[0]["decomposable"] == true);
  CHECK(product[0]["target_decomposable"] == false);
  for (const auto& c : json_of({"inflate", "D8", "D8", "--degree", "3"})["result"]["classes"]) {
    CHECK(c["vanishes"] == false);
    CHECK(c["decomposable"] == c["target_decomposable"]);
  }
  CHECK(run({"inflate", "C2", "C4"}).code == 3);
  CHECK(run({"inflate", "C4", "C4", "--map", "g->g^2"}).code == 2);
}

TEST_CASE("classify, census, repro") {
  CHECK(json_of({"classify", "S3", "--p", "2"})["result"]["generated_in_degree_one"] == true);
  CHECK(json_of({"classify", "Q8", "--p", "2"})["result"]["generated_in_degree_one"] == false);
  auto quaternion = run({"repro", "quaternion"});
  CHECK(quaternion.code == 0);
  CHECK(quaternion.out.find("7/7 checks passed") != std::string::npos);
  auto census = json_of({"census", "--p", "3", "--max-degree", "3", "--threads", "2"});
  CHECK(census["pass"] == true);
  CHECK(json_of({"repro", "cyclic-tower", "--p", "3", "--n", "2"})["pass"] == true);
}

TEST_CASE("text and json agree") {
  auto j = json_of({"repro", "splitting"});
  auto t = run({"repro", "splitting"}).out;
  for (const auto& c : j["checks"]) {
    const std::string line = std::string(c["pass"] ? "[PASS] " : "[FAIL] ") + c["desc"].get<std::string>() +
                             ": expected " + c["expected"].get<std::string>() + ", computed " +
                             c["computed"].get<std::string>();
    CHECK(t.find(line) != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"dims", "FOO"}).code == 2);
  CHECK(run({"dims", "C4x"}).code == 2);
  CHECK(run({"dims", "Q8", "--p", "4"}).code == 2);
  CHECK(run({"dims", "Q8", "--format", "xml"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"repro", "nope"}).code == 2);
  CHECK(run({"dims", "C2000"}).code == 3);
  CHECK(run({"dims", "pres{a,b | a^2}"}).code == 3);
  CHECK(run({"repro", "metacyclic", "--p", "3"}).code == 4);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cache directory is used") {
  auto dir = std::filesystem::temp_directory_path() / ("cohoforge-cli-" + std::to_string(std::random_device{}()));
  auto first = run({"dims", "Q8", "--cache-dir", dir.string()}, true);
  CHECK(first.code == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  auto second = run({"dims", "Q8", "--cache-dir", dir.string()}, true);
  CHECK(second.out.find("dims: (1,2,2,1,1)") != std::string::npos);
  CHECK(second.code == 0);
  std::filesystem::remove_all(dir);
}
