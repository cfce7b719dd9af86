#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "twbd/cli.hpp"

using namespace twbd;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "twbd");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("twbd_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("export, verify, classify, aut, iso") {
  TempDir tmp;
  for (const char *id : {"D20_1", "D26_2", "D26_3", "D22_3", "D28_1"})
    REQUIRE(run({"catalog", "export", "--id", id, "--format", "json", "--out", tmp / (std::string(id) + ".json")}).code ==
            kExitOk);

  auto v = run({"verify", tmp / "D20_1.json"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("valid 3-(20,{4,6},1) design: 20 hexads, 185 tetrads") != std::string::npos);

  auto c = run({"classify", tmp / "D20_1.json"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.find("semi-biplane sbp(20,6)") != std::string::npos);

  auto c28 = run({"classify", tmp / "D28_1.json"});
  CHECK(c28.out.find("regular group divisible") != std::string::npos);
  auto j = nlohmann::json::parse(c28.out.substr(c28.out.find("{\"")));
  CHECK(j["two_class"]["lambda2"] == 2);
  CHECK(j["scheme"]["n2"] == 3);

  auto i = run({"iso", tmp / "D26_2.json", tmp / "D26_3.json"});
  CHECK(i.code == kExitNegative);
  CHECK(i.out.rfind("non-isomorphic", 0) == 0);
  CHECK(run({"iso", tmp / "D26_2.json", tmp / "D26_2.json"}).code == kExitOk);

  auto a = run({"aut", tmp / "D22_3.json"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.rfind("automorphism group order 110, transitive", 0) == 0);

  auto k = run({"canon", tmp / "D20_1.json", "--relabelings", "5", "--seed", "7"});
  CHECK(k.code == kExitOk);
  CHECK(k.out.find("5/5 random relabelings") != std::string::npos);
}

TEST_CASE("negative verdicts and input errors") {
  TempDir tmp;
  std::ofstream(tmp / "bad.json") << R"({"v": 5, "blocks": [[0,1,2,3]]})";
  auto v = run({"verify", tmp / "bad.json"});
  CHECK(v.code == kExitNegative);
  CHECK(v.out.find("lies in") != std::string::npos);

  std::ofstream(tmp / "broken.json") << "{\"v\": 5,";
  CHECK(run({"verify", tmp / "broken.json"}).code == kExitInputError);
  CHECK(run({"classify", tmp / "missing.json"}).code == kExitInputError);
  CHECK(run({"catalog", "export", "--id", "D99_9"}).code == kExitInputError);
  CHECK(run({"catalog", "export", "--id", "D20_1", "--format", "xml"}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"search", "--limit", "0", "--catalog-group", "D16_1"}).code == kExitInputError);

  std::ofstream(tmp / "g.txt") << "degree 16\n(0,1,2)(3,16)\n";
  CHECK(run({"search", "--group", tmp / "g.txt", "--out", tmp / "o"}).code == kExitInputError);
  std::ofstream(tmp / "fix.txt") << "degree 16\n(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15)\n";
  auto intrans = run({"search", "--group", tmp / "fix.txt", "--out", tmp / "o"});
  CHECK(intrans.code == kExitInputError);
  CHECK(intrans.err.find("not transitive") != std::string::npos);

  std::ofstream(tmp / "file") << "x";
  CHECK(run({"search", "--catalog-group", "D16_1", "--out", tmp / "file"}).code == kExitInputError);
}

TEST_CASE("inadmissible v") {
  auto r = run({"search", "--v", "18"});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("inadmissible") != std::string::npos);
  TempDir tmp;
  std::ofstream(tmp / "c18.txt") << "degree 18\n(0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17)\n";
  CHECK(run({"search", "--group", tmp / "c18.txt", "--out", tmp / "o"}).code == kExitInputError);
}

TEST_CASE("search output is complete and byte-identical across runs and job counts") {
  TempDir tmp;
  auto a = run({"search", "--catalog-group", "D16_1", "--jobs", "1", "--out", tmp / "a"});
  auto b = run({"search", "--catalog-group", "D16_1", "--jobs", "3", "--out", tmp / "b", "--libexact-format"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(a.out.find("solutions 12, classes 1") != std::string::npos);
  for (const char *f : {"designs.jsonl", "classes.jsonl", "summary.json", "certificates.txt"}) {
    CAPTURE(f);
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
    CHECK_FALSE(slurp(tmp.path / "a" / f).empty());
  }
  auto summary = nlohmann::json::parse(slurp(tmp.path / "a" / "summary.json"));
  CHECK(summary["classes"] == 1);
  CHECK(summary["solutions"] == 12);
  CHECK(summary["capped"] == false);

  std::ifstream designs(tmp.path / "a" / "designs.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(designs, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["v"] == 16);
    CHECK(j["blocks"].size() == 76);
    CHECK(j.contains("baseblocks"));
    CHECK(j["class"] == 0);
    ++n;
  }
  CHECK(n == 12);
  CHECK(fs::exists(tmp.path / "b" / "matrices" / "candidate_000000.txt"));
  auto first = slurp(tmp.path / "b" / "matrices" / "candidate_000000.txt");
  CHECK(first.rfind("r ", 0) == 0);
}

TEST_CASE("solution limit exits capped") {
  TempDir tmp;
  auto r = run({"search", "--catalog-group", "D16_1", "--limit", "3", "--out", tmp / "o"});
  CHECK(r.code == kExitCapped);
  CHECK(r.out.find("solutions 3") != std::string::npos);
  auto summary = nlohmann::json::parse(slurp(tmp.path / "o" / "summary.json"));
  CHECK(summary["capped"] == true);
}

TEST_CASE("catalog list and verify") {
  auto l = run({"catalog", "list"});
  CHECK(l.code == kExitOk);
  CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 33);
  auto v = run({"catalog", "verify", "--jobs", "2"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("33/33 entries pass") != std::string::npos);
}

}  // TEST_SUITE
