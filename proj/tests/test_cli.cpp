#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = logcap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return testing::fixture(name).string(); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("logcap_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(run({"validate", fx("e1.json")}).code == logcap::cli::kOk);
  const auto h1 = run({"validate", fx("h1_violation.json")});
  CHECK(h1.code == logcap::cli::kMathFailure);
  CHECK(h1.out.find("H1") != std::string::npos);
  CHECK(run({"validate", fx("corrupted_cocycle.json")}).code == logcap::cli::kMathFailure);
  CHECK(run({"validate", "/nonexistent.json"}).code == logcap::cli::kInputError);
}

TEST_CASE("malformed instances are input errors") {
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  json j = json::parse(std::ifstream(testing::fixture("e1.json")));
  j["A"]["extra"] = 1;
  std::ofstream(dir / "extra.json") << j.dump();
  const auto r = run({"validate", (dir / "extra.json").string()});
  CHECK(r.code == logcap::cli::kInputError);
  CHECK(r.err.find("/A/extra") != std::string::npos);
  std::ofstream(dir / "broken.json") << "{\"prime\": 2";
  CHECK(run({"verify", (dir / "broken.json").string()}).code == logcap::cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("bad flags are input errors") {
  CHECK(run({}).code == logcap::cli::kInputError);
  CHECK(run({"frobnicate"}).code == logcap::cli::kInputError);
  CHECK(run({"verify", fx("e1.json"), "--format", "yaml"}).code == logcap::cli::kInputError);
  CHECK(run({"search", "--prime", "4", "--G", "2", "--Atilde", "0"}).code == logcap::cli::kInputError);
  CHECK(run({"search", "--prime", "2", "--G", "x", "--Atilde", "0"}).code == logcap::cli::kInputError);
}

TEST_CASE("verify exit codes and witnesses") {
  const auto ok = run({"verify", fx("e1.json")});
  CHECK(ok.code == logcap::cli::kOk);
  const json agg = json::parse(ok.out);
  CHECK(agg["instances"].size() == 1);
  CHECK(agg["instances"][0]["delta"] == "0");
  const auto bad = run({"verify", fx("corrupted_cocycle.json")});
  CHECK(bad.code == logcap::cli::kMathFailure);
  const json b = json::parse(bad.out);
  for (const auto& v : b["instances"][0]["verdicts"]) {
    CHECK(v["status"] == "fail");
    CHECK(v["witness"]["validation"].contains("cocycle-identity"));
  }
  const auto hyp = run({"verify", fx("h1_violation.json")});
  CHECK(hyp.code == logcap::cli::kMathFailure);
  for (const auto& v : json::parse(hyp.out)["instances"][0]["verdicts"]) CHECK(v["status"] == "hypothesis-failed");
}

TEST_CASE("verify output does not depend on the worker count") {
  const std::vector<std::string> files{fx("e1.json"), fx("klein_boundary.json"), fx("h1_violation.json")};
  std::vector<std::string> a{"verify"}, b{"verify"};
  a.insert(a.end(), files.begin(), files.end());
  b.insert(b.end(), files.begin(), files.end());
  a.insert(a.end(), {"-j", "1"});
  b.insert(b.end(), {"-j", "3"});
  const auto ra = run(a), rb = run(b);
  CHECK(ra.code == rb.code);
  CHECK(ra.out == rb.out);
}

TEST_CASE("search refuses above the ceiling") {
  const fs::path dir = scratch("ceiling");
  const auto r = run({"search", "--prime", "2", "--G", "2,2", "--Atilde", "2,2,2", "--precision", "4", "--ceiling",
                      "1", "--out", dir.string()});
  CHECK(r.code == logcap::cli::kRefused);
  CHECK(r.err.find("refused") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("oracle refuses above the bound") {
  CHECK(run({"oracle", fx("e1.json")}).code == logcap::cli::kOk);
  CHECK(run({"oracle", fx("e1.json"), "--oracle-bound", "8"}).code == logcap::cli::kRefused);
}

TEST_CASE("search, verify the manifest, render the report") {
  const fs::path dir = scratch("search");
  const auto s = run({"search", "--prime", "2", "--G", "2", "--Atilde", "0", "--Atilde", "2", "--precision", "3",
                      "--out", dir.string()});
  REQUIRE(s.code == logcap::cli::kOk);
  const json m = json::parse(std::ifstream(dir / "manifest.json"));
  CHECK(m["files"].size() == m["total_emitted"].get<std::size_t>());
  const std::string report = (dir / "report.json").string();
  CHECK(run({"verify", dir.string(), "-o", report}).code == logcap::cli::kOk);
  const auto md = run({"report", report, "--format", "markdown"});
  CHECK(md.code == logcap::cli::kOk);
  const auto direct = run({"verify", dir.string(), "--format", "markdown"});
  CHECK(md.out == direct.out);
  // a tampered corpus file no longer matches its manifest hash
  const fs::path first = dir / m["files"][0]["path"].get<std::string>();
  std::ofstream(first, std::ios::app) << " ";
  CHECK(run({"verify", dir.string()}).code == logcap::cli::kInputError);
  CHECK(run({"report", fx("e1.json")}).code == logcap::cli::kInputError);
  fs::remove_all(dir);
}
