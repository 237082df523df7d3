#include "qcert_cli/cli.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qcert");
  std::ostringstream out;
  std::ostringstream err;
  int code = qcert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("qtable values") {
  CHECK(run({"qtable", "--n", "9"}).out == "8\n");
  CHECK(run({"qtable", "--n", "0"}).out == "1\n");
  CHECK(run({"qtable", "--range", "0..9"}).out == "1,1,1,2,2,3,4,5,6,8\n");
  Result j = run({"--format", "json", "qtable", "--n", "12"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)[0]["q"] == "15");
  CHECK(run({"qtable", "--format", "csv", "--n", "5"}).out == "n,q\n5,3\n");
}

TEST_CASE("qtable usage errors") {
  CHECK(run({"qtable"}).code == qcert::cli::kUsage);
  CHECK(run({"qtable", "--range", "9..3"}).code == qcert::cli::kUsage);
  CHECK(run({"qtable", "--range", "a..b"}).code == qcert::cli::kUsage);
  Result r = run({"qtable", "--n", "30000"});
  CHECK(r.code == qcert::cli::kShortTable);
  CHECK(r.err.find("--n-max") != std::string::npos);
}

TEST_CASE("corrupted cache gives its own exit code") {
  fs::path dir = fs::temp_directory_path() / ("qcert-cli-" + std::to_string(support::uniform(0, 1L << 40)));
  fs::create_directories(dir);
  std::ofstream(dir / "qtable-v1.txt") << "qtable v1 3\n1\n1\nxx\n2\n";
  Result r = run({"--cache", dir.string(), "qtable", "--n", "2"});
  CHECK(r.code == qcert::cli::kCacheCorrupt);
  CHECK_FALSE(r.err.empty());
  fs::remove_all(dir);
}

TEST_CASE("coefficient dump") {
  Result r = run({"coeffs", "Bhat", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "Bhat[1,0] = -3/8 pi^-1 sqrt3^1 + 1/144 pi^1 sqrt3^1\n");
  CHECK(run({"coeffs", "Abar", "2"}).out == "Abar[2,0] = -1/32\n");
  CHECK(run({"coeffs", "Bhat", "0", "--upto", "2", "--s", "1"}).out.find("Bhat[2,1] = ") !=
        std::string::npos);
  CHECK(run({"coeffs", "Zeta", "1"}).code == qcert::cli::kUsage);
}

TEST_CASE("bounds table brackets q") {
  Result r = run({"bounds", "--range", "6000..6002", "--s", "2", "--N", "14"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,s,N,q_exact,lower,upper");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      f.push_back(cell);
    }
    REQUIRE(f.size() == 6);
    long n = std::stol(f[0]);
    CHECK(f[3] == support::table()[n + 2].get_str());
    qcert::Rat qv{qcert::BigInt(f[3])};
    CHECK(support::dec(f[4].c_str()) <= qv);
    CHECK(qv <= support::dec(f[5].c_str()));
    ++rows;
  }
  CHECK(rows == 3);
  CHECK(run({"bounds", "--n", "100", "--N", "14"}).code == qcert::cli::kUsage);
}

TEST_CASE("verify reports") {
  Result r = run({"verify", "double-turan"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["theorem"] == "double-turan");
  CHECK(j["threshold"] == 273);
  CHECK(j["shift"] == 2);
  CHECK(j["status"] == "pass");
  for (const char* key : {"theorem", "threshold", "shift", "n_star", "exact_range", "sharpness_witness",
                          "status", "precision_bits", "subdivisions", "seconds"}) {
    CHECK(j.contains(key));
  }
  CHECK(json::parse(run({"verify", "laguerre3-companion"}).out)["threshold"] == 715);
}

TEST_CASE("certify reports") {
  Result r = run({"certify", "ineq1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["status"] == "proved");
  CHECK(j["n_star"].get<long>() <= 5019);
}

TEST_CASE("exit code contract") {
  CHECK(run({"verify", "nope"}).code == qcert::cli::kUsage);
  CHECK(run({"certify", "ineq9"}).code == qcert::cli::kUsage);
  CHECK(run({"frobnicate"}).code == qcert::cli::kUsage);
  CHECK(run({}).code == qcert::cli::kUsage);
  CHECK(run({"--precision", "8", "certify", "ineq1"}).code == qcert::cli::kUsage);
  CHECK(run({"--format", "xml", "verify", "A"}).code == qcert::cli::kUsage);
  CHECK(run({"--n-max", "3000", "verify", "A"}).code == qcert::cli::kShortTable);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("inconclusive results exit with 2") {
  // The real inequalities all settle, so the mapping is checked directly.
  using namespace qcert::cli;
  CHECK(exit_code(qcert::CertStatus::inconclusive) == kInconclusive);
  CHECK(exit_code(qcert::CertStatus::proved) == kPass);
  CHECK(exit_code("inconclusive") == kInconclusive);
  CHECK(exit_code("pass") == kPass);
  CHECK(exit_code("fail") == kFail);
  CHECK(combine_exit_codes(kPass, kInconclusive) == kInconclusive);
  CHECK(combine_exit_codes(kInconclusive, kFail) == kFail);
  CHECK(combine_exit_codes(kFail, kInconclusive) == kFail);
  CHECK(combine_exit_codes(kPass, kPass) == kPass);
  // A shallow depth limit still proves: the mean-value enclosure settles each leaf early.
  Result r = run({"--no-timing", "--max-depth", "1", "certify", "ineq4"});
  CHECK(r.code == kPass);
  CHECK(run({"--max-depth", "0", "certify", "ineq4"}).code == kUsage);
}

TEST_CASE("deterministic output without timing") {
  Result a = run({"--no-timing", "verify", "A"});
  Result b = run({"--no-timing", "verify", "A"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["seconds"].is_null());
  Result c = run({"--no-timing", "reproduce-all", "--jobs", "1", "--theorem", "A", "--theorem", "B"});
  Result d = run({"--no-timing", "reproduce-all", "--jobs", "2", "--theorem", "A", "--theorem", "B"});
  CHECK(c.out == d.out);
}

TEST_CASE("reproduce-all with the published constants") {
  Result r = run({"reproduce-all", "--paper-check"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["reports"].size() == 8);
  CHECK(j["paper_check"]["ok"] == true);
  CHECK(j["paper_check"]["window_max_14"].get<long>() <= 5019);
  CHECK(j["paper_check"]["window_max_24"].get<long>() <= 18502);
  CHECK(run({"reproduce-all", "--theorem", "E"}).code == qcert::cli::kUsage);
}
