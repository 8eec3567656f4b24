#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gind/cli.hpp"

using namespace gind;
using json = nlohmann::ordered_json;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/gind_cli_") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string strip_runtime(std::string s) {
  static const std::regex re("\"runtime_ms\": [0-9]+");
  return std::regex_replace(s, re, "\"runtime_ms\": X");
}

const std::string kA = write_temp("A.json", "{\"rows\":2,\"cols\":2,\"data\":[[1,2],[3,4]]}");

}  // namespace

TEST_CASE("gind subcommand, text and json") {
  cli::RunResult r = cli::run({"gind", "--matrix", kA, "--from", "l1", "--to", "l1"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("lower = 6") != std::string::npos);
  CHECK(r.output.find("ExactColumn") != std::string::npos);

  cli::RunResult j = cli::run({"gind", "--matrix", kA, "--from", "l1", "--to", "l1",
                               "--format", "json"});
  CHECK(j.exit_code == 0);
  json doc = json::parse(j.output);
  CHECK(doc["tool_version"] == "0.1.0");
  CHECK(doc["subcommand"] == "gind");
  CHECK(doc["result"]["lower"].get<double>() == doctest::Approx(6.0));
  CHECK(doc["result"]["upper"].get<double>() == doctest::Approx(6.0));
  CHECK(doc["method"] == "ExactColumn");
  CHECK(doc.contains("seed"));
  CHECK(doc.contains("inputs"));
  CHECK(doc.contains("runtime_ms"));
  // fixed key order with the runtime last
  auto it = doc.items().begin();
  CHECK(it.key() == "tool_version");
  std::string last;
  for (const auto& kv : doc.items()) last = kv.key();
  CHECK(last == "runtime_ms");
}

TEST_CASE("witnesses in the json report re-evaluate to the reported value") {
  cli::RunResult j = cli::run({"gind", "--matrix", kA, "--from", "linf", "--to", "l2",
                               "--format", "json", "--seed", "7"});
  REQUIRE(j.exit_code == 0);
  json doc = json::parse(j.output);
  double lower = doc["result"]["lower"].get<double>();
  std::vector<cplx> entries;
  for (const auto& e : doc["witnesses"]["witness"]) {
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  Vector w = Vector::from(entries);
  Matrix a = matrix_from_json_file(kA);
  double reproduced = norm_eval(NormSpec::l2(), a * w) / norm_eval(NormSpec::linf(), w);
  CHECK(reproduced == doctest::Approx(lower).epsilon(1e-9));
}

TEST_CASE("ratio, vecnorm and dual subcommands") {
  cli::RunResult r = cli::run({"ratio", "--from", "l1", "--to", "linf", "--n", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2") != std::string::npos);

  cli::RunResult v = cli::run({"vecnorm", "--vector", "[[3,4],0]", "--from", "l2", "--n", "2",
                               "--format", "json"});
  CHECK(v.exit_code == 0);
  CHECK(json::parse(v.output)["result"]["value"].get<double>() == doctest::Approx(5.0));

  cli::RunResult d = cli::run({"dual", "--vector", "[2,-2]", "--from", "linf", "--n", "2",
                               "--format", "json"});
  CHECK(d.exit_code == 0);
  json dd = json::parse(d.output);
  // the dual norm of (2,-2) under linf is its l1 norm
  CHECK(dd["result"]["value"].get<double>() == doctest::Approx(4.0));
  CHECK(dd["result"]["attained"].get<double>() == doctest::Approx(2.0));
  CHECK(dd["witnesses"]["y0"][0][0].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("theorem subcommands exit 0 on pass and carry the verdict as data") {
  cli::RunResult alg = cli::run({"algebra-check", "--from", "l1", "--to", "linf", "--n", "2",
                                 "--format", "json"});
  CHECK(alg.exit_code == 0);  // the check passed; non-algebra is a finding
  json doc = json::parse(alg.output);
  CHECK_FALSE(doc["result"]["is_algebra"].get<bool>());
  CHECK(doc["result"]["report"]["passed"].get<bool>());
  CHECK(doc["result"]["report"]["metrics"]["b2_norm"].get<double>() == doctest::Approx(2.0));

  cli::RunResult cong = cli::run({"congruent", "--from", "l2", "--to", "l2",
                                  "--from2", "scale:3*l2", "--to2", "scale:5*l2", "--n", "2",
                                  "--format", "json"});
  CHECK(cong.exit_code == 0);
  json cd = json::parse(cong.output);
  CHECK(cd["result"]["congruent"].get<bool>());
  CHECK(cd["result"]["gamma"].get<double>() == doctest::Approx(0.6).epsilon(1e-9));

  cli::RunResult ms = cli::run({"min-scale", "--from", "l1", "--to", "linf", "--n", "3",
                                "--format", "json"});
  CHECK(ms.exit_code == 0);
  CHECK(json::parse(ms.output)["result"]["value"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("exit codes: 2 for input errors, 1 for failed checks") {
  CHECK(cli::run({"gind", "--matrix", "/nonexistent.json", "--from", "l1", "--to", "l1"}).exit_code == 2);
  cli::RunResult bad = cli::run({"gind", "--matrix", kA, "--from", "bogus", "--to", "l1"});
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("ParseError") != std::string::npos);

  cli::RunResult nonsq = cli::run(
      {"gind", "--matrix",
       write_temp("rect.json", "{\"rows\":1,\"cols\":2,\"data\":[[1,2]]}"), "--from", "l1",
       "--to", "l1"});
  CHECK(nonsq.exit_code == 2);
  CHECK(nonsq.output.find("DimensionMismatch") != std::string::npos);

  CHECK(cli::run({"verify-all", "--n", "1"}).exit_code == 2);
  CHECK(cli::run({"nonsense"}).exit_code == 2);
  CHECK(cli::run({}).exit_code == 2);
  CHECK(cli::run({"gind", "--matrix", kA, "--from", "l1", "--to", "l1", "--format", "yaml"})
            .exit_code == 2);

  // an impossible tolerance turns passing checks into failures: exit 1
  cli::RunResult strict = cli::run({"verify-all", "--n", "2", "--seed", "0", "--tol", "0"});
  CHECK(strict.exit_code == 1);

  cli::RunResult help = cli::run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("gind") != std::string::npos);
}

TEST_CASE("json output is deterministic modulo the runtime field") {
  std::vector<std::string> args = {"gind", "--matrix", kA, "--from", "linf", "--to", "l1",
                                   "--seed", "42", "--format", "json"};
  cli::RunResult r1 = cli::run(args);
  cli::RunResult r2 = cli::run(args);
  REQUIRE(r1.exit_code == 0);
  CHECK(strip_runtime(r1.output) == strip_runtime(r2.output));

  std::vector<std::string> va = {"verify-all", "--n", "2", "--seed", "0", "--format", "json"};
  cli::RunResult v1 = cli::run(va);
  cli::RunResult v2 = cli::run(va);
  REQUIRE(v1.exit_code == 0);
  CHECK(strip_runtime(v1.output) == strip_runtime(v2.output));
}

TEST_CASE("--out writes the report to a file instead of stdout") {
  std::string path = "/tmp/gind_cli_out.json";
  std::remove(path.c_str());
  cli::RunResult r = cli::run({"gind", "--matrix", kA, "--from", "l1", "--to", "l1",
                               "--format", "json", "--out", path});
  CHECK(r.exit_code == 0);
  CHECK(r.wrote_file);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  json doc = json::parse(ss.str());
  CHECK(doc["result"]["lower"].get<double>() == doctest::Approx(6.0));
}

TEST_CASE("verify_all covers the full check suite and passes") {
  cli::VerifyAll va = cli::verify_all(2, Seed{0});
  CHECK(va.all_passed);
  CHECK(va.reports.size() >= 10);
  for (const WitnessReport& r : va.reports) {
    CHECK(r.passed);
    CHECK(report_consistent(r));
    CHECK(!r.theorem.empty());
  }
  // distinct check tags
  std::vector<std::string> tags;
  for (const WitnessReport& r : va.reports) tags.push_back(r.theorem);
  std::sort(tags.begin(), tags.end());
  CHECK(std::unique(tags.begin(), tags.end()) == tags.end());

  CHECK_THROWS_AS(cli::verify_all(7, Seed{0}), DimensionMismatch);

  cli::VerifyAll strict = cli::verify_all(2, Seed{0}, 0.0);
  CHECK_FALSE(strict.all_passed);
}

TEST_CASE("defect and recover subcommands") {
  cli::RunResult d = cli::run({"defect", "--norm", "m", "--n", "2", "--trials", "50",
                               "--format", "json"});
  CHECK(d.exit_code == 0);
  json dd = json::parse(d.output);
  CHECK(dd["result"]["value"].get<double>() >= 2.0 - 1e-9);

  cli::RunResult rec = cli::run({"recover", "--norm", "S", "--n", "2", "--budget", "500",
                                 "--format", "json"});
  CHECK(rec.exit_code == 0);
  json rd = json::parse(rec.output);
  CHECK(rd["result"]["lambda"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(rd["result"]["passed"].get<bool>());
}
