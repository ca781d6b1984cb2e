#include "qlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qlab/json_io.hpp"

using namespace qlab;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse_report(const CliResult& r) {
  auto j = Json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  REQUIRE(j.at("schema") == "qseth-lab/1");
  return j;
}

// Scratch directory shared by the file-based cases; recreated per process.
const std::filesystem::path& scratch() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "qlab_cli_test";
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string stash(const std::string& name, const std::string& content) {
  const auto path = scratch() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count and property report exact values") {
  const auto cnf = stash("or2.cnf", "p cnf 2 1\n1 2 0\n");
  auto r = run({"count", cnf});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("count") == 3);

  r = run({"property", cnf, "--kind", "majority"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("kind") == "majority");
  CHECK(j.at("value") == 1);

  const auto or4 = stash("or4.cnf", "p cnf 4 1\n1 2 3 4 0\n");
  r = run({"property", or4, "--kind", "count-mod", "--modulus", "3"});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("value") == 0);  // 15 mod 3
}

TEST_CASE("bounds emits the full report with integral values as integers") {
  auto r = run({"bounds", "--problem", "cnfsat", "--variant", "vanilla", "--n", "20"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("problem") == "cnfsat");
  CHECK(j.at("variant") == "vanilla");
  CHECK(j.at("params").at("n") == 20);
  CHECK(j.at("value") == 1024);
  CHECK(j.at("value").is_number_integer());
  CHECK_FALSE(j.at("exponent_note").get<std::string>().empty());

  // identical argv, identical bytes
  auto again = run({"bounds", "--problem", "cnfsat", "--variant", "vanilla", "--n", "20"});
  CHECK(again.out == r.out);
}

TEST_CASE("reduce-width writes leaves whose counts add back up") {
  const auto cnf = stash("w4.cnf", "p cnf 4 2\n1 2 3 4 0\n-1 -2 0\n");
  const auto dir = (scratch() / "leaves").string();
  auto r = run({"reduce-width", cnf, "--k", "3", "--out", dir});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("leaves") == 2);
  CHECK(j.at("bound") == 6);
  REQUIRE(j.at("manifest").size() == 2);

  std::uint64_t total = 0;
  for (const auto& entry : j.at("manifest")) {
    const auto path = std::filesystem::path(dir) / entry.at("file").get<std::string>();
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    auto leaf = parse_dimacs(ss.str());
    CHECK(leaf.clauses.size() == entry.at("clause_count").get<std::size_t>());
    total += count_satisfying(leaf);
  }
  CHECK(total == count_satisfying(parse_dimacs("p cnf 4 2\n1 2 3 4 0\n-1 -2 0\n")));
}

TEST_CASE("to-circuit feeds simulate") {
  const auto cnf = stash("or2b.cnf", "p cnf 2 1\n1 2 0\n");
  const auto circ = (scratch() / "or2b.json").string();
  auto r = run({"to-circuit", cnf, "--out", circ});
  CHECK(r.code == 0);
  CHECK(r.out.empty());  // --out redirects the document

  r = run({"simulate", "--amp", circ});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("real").get<double>() == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(j.at("imag").get<double>() == doctest::Approx(0.0).epsilon(1e-12));

  r = run({"to-circuit", cnf, "--reversible"});
  CHECK(r.code == 0);
  for (const auto& gate : parse_report(r).at("gates")) CHECK(gate.at("g") != "H");
}

TEST_CASE("strong-sim estimates the basis amplitude within delta") {
  const auto cnf = stash("or2c.cnf", "p cnf 2 1\n1 2 0\n");
  const auto circ = (scratch() / "or2c.json").string();
  REQUIRE(run({"to-circuit", cnf, "--out", circ}).code == 0);

  auto r = run({"strong-sim", circ, "--x", "0000", "--delta", "0.3", "--seed", "7"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("iterations") == 1048);
  CHECK(std::abs(j.at("estimate").get<double>() - 0.75) <= 0.3);

  r = run({"strong-sim", circ, "--x", "00", "--delta", "0.3", "--seed", "7"});
  CHECK(r.code == 1);  // bit string length mismatch
  r = run({"strong-sim", circ, "--x", "0000", "--delta", "0.01", "--seed", "7"});
  CHECK(r.code == 1);  // below the width-4 accuracy floor
}

TEST_CASE("estimate runs on a CNF or a flagged circuit") {
  const auto cnf = stash("or2d.cnf", "p cnf 2 1\n1 2 0\n");
  auto r = run({"estimate", "--cnf", cnf, "--M", "1024", "--seed", "3"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("M") == 1024);
  CHECK(std::abs(j.at("estimate").get<double>() - std::sqrt(0.75)) <=
        100.0 * 3.15 / 1024.0);

  const auto circ = stash("h1.json", R"({"width":1,"gates":[{"g":"H","q":[0]}]})");
  r = run({"estimate", circ, "--flag", "0", "--M", "256", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(std::abs(parse_report(r).at("estimate").get<double>() - std::sqrt(0.5)) <= 1.0);

  r = run({"estimate", "--M", "16", "--seed", "1"});
  CHECK(r.code == 1);  // neither input given
  r = run({"estimate", circ, "--cnf", cnf, "--M", "16", "--seed", "1"});
  CHECK(r.code == 1);  // both given
  r = run({"estimate", circ, "--M", "16", "--seed", "1"});
  CHECK(r.code == 1);  // circuit route without --flag
}

TEST_CASE("lattice pipeline: to-lattice, vcp-count, sparsify-stats, gap-decide") {
  const auto cnf = stash("f3.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
  const auto inst = (scratch() / "inst.json").string();
  auto r = run({"to-lattice", cnf, "--p", "1", "--k", "3", "--out", inst});
  REQUIRE(r.code == 0);

  r = run({"vcp-count", inst, "--margin-check"});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("count") == 5);

  r = run({"sparsify-stats", inst, "--Q", "31", "--samples", "3000", "--seed", "5"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("count") == 5);
  CHECK(j.at("pass") == true);
  auto again = run({"sparsify-stats", inst, "--Q", "31", "--samples", "3000", "--seed", "5"});
  CHECK(again.out == r.out);

  r = run({"gap-decide", inst, "--N", "6", "--gamma", "1.0", "--seed", "5"});
  CHECK(r.code == 0);
  j = parse_report(r);
  CHECK(j.at("answer") == "small");
  CHECK(j.at("Q") == 127);
  CHECK(j.at("samples").get<std::uint64_t>() > 1000);

  r = run({"gap-decide", inst, "--N", "2", "--gamma", "1.0", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("answer") == "large");

  // count 5 is neither <= 3 nor >= 6: promise violation
  r = run({"gap-decide", inst, "--N", "3", "--gamma", "1.0", "--seed", "5"});
  CHECK(r.code == 1);
  CHECK(parse_report(r).contains("error"));
}

TEST_CASE("ov pipeline round trips through files") {
  const auto cnf = stash("or2e.cnf", "p cnf 2 1\n1 2 0\n");
  const auto inst = (scratch() / "ov.json").string();
  REQUIRE(run({"to-ov", cnf, "--out", inst}).code == 0);
  auto r = run({"ov-count", inst});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("pairs") == 3);
}

TEST_CASE("verify runs module suites and aggregates") {
  auto r = run({"verify", "--suite", "width-reduction", "--seed", "7"});
  CHECK(r.code == 0);
  auto j = parse_report(r);
  CHECK(j.at("pass") == true);
  REQUIRE(j.at("suites").size() == 1);
  CHECK(j.at("suites").at(0).at("name") == "width-reduction");
  CHECK(j.at("suites").at(0).at("items").size() >= 2);

  r = run({"verify", "--suite", "all", "--seed", "11"});
  CHECK(r.code == 0);
  CHECK(parse_report(r).at("suites").size() == 7);

  r = run({"verify", "--suite", "no-such", "--seed", "1"});
  CHECK(r.code == 1);
}

TEST_CASE("usage and failure exit codes") {
  auto r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());

  r = run({"bounds", "--problem", "cnfsat", "--variant", "vanilla"});
  CHECK(r.code == 2);  // missing required --n

  r = run({"simulate", "/tmp/nonexistent-circuit.json"});
  CHECK(r.code == 2);  // --amp is required

  r = run({"count", "/tmp/definitely-not-a-file.cnf"});
  CHECK(r.code == 1);
  CHECK(parse_report(r).contains("error"));

  r = run({});
  CHECK(r.code == 2);  // a subcommand is required
}

TEST_CASE("out flag writes the report to a file") {
  const auto cnf = stash("or2f.cnf", "p cnf 2 1\n1 2 0\n");
  const auto path = (scratch() / "report.json").string();
  auto r = run({"count", cnf, "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(Json::parse(ss.str()).at("count") == 3);
}

}
