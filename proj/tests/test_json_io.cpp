#include "qlab/json_io.hpp"

#include <vector>

#include "doctest.h"

using namespace qlab;

namespace {

bool same_gates(const QuantumCircuit& a, const QuantumCircuit& b) {
  if (a.width != b.width || a.gates.size() != b.gates.size()) return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    const Gate &x = a.gates[i], &y = b.gates[i];
    if (x.kind != y.kind || x.q0 != y.q0 || x.q1 != y.q1 || x.q2 != y.q2) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("json") {

TEST_CASE("circuit round trip keeps gates and layout") {
  Formula f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
  auto compiled = compile_tidy(f);
  QuantumCircuit c;
  c.width = compiled.width;
  c.wires = compiled.wires;
  c.gates = compiled.gates;

  auto back = circuit_from_json(circuit_to_json(c));
  CHECK(same_gates(c, back));
  REQUIRE(back.wires.has_value());
  CHECK(back.wires->num_inputs == c.wires->num_inputs);
  CHECK(back.wires->num_ancillas == c.wires->num_ancillas);
  CHECK(back.wires->output == c.wires->output);

  // a layout-free circuit stays layout-free and omits the wires key
  QuantumCircuit plain;
  plain.width = 2;
  plain.gates = {gate_h(0), gate_cnot(0, 1)};
  auto j = circuit_to_json(plain);
  CHECK_FALSE(j.contains("wires"));
  CHECK_FALSE(circuit_from_json(j).wires.has_value());
}

TEST_CASE("circuit serialization is byte stable") {
  QuantumCircuit c;
  c.width = 3;
  c.gates = {gate_h(0), gate_cnot(0, 1), gate_toffoli(0, 1, 2), gate_x(2)};
  CHECK(circuit_to_json(c).dump() ==
        R"({"width":3,"gates":[{"g":"H","q":[0]},{"g":"CNOT","q":[0,1]},)"
        R"({"g":"TOFFOLI","q":[0,1,2]},{"g":"X","q":[2]}]})");
}

TEST_CASE("circuit parsing rejects malformed documents") {
  CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({"gates":[]})")), Error);
  CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({"width":0,"gates":[]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"gates":[{"g":"Y","q":[0]}]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"gates":[{"g":"H","q":[2]}]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"gates":[{"g":"CNOT","q":[1,1]}]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"gates":[{"g":"H","q":[0,1]}]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"gates":[{"g":"H","q":[0.5]}]})")), Error);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"width":2,"wires":{"inputs":1},"gates":[]})")), Error);
}

TEST_CASE("decimal strings round-trip doubles bit for bit") {
  CHECK(decimal_string(0.1) == "0.10000000000000001");
  CHECK(decimal_string(2) == "2");
  for (double v : {1.0 / 3, 1e300, -4.9e-324, 0.1 + 0.2, -0.0, 1.2999999999999999}) {
    CAPTURE(v);
    CHECK(decimal_from_string(decimal_string(v)) == v);
  }
  CHECK_THROWS_AS(decimal_from_string(""), Error);
  CHECK_THROWS_AS(decimal_from_string("12x"), Error);
  CHECK_THROWS_AS(decimal_from_string("1.0 "), Error);
}

TEST_CASE("lattice instance round trip is exact") {
  Formula f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
  auto ip = find_isolating_parallelepiped(1, 3);
  auto inst = cnf_to_vcp(f, ip);
  auto back = lattice_from_json(lattice_to_json(inst));
  CHECK(back.p == inst.p);
  CHECK(back.n == inst.n);
  CHECK(back.m == inst.m);
  CHECK(back.k == inst.k);
  CHECK(back.d == inst.d);
  CHECK(back.r_pow_p == inst.r_pow_p);
  CHECK(back.provenance == inst.provenance);
  CHECK((back.B - inst.B).norm() == 0);
  CHECK((back.t - inst.t).norm() == 0);
  CHECK(vcp_count_bruteforce(back) == vcp_count_bruteforce(inst));
  CHECK(lattice_to_json(back).dump() == lattice_to_json(inst).dump());
}

TEST_CASE("lattice parsing rejects malformed documents") {
  Formula f = parse_dimacs("p cnf 2 1\n1 2 0\n");
  auto ip = find_isolating_parallelepiped(1, 3);
  auto good = lattice_to_json(cnf_to_vcp(f, ip));

  auto j = good;
  j["r_pow_p"] = 3.5;
  CHECK_THROWS_AS(lattice_from_json(j), Error);
  j = good;
  j["B"].erase(0);
  CHECK_THROWS_AS(lattice_from_json(j), Error);
  j = good;
  j["B"][0] = "not a number";
  CHECK_THROWS_AS(lattice_from_json(j), Error);
  j = good;
  j.erase("provenance");
  CHECK_THROWS_AS(lattice_from_json(j), Error);
  j = good;
  j["p"] = 0.5;
  CHECK_THROWS_AS(lattice_from_json(j), Error);
}

TEST_CASE("ov instance round trip keeps bitstrings") {
  Formula f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n");
  auto inst = cnf_to_ov(f);
  auto j = ov_to_json(inst);
  CHECK(j["d"] == 2);
  CHECK(j["A"] == Json::array({"10", "01"}));
  CHECK(j["B"] == Json::array({"10", "01"}));
  auto back = ov_from_json(j);
  CHECK(back.d == inst.d);
  CHECK(back.A == inst.A);
  CHECK(back.B == inst.B);
  CHECK(ov_count_pairs(back) == 2);

  // two-word vectors survive the trip
  Formula wide;
  wide.kind = FormulaKind::Cnf;
  wide.num_vars = 4;
  for (int i = 0; i < 70; ++i) wide.clauses.push_back({i % 2 == 0 ? 1 : -2});
  auto winst = cnf_to_ov(wide);
  auto wback = ov_from_json(ov_to_json(winst));
  CHECK(wback.A == winst.A);
  CHECK(wback.B == winst.B);

  // an empty clause list gives empty bitstrings
  OVInstance empty;
  empty.d = 0;
  empty.A = {{}, {}};
  empty.B = {{}};
  auto eback = ov_from_json(ov_to_json(empty));
  CHECK(eback.A.size() == 2);
  CHECK(ov_count_pairs(eback) == 2);
}

TEST_CASE("ov parsing rejects malformed documents") {
  CHECK_THROWS_AS(ov_from_json(Json::parse(R"({"A":["1"],"B":["1"]})")), Error);
  CHECK_THROWS_AS(ov_from_json(Json::parse(R"({"d":1,"A":["10"],"B":["1"]})")), Error);
  CHECK_THROWS_AS(ov_from_json(Json::parse(R"({"d":1,"A":["2"],"B":["1"]})")), Error);
  CHECK_THROWS_AS(ov_from_json(Json::parse(R"({"d":-1,"A":[],"B":[]})")), Error);
  CHECK_THROWS_AS(ov_from_json(Json::parse(R"({"d":1,"A":"1","B":["1"]})")), Error);
}

}
