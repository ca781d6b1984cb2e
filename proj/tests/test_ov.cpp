#include "qlab/ov.hpp"

#include <vector>

#include "doctest.h"

using namespace qlab;

TEST_SUITE("ov") {

TEST_CASE("two-clause example lists leave-unsatisfied masks") {
  Formula f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n");
  auto inst = cnf_to_ov(f);
  CHECK(inst.d == 2);
  REQUIRE(inst.A.size() == 2);
  REQUIRE(inst.B.size() == 2);
  // x1 = 0 misses clause 1, x1 = 1 misses clause 2; same for x2
  CHECK(inst.A[0] == std::vector<std::uint64_t>{0b01});
  CHECK(inst.A[1] == std::vector<std::uint64_t>{0b10});
  CHECK(inst.B[0] == std::vector<std::uint64_t>{0b01});
  CHECK(inst.B[1] == std::vector<std::uint64_t>{0b10});
  CHECK(ov_count_pairs(inst) == 2);
  CHECK(count_satisfying(f) == 2);
}

TEST_CASE("variables split ceil versus floor") {
  Formula f = parse_dimacs("p cnf 5 1\n4 0\n");
  auto inst = cnf_to_ov(f);
  CHECK(inst.A.size() == 8);  // variables 1..3
  CHECK(inst.B.size() == 4);  // variables 4..5
  // the first half never touches clause (x4)
  for (const auto& a : inst.A) CHECK(a == std::vector<std::uint64_t>{1});
  // bit 0 of the B index is x4
  CHECK(inst.B[0] == std::vector<std::uint64_t>{1});
  CHECK(inst.B[1] == std::vector<std::uint64_t>{0});
  CHECK(inst.B[2] == std::vector<std::uint64_t>{1});
  CHECK(inst.B[3] == std::vector<std::uint64_t>{0});
  CHECK(ov_count_pairs(inst) == 16);
}

TEST_CASE("unsatisfiable formula gives no orthogonal pairs") {
  Formula f = parse_dimacs("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  CHECK(count_satisfying(f) == 0);
  CHECK(ov_count_pairs(cnf_to_ov(f)) == 0);
}

TEST_CASE("hand instances") {
  OVInstance inst;
  inst.d = 1;
  inst.A = {{1}};
  inst.B = {{1}};
  CHECK(ov_count_pairs(inst) == 0);

  inst.d = 3;
  inst.A = {{0}, {0}, {0}};
  inst.B = {{0}, {0}};
  CHECK(ov_count_pairs(inst) == 6);  // all-zero lists: every pair

  inst.d = 2;
  inst.A = {{0b01}};
  inst.B = {{0b10}};
  CHECK(ov_count_pairs(inst) == 1);  // disjoint supports are orthogonal
}

TEST_CASE("empty clause list makes every pair orthogonal") {
  Formula f;
  f.kind = FormulaKind::Cnf;
  f.num_vars = 3;
  auto inst = cnf_to_ov(f);
  CHECK(inst.d == 0);
  CHECK(inst.A.size() == 4);
  CHECK(inst.B.size() == 2);
  CHECK(ov_count_pairs(inst) == 8);
  CHECK(count_satisfying(f) == 8);
}

TEST_CASE("pair count equals the satisfying-assignment count") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CAPTURE(seed);
    Rng r(3000 + seed);
    int n = 2 + static_cast<int>(r.below(11));
    int m = 1 + static_cast<int>(r.below(20));
    auto f = random_formula(n, m, std::min(n, 3), r.next());
    CHECK(ov_count_pairs(cnf_to_ov(f)) == count_satisfying(f));
  }
}

TEST_CASE("pair count crosses word boundaries") {
  // 70 clauses force two words per vector
  Formula f;
  f.kind = FormulaKind::Cnf;
  f.num_vars = 4;
  for (int j = 0; j < 70; ++j)
    f.clauses.push_back(j % 2 == 0 ? std::vector<int>{1, 4} : std::vector<int>{-2, 3});
  auto inst = cnf_to_ov(f);
  CHECK(inst.A[0].size() == 2);
  CHECK(ov_count_pairs(inst) == count_satisfying(f));
}

TEST_CASE("parity of the pair count transfers to the truth table") {
  PropertySpec parity;
  parity.kind = PropertyKind::Parity;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CAPTURE(seed);
    Rng r(4000 + seed);
    int n = 2 + static_cast<int>(r.below(8));
    int m = 1 + static_cast<int>(r.below(12));
    auto f = random_formula(n, m, std::min(n, 3), r.next());
    CHECK(ov_count_pairs(cnf_to_ov(f)) % 2 == eval_property(truth_table(f), parity));
  }
}

TEST_CASE("argument validation") {
  Formula one;
  one.kind = FormulaKind::Cnf;
  one.num_vars = 1;
  one.clauses = {{1}};
  CHECK_THROWS_AS(cnf_to_ov(one), Error);

  Formula dnf = parse_dimacs("p dnf 2 1\n1 2 0\n");
  CHECK_THROWS_AS(cnf_to_ov(dnf), Error);

  OVInstance inst;
  inst.d = 1;
  CHECK_THROWS_AS(ov_count_pairs(inst), Error);  // empty lists
  inst.A = {{0}};
  inst.B = {{0, 0}};
  CHECK_THROWS_AS(ov_count_pairs(inst), Error);  // word count mismatch
  inst.B = {{2}};
  CHECK_THROWS_AS(ov_count_pairs(inst), Error);  // bit past coordinate d
  inst.d = -1;
  CHECK_THROWS_AS(ov_count_pairs(inst), Error);
}

}
