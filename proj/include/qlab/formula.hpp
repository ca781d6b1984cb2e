#ifndef QLAB_FORMULA_HPP
#define QLAB_FORMULA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlab/common.hpp"

namespace qlab {

enum class FormulaKind { Cnf, Dnf };

// A CNF or DNF formula over variables 1..num_vars.  Literals are signed,
// DIMACS style: +v is the variable, -v its negation.  Invariants kept by
// every producer in this library:
//   * every literal satisfies 1 <= |lit| <= num_vars
//   * literals within a clause are distinct and no clause holds both v and -v
// Empty clauses are allowed; for CNF such a clause is unsatisfiable, for DNF
// an empty term is a tautology.  num_vars == 0 is legal and describes the
// single empty assignment.
struct Formula {
  FormulaKind kind = FormulaKind::Cnf;
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool operator==(const Formula&) const = default;

  int width() const {
    std::size_t w = 0;
    for (const auto& c : clauses) w = c.size() > w ? c.size() : w;
    return static_cast<int>(w);
  }
};

// Throws Error if the structural invariants above are violated.
void validate(const Formula& f);

// Truth table of a formula on num_vars variables.  Row i (0 <= i < 2^n)
// is the assignment where variable j takes bit (i >> (j-1)) & 1, i.e.
// variable 1 is the least significant bit of the row index.  Bits are packed
// little-endian into 64-bit words: row i lives at words[i/64], bit i%64.
struct TruthTable {
  int num_vars = 0;
  std::vector<std::uint64_t> words;

  std::uint64_t size() const { return std::uint64_t{1} << num_vars; }
  bool get(std::uint64_t row) const { return (words[row >> 6] >> (row & 63)) & 1; }
  void set(std::uint64_t row, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (row & 63);
    if (v)
      words[row >> 6] |= mask;
    else
      words[row >> 6] &= ~mask;
  }
  // Number of rows evaluating to 1.
  std::uint64_t weight() const;

  bool operator==(const TruthTable&) const = default;
};

// Canonical text form "n=<vars>:<hex>" where the hex digits spell the table
// read as one big binary number (row i has place value 2^i), most significant
// digit first, zero-padded to ceil(2^n / 4) digits.
std::string to_hex(const TruthTable& t);
TruthTable truth_table_from_hex(const std::string& text);

// Truth-table properties the laboratory studies.  `Or` asks whether any row
// is 1; the counting family refines that question.
enum class PropertyKind {
  Or,
  Count,             // number of satisfying rows
  Parity,            // count mod 2
  CountMod,          // count mod `modulus`
  Majority,          // 1 iff count >= 2^n / 2
  StrictMajority,    // 1 iff count >  2^n / 2
  AdditiveCount,     // count reported exactly by this reference evaluator;
                     // `slack` is the tolerated additive error of solvers
  WeightDistinguish  // partial: 1 at count == level_one, 0 at count == level_zero
};

struct PropertySpec {
  PropertyKind kind = PropertyKind::Or;
  std::uint64_t modulus = 0;     // CountMod: q, must satisfy 3 <= q <= N/2
  std::uint64_t slack = 0;       // AdditiveCount: Delta, must satisfy 1 <= Delta < N
  std::uint64_t level_one = 0;   // WeightDistinguish: weight mapped to 1
  std::uint64_t level_zero = 0;  // WeightDistinguish: weight mapped to 0

  bool operator==(const PropertySpec&) const = default;
};

std::string property_name(PropertyKind k);
PropertyKind property_from_name(const std::string& name);

// ---- formula operations ----------------------------------------------------

// DIMACS reader.  Accepts the standard "p cnf <n> <m>" header and the "p dnf"
// extension; 'c' lines are comments.  Clauses may span lines and end with 0.
// Duplicate literals inside a clause are dropped; a clause containing both a
// variable and its negation is rejected.  Errors carry 1-based line numbers.
Formula parse_dimacs(const std::string& text);

// Inverse of parse_dimacs up to whitespace; parse(emit(f)) == f.
std::string emit_dimacs(const Formula& f);

// Evaluates f on one assignment, assignment[j-1] being variable j.
bool evaluate(const Formula& f, const std::vector<bool>& assignment);

// Same, with variable j read from bit (j-1) of `bits`.  Usable for n <= 64.
bool evaluate_bits(const Formula& f, std::uint64_t bits);

// De Morgan dual: flips CNF<->DNF and every literal.  Involution, and the
// result accepts exactly the assignments f rejects.
Formula negate(const Formula& f);

// Full truth table; throws when num_vars exceeds `cap` (memory guard).
TruthTable truth_table(const Formula& f, int cap = 24);

// Number of satisfying assignments, same cap.  Internally evaluates 64
// assignments per word and may split the range across threads; the result is
// independent of the split.
std::uint64_t count_satisfying(const Formula& f, int cap = 24);

// Evaluates a property of a truth table.  Returns the count for Count and
// AdditiveCount, the residue for CountMod, and 0/1 for the rest.  Throws
// PromiseViolation when a WeightDistinguish table has weight at neither
// level, and Error for parameter values outside their documented ranges.
std::uint64_t eval_property(const TruthTable& t, const PropertySpec& p);

// Deterministic random CNF: m clauses, each over 1..k distinct variables
// with random polarity.  Identical (n, m, k, seed) give identical formulas.
Formula random_formula(int n, int m, int k, std::uint64_t seed);

// Value of variable `var` over the 64 assignments {base, ..., base+63} of the
// row-index order above, one bit per assignment.  Backbone of the 64-way
// parallel evaluators.
std::uint64_t assignment_lane(int var, std::uint64_t base);

}  // namespace qlab

#endif
