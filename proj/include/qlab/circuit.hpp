#ifndef QLAB_CIRCUIT_HPP
#define QLAB_CIRCUIT_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

enum class GateKind { X, Cnot, Toffoli, H };

// Wires are referenced by index; q0/q1/q2 by arity:
//   X t        -> q0 = t
//   H t        -> q0 = t
//   CNOT c t   -> q0 = c, q1 = t
//   TOFFOLI a b t -> q0 = a, q1 = b, q2 = t
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = -1;
  int q1 = -1;
  int q2 = -1;

  bool operator==(const Gate&) const = default;
};

inline Gate gate_x(int t) { return {GateKind::X, t, -1, -1}; }
inline Gate gate_h(int t) { return {GateKind::H, t, -1, -1}; }
inline Gate gate_cnot(int c, int t) { return {GateKind::Cnot, c, t, -1}; }
inline Gate gate_toffoli(int a, int b, int t) { return {GateKind::Toffoli, a, b, t}; }

struct WireLayout {
  int num_inputs = 0;
  int num_ancillas = 0;  // everything between the inputs and the output wire
  int output = 0;

  bool operator==(const WireLayout&) const = default;
};

// Classical reversible circuit over {X, CNOT, TOFFOLI}.  Wire order: inputs
// first, work ancillas in the middle, output wire last.
struct ReversibleCircuit {
  int width = 0;
  WireLayout wires;
  std::vector<Gate> gates;
};

// Same gate model plus H; `wires` is only present when the circuit still
// carries the input/ancilla/output interpretation of its reversible core.
struct QuantumCircuit {
  int width = 0;
  std::optional<WireLayout> wires;
  std::vector<Gate> gates;
};

// Exact dyadic number numerator / 2^log2_denominator.  Large enough for any
// amplitude this library produces (numerator <= 2^24).
struct DyadicFraction {
  std::uint64_t numerator = 0;
  int log2_denominator = 0;

  double to_double() const { return std::ldexp(static_cast<double>(numerator), -log2_denominator); }
  // Binary digit i of the expansion C_0 . C_1 C_2 ...; digit 0 is the ones
  // place.  Defined for 0 <= i <= log2_denominator.
  int digit(int i) const { return static_cast<int>((numerator >> (log2_denominator - i)) & 1); }
  bool operator==(const DyadicFraction&) const = default;
};

// Compiles a CNF into a tidy reversible circuit: on input (x, 0...0, b) it
// outputs (x, 0...0, b xor f(x)).  One ancilla per clause records the clause
// value via its De Morgan complement (multi-controlled X on the negated
// literals, then X); a final multi-controlled X folds the clause bits into
// the output; everything is then uncomputed.  Multi-controlled X gates are
// lowered to a Toffoli ladder over shared borrow wires.
ReversibleCircuit compile_tidy(const Formula& f);

// Appends `controls`-controlled X on `target` to `gates`, borrowing from the
// pre-zeroed wires starting at `borrow_base`.  Exposed for reuse by the
// equality-marking construction.
void emit_multi_controlled_x(const std::vector<int>& controls, int target, int borrow_base,
                             std::vector<Gate>* gates);

// Runs a reversible circuit on one assignment of all wires.
std::vector<std::uint8_t> reversible_run(const ReversibleCircuit& c,
                                         const std::vector<std::uint8_t>& bits);

// 64 assignments at once, one bit lane per assignment.
void reversible_run_words(const ReversibleCircuit& c, std::vector<std::uint64_t>* lanes);

// The encoding circuit of a CNF: Hadamards on the inputs, the tidy core,
// Hadamards on the inputs again, X on the output.  Its amplitude at
// |0...0> -> |0...0> equals count(f) / 2^n.
QuantumCircuit assemble_encoding_circuit(const ReversibleCircuit& c);

// Hadamards on the inputs followed by the tidy core only.  Preparing |0...0>
// and measuring puts probability count(f) / 2^n on output wire = 1, the shape
// amplitude estimation consumes.  Returned flag wire is the output wire.
struct FlaggedCircuit {
  QuantumCircuit circuit;
  int flag_wire = 0;
};
FlaggedCircuit counting_preparation_circuit(const Formula& f);

// Exact <0|C_f|0> of the encoding circuit, computed by running the tidy core
// classically over all 2^n assignments (64 per word).  Checks tidiness on
// every assignment and throws if the core disturbs inputs or ancillas.
DyadicFraction fast_zero_amplitude(const Formula& f, int cap = 24);

// Doubled-register equality marker: runs `c` on the first register, prepares
// x on the second, and flips the flag wire exactly when the first register
// equals x.  The flag amplitude of |0...0> is then <x|C|0...0>.
FlaggedCircuit build_equality_estimation_circuit(const QuantumCircuit& c,
                                                 const std::vector<bool>& x);

}  // namespace qlab

#endif
