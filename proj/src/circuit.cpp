#include "qlab/circuit.hpp"

#include <algorithm>
#include <bit>

namespace qlab {

void emit_multi_controlled_x(const std::vector<int>& controls, int target, int borrow_base,
                             std::vector<Gate>* gates) {
  const int w = static_cast<int>(controls.size());
  if (w == 0) {
    gates->push_back(gate_x(target));
    return;
  }
  if (w == 1) {
    gates->push_back(gate_cnot(controls[0], target));
    return;
  }
  if (w == 2) {
    gates->push_back(gate_toffoli(controls[0], controls[1], target));
    return;
  }
  // Toffoli ladder: borrow i accumulates the AND of the first i+2 controls.
  // The ladder is uncomputed immediately so borrows return to zero.
  std::vector<Gate> ladder;
  ladder.push_back(gate_toffoli(controls[0], controls[1], borrow_base));
  for (int i = 2; i < w - 1; ++i)
    ladder.push_back(gate_toffoli(controls[i], borrow_base + i - 2, borrow_base + i - 1));
  for (const Gate& g : ladder) gates->push_back(g);
  gates->push_back(gate_toffoli(controls[w - 1], borrow_base + w - 3, target));
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) gates->push_back(*it);
}

ReversibleCircuit compile_tidy(const Formula& f) {
  if (f.kind != FormulaKind::Cnf) throw Error("compile_tidy: input must be CNF");
  validate(f);
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());

  ReversibleCircuit c;
  if (m == 0) {
    // The empty CNF is the constant 1: just flip the output.
    c.width = n + 1;
    c.wires = {n, 0, n};
    c.gates.push_back(gate_x(n));
    return c;
  }

  const int widest = std::max(f.width(), m);
  const int borrows = std::max(0, widest - 2);
  const int borrow_base = n + m;
  const int output = n + m + borrows;
  c.width = output + 1;
  c.wires = {n, m + borrows, output};

  // Clause ancilla j ends up holding clause j's value: flip it when every
  // literal is false (all negated literals hold), then invert.
  std::vector<Gate> compute;
  for (int j = 0; j < m; ++j) {
    const auto& clause = f.clauses[j];
    std::vector<int> controls;
    controls.reserve(clause.size());
    for (int lit : clause) {
      const int wire = (lit < 0 ? -lit : lit) - 1;
      if (lit > 0) compute.push_back(gate_x(wire));
      controls.push_back(wire);
    }
    emit_multi_controlled_x(controls, n + j, borrow_base, &compute);
    for (int lit : clause)
      if (lit > 0) compute.push_back(gate_x((lit < 0 ? -lit : lit) - 1));
    compute.push_back(gate_x(n + j));
  }

  c.gates = compute;
  std::vector<int> clause_wires(m);
  for (int j = 0; j < m; ++j) clause_wires[j] = n + j;
  emit_multi_controlled_x(clause_wires, output, borrow_base, &c.gates);
  // Uncompute: every gate is self-inverse, so replay the prefix backwards.
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) c.gates.push_back(*it);
  return c;
}

std::vector<std::uint8_t> reversible_run(const ReversibleCircuit& c,
                                         const std::vector<std::uint8_t>& bits) {
  if (static_cast<int>(bits.size()) != c.width)
    throw Error("reversible_run: bit vector length does not match circuit width");
  std::vector<std::uint8_t> b = bits;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X: b[g.q0] ^= 1; break;
      case GateKind::Cnot: b[g.q1] ^= b[g.q0]; break;
      case GateKind::Toffoli: b[g.q2] ^= b[g.q0] & b[g.q1]; break;
      case GateKind::H: throw Error("reversible_run: H gate is not classical");
    }
  }
  return b;
}

void reversible_run_words(const ReversibleCircuit& c, std::vector<std::uint64_t>* lanes) {
  if (static_cast<int>(lanes->size()) != c.width)
    throw Error("reversible_run_words: lane count does not match circuit width");
  std::uint64_t* b = lanes->data();
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X: b[g.q0] = ~b[g.q0]; break;
      case GateKind::Cnot: b[g.q1] ^= b[g.q0]; break;
      case GateKind::Toffoli: b[g.q2] ^= b[g.q0] & b[g.q1]; break;
      case GateKind::H: throw Error("reversible_run_words: H gate is not classical");
    }
  }
}

QuantumCircuit assemble_encoding_circuit(const ReversibleCircuit& c) {
  QuantumCircuit q;
  q.width = c.width;
  q.wires = c.wires;
  q.gates.reserve(c.gates.size() + 2 * c.wires.num_inputs + 1);
  for (int i = 0; i < c.wires.num_inputs; ++i) q.gates.push_back(gate_h(i));
  q.gates.insert(q.gates.end(), c.gates.begin(), c.gates.end());
  for (int i = 0; i < c.wires.num_inputs; ++i) q.gates.push_back(gate_h(i));
  q.gates.push_back(gate_x(c.wires.output));
  return q;
}

FlaggedCircuit counting_preparation_circuit(const Formula& f) {
  ReversibleCircuit c = compile_tidy(f);
  FlaggedCircuit out;
  out.circuit.width = c.width;
  out.circuit.wires = c.wires;
  for (int i = 0; i < c.wires.num_inputs; ++i) out.circuit.gates.push_back(gate_h(i));
  out.circuit.gates.insert(out.circuit.gates.end(), c.gates.begin(), c.gates.end());
  out.flag_wire = c.wires.output;
  return out;
}

DyadicFraction fast_zero_amplitude(const Formula& f, int cap) {
  if (f.num_vars > cap)
    throw Error("fast_zero_amplitude: " + std::to_string(f.num_vars) +
                " variables exceed the enumeration cap of " + std::to_string(cap));
  const ReversibleCircuit c = compile_tidy(f);
  const int n = f.num_vars;
  const std::uint64_t rows = std::uint64_t{1} << n;
  const std::uint64_t tail_mask = rows < 64 ? (std::uint64_t{1} << rows) - 1 : ~std::uint64_t{0};

  std::vector<std::uint64_t> lanes(c.width);
  std::uint64_t count = 0;
  for (std::uint64_t base = 0; base < rows; base += 64) {
    std::fill(lanes.begin(), lanes.end(), 0);
    for (int v = 1; v <= n; ++v) lanes[v - 1] = assignment_lane(v, base);
    reversible_run_words(c, &lanes);
    for (int v = 1; v <= n; ++v)
      if (lanes[v - 1] != assignment_lane(v, base))
        throw Error("fast_zero_amplitude: circuit disturbed an input wire");
    for (int w = n; w < c.wires.output; ++w)
      if (lanes[w] != 0) throw Error("fast_zero_amplitude: circuit left an ancilla dirty");
    std::uint64_t out = lanes[c.wires.output];
    if (base + 64 >= rows) out &= tail_mask;
    count += std::popcount(out);
  }
  return {count, n};
}

FlaggedCircuit build_equality_estimation_circuit(const QuantumCircuit& c,
                                                 const std::vector<bool>& x) {
  const int n = c.width;
  if (static_cast<int>(x.size()) != n)
    throw Error("build_equality_estimation_circuit: x length does not match circuit width");
  if (n < 1) throw Error("build_equality_estimation_circuit: empty circuit");
  const int flag = 2 * n;
  const int borrow_base = 2 * n + 1;
  const int borrows = std::max(0, n - 2);

  FlaggedCircuit out;
  out.flag_wire = flag;
  out.circuit.width = 2 * n + 1 + borrows;
  out.circuit.gates = c.gates;  // register one carries C|0...0>
  // Register two holds x throughout; it is borrowed for the comparison and
  // restored afterwards.
  for (int i = 0; i < n; ++i)
    if (x[i]) out.circuit.gates.push_back(gate_x(n + i));
  std::vector<Gate> compare;
  for (int i = 0; i < n; ++i) {
    compare.push_back(gate_cnot(i, n + i));
    compare.push_back(gate_x(n + i));
  }
  out.circuit.gates.insert(out.circuit.gates.end(), compare.begin(), compare.end());
  std::vector<int> controls(n);
  for (int i = 0; i < n; ++i) controls[i] = n + i;
  emit_multi_controlled_x(controls, flag, borrow_base, &out.circuit.gates);
  for (auto it = compare.rbegin(); it != compare.rend(); ++it) out.circuit.gates.push_back(*it);
  return out;
}

}  // namespace qlab
