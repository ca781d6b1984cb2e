#ifndef QLAB_JSON_IO_HPP
#define QLAB_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "qlab/circuit.hpp"
#include "qlab/lattice.hpp"
#include "qlab/ov.hpp"

namespace qlab {

// Key order is fixed so identical objects print identical bytes.
using Json = nlohmann::ordered_json;

// {width, wires: {inputs, ancillas, output}, gates: [{g, q}]}.  The wires
// block is present only when the circuit carries a layout.  Gate names are
// H, X, CNOT, TOFFOLI with wire lists of length 1, 1, 2, 3.
Json circuit_to_json(const QuantumCircuit& c);
QuantumCircuit circuit_from_json(const Json& j);

// {p, n, m, k, d, r_pow_p, B, t, provenance} with r_pow_p an exact integer
// and B (row-major) and t as decimal strings that round-trip doubles.
Json lattice_to_json(const LatticeInstance& inst);
LatticeInstance lattice_from_json(const Json& j);

// {d, A, B} with each vector a string of '0'/'1', character j = coordinate j.
Json ov_to_json(const OVInstance& inst);
OVInstance ov_from_json(const Json& j);

// 17-significant-digit decimal form; parsing it back recovers the double
// bit for bit.
std::string decimal_string(double v);
double decimal_from_string(const std::string& s);

}  // namespace qlab

#endif
