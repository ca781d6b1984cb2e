#ifndef QLAB_SIMULATOR_HPP
#define QLAB_SIMULATOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "qlab/circuit.hpp"

namespace qlab {

// Dense statevector on `width` wires; wire w is bit w of the amplitude index.
struct Statevector {
  int width = 0;
  std::vector<std::complex<double>> amp;
};

Statevector make_basis_state(int width, std::uint64_t index);

// Applies one gate, optionally restricted to the subspace where an extra
// control wire (outside the gate's own wires) is 1.
void apply_gate(Statevector* s, const Gate& g, int control = -1);

// Flips the sign of every amplitude whose bits on wires [0, num_wires) are
// all zero (reflection about the zero state of that register).
void reflect_about_zero(Statevector* s, int num_wires, int control = -1);

// Z on a single wire: sign flip where the wire is 1.
void sign_flip_on_one(Statevector* s, int wire, int control = -1);

// Global phase -1 (only observable in controlled form).
void global_sign_flip(Statevector* s, int control = -1);

double state_norm(const Statevector& s);

// <out|C|in>.  Throws when the width exceeds `cap` (memory guard) or the bit
// vectors do not match the width.  The run is norm-checked along the way.
std::complex<double> statevector_amplitude(const QuantumCircuit& c, const std::vector<bool>& out,
                                           const std::vector<bool>& in, int cap = 20);

// One application of the search iterate for (u, flag): sign flip on flagged
// states, u backwards, reflection about zero, u forwards, global sign.  Its
// eigenphases on the u|0> plane are +-2*asin(sqrt(a)) where a is the flagged
// probability of u|0...0>.
void grover_iterate(Statevector* s, const QuantumCircuit& u, int flag_wire, int control = -1);

// Exact outcome law of textbook phase estimation of the iterate on a grid of
// `grid` points (a power of two): the two eigenphase kernels at half weight
// each.  Index y corresponds to the estimate sin(pi * y / grid).
std::vector<double> phase_grid_distribution(double flagged_probability, std::uint64_t grid);

// Draws one phase-estimation outcome for flagged probability `a` with
// ceil-to-power-of-two grid >= M and returns the amplitude estimate
// sin(pi * y / grid).  Deterministic in (a, M, seed).
double estimate_from_probability(double a, std::uint64_t M, std::uint64_t seed);

// Amplitude estimation on a prepared circuit: simulates u once to obtain the
// flagged probability a, then samples the phase-estimation law.  With
// probability at least 9/10 over the seed the result lands within 100*pi/M
// of sqrt(a); exact at a = 0 and a = 1.  Requires M >= 2.
double amplitude_estimate(const QuantumCircuit& u, int flag_wire, std::uint64_t M,
                          std::uint64_t seed, int cap = 20);

// Iteration budget for target additive accuracy: ceil(100*pi / delta).
std::uint64_t strong_sim_iterations(double delta_prime);

// Estimates |<x|C|0...0>| within delta_prime using amplitude estimation on
// the doubled-register equality circuit.  When that circuit is too wide to
// simulate, the flagged probability is read off the n-wire statevector
// instead (the two agree by construction; tests pin this down exhaustively
// at small widths).  delta_prime must lie in [2^-(width+1), 1).
double strong_sim_additive(const QuantumCircuit& c, const std::vector<bool>& x,
                           double delta_prime, std::uint64_t seed, int cap = 20);

}  // namespace qlab

#endif
