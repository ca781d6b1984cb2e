#include "qlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_wire(const Statevector& s, int wire) {
  if (wire < 0 || wire >= s.width) throw Error("simulator: wire index out of range");
}

std::uint64_t bit(int wire) { return std::uint64_t{1} << wire; }

}  // namespace

Statevector make_basis_state(int width, std::uint64_t index) {
  if (width < 1 || width > 30) throw Error("make_basis_state: width out of range");
  Statevector s;
  s.width = width;
  s.amp.assign(std::uint64_t{1} << width, {0.0, 0.0});
  s.amp[index] = {1.0, 0.0};
  return s;
}

void apply_gate(Statevector* s, const Gate& g, int control) {
  const std::uint64_t size = s->amp.size();
  const std::uint64_t cb = control >= 0 ? bit(control) : 0;
  if (control >= 0) check_wire(*s, control);
  switch (g.kind) {
    case GateKind::X: {
      check_wire(*s, g.q0);
      const std::uint64_t tb = bit(g.q0);
      for (std::uint64_t i = 0; i < size; ++i)
        if (!(i & tb) && (!cb || (i & cb))) std::swap(s->amp[i], s->amp[i | tb]);
      break;
    }
    case GateKind::H: {
      check_wire(*s, g.q0);
      const std::uint64_t tb = bit(g.q0);
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & tb) || (cb && !(i & cb))) continue;
        const auto a = s->amp[i], b = s->amp[i | tb];
        s->amp[i] = (a + b) * kInvSqrt2;
        s->amp[i | tb] = (a - b) * kInvSqrt2;
      }
      break;
    }
    case GateKind::Cnot: {
      check_wire(*s, g.q0);
      check_wire(*s, g.q1);
      const std::uint64_t c0 = bit(g.q0), tb = bit(g.q1);
      for (std::uint64_t i = 0; i < size; ++i)
        if ((i & c0) && !(i & tb) && (!cb || (i & cb))) std::swap(s->amp[i], s->amp[i | tb]);
      break;
    }
    case GateKind::Toffoli: {
      check_wire(*s, g.q0);
      check_wire(*s, g.q1);
      check_wire(*s, g.q2);
      const std::uint64_t c0 = bit(g.q0), c1 = bit(g.q1), tb = bit(g.q2);
      for (std::uint64_t i = 0; i < size; ++i)
        if ((i & c0) && (i & c1) && !(i & tb) && (!cb || (i & cb)))
          std::swap(s->amp[i], s->amp[i | tb]);
      break;
    }
  }
}

void reflect_about_zero(Statevector* s, int num_wires, int control) {
  if (num_wires < 1 || num_wires > s->width) throw Error("reflect_about_zero: bad register size");
  const std::uint64_t mask = (std::uint64_t{1} << num_wires) - 1;
  const std::uint64_t cb = control >= 0 ? bit(control) : 0;
  for (std::uint64_t i = 0; i < s->amp.size(); ++i)
    if (!(i & mask) && (!cb || (i & cb))) s->amp[i] = -s->amp[i];
}

void sign_flip_on_one(Statevector* s, int wire, int control) {
  check_wire(*s, wire);
  const std::uint64_t wb = bit(wire);
  const std::uint64_t cb = control >= 0 ? bit(control) : 0;
  for (std::uint64_t i = 0; i < s->amp.size(); ++i)
    if ((i & wb) && (!cb || (i & cb))) s->amp[i] = -s->amp[i];
}

void global_sign_flip(Statevector* s, int control) {
  const std::uint64_t cb = control >= 0 ? bit(control) : 0;
  for (std::uint64_t i = 0; i < s->amp.size(); ++i)
    if (!cb || (i & cb)) s->amp[i] = -s->amp[i];
}

double state_norm(const Statevector& s) {
  double n2 = 0;
  for (const auto& a : s.amp) n2 += std::norm(a);
  return std::sqrt(n2);
}

std::complex<double> statevector_amplitude(const QuantumCircuit& c, const std::vector<bool>& out,
                                           const std::vector<bool>& in, int cap) {
  if (c.width > cap)
    throw Error("statevector_amplitude: width " + std::to_string(c.width) +
                " exceeds the simulation cap of " + std::to_string(cap));
  if (static_cast<int>(in.size()) != c.width || static_cast<int>(out.size()) != c.width)
    throw Error("statevector_amplitude: basis vector length does not match width");
  std::uint64_t in_idx = 0, out_idx = 0;
  for (int w = 0; w < c.width; ++w) {
    if (in[w]) in_idx |= bit(w);
    if (out[w]) out_idx |= bit(w);
  }
  Statevector s = make_basis_state(c.width, in_idx);
  int since_check = 0;
  for (const Gate& g : c.gates) {
    apply_gate(&s, g);
    if (++since_check == 32) {
      since_check = 0;
      if (std::abs(state_norm(s) - 1.0) > 1e-10)
        throw Error("statevector_amplitude: norm drifted beyond 1e-10");
    }
  }
  if (std::abs(state_norm(s) - 1.0) > 1e-10)
    throw Error("statevector_amplitude: norm drifted beyond 1e-10");
  return s.amp[out_idx];
}

void grover_iterate(Statevector* s, const QuantumCircuit& u, int flag_wire, int control) {
  sign_flip_on_one(s, flag_wire, control);
  for (auto it = u.gates.rbegin(); it != u.gates.rend(); ++it) apply_gate(s, *it, control);
  reflect_about_zero(s, u.width, control);
  for (const Gate& g : u.gates) apply_gate(s, g, control);
  global_sign_flip(s, control);
}

std::vector<double> phase_grid_distribution(double flagged_probability, std::uint64_t grid) {
  if (grid < 2 || (grid & (grid - 1)) != 0)
    throw Error("phase_grid_distribution: grid must be a power of two, at least 2");
  const double a = std::clamp(flagged_probability, 0.0, 1.0);
  const double theta = std::asin(std::sqrt(a));
  const double omega = theta / std::numbers::pi;  // eigenphase fraction in [0, 1/2]

  // Squared Dirichlet kernel of the estimation register, |.|^2 of the
  // geometric sum (1/grid) sum_j e^(2 pi i j d).
  auto kernel = [grid](double d) {
    d -= std::round(d);
    if (std::abs(d) < 1e-15) return 1.0;
    const double num = std::sin(std::numbers::pi * static_cast<double>(grid) * d);
    const double den = static_cast<double>(grid) * std::sin(std::numbers::pi * d);
    return (num * num) / (den * den);
  };

  std::vector<double> p(grid);
  double total = 0;
  for (std::uint64_t y = 0; y < grid; ++y) {
    const double frac = static_cast<double>(y) / static_cast<double>(grid);
    p[y] = 0.5 * kernel(frac - omega) + 0.5 * kernel(frac - (1.0 - omega));
    total += p[y];
  }
  for (auto& v : p) v /= total;
  return p;
}

double estimate_from_probability(double a, std::uint64_t M, std::uint64_t seed) {
  if (M < 2) throw Error("amplitude estimation: M must be at least 2");
  std::uint64_t grid = 2;
  while (grid < M) grid <<= 1;
  const std::vector<double> p = phase_grid_distribution(a, grid);
  Rng rng(seed);
  const double r = rng.real();
  double cdf = 0;
  std::uint64_t y = grid - 1;
  for (std::uint64_t i = 0; i < grid; ++i) {
    cdf += p[i];
    if (r < cdf) {
      y = i;
      break;
    }
  }
  return std::abs(std::sin(std::numbers::pi * static_cast<double>(y) / static_cast<double>(grid)));
}

double amplitude_estimate(const QuantumCircuit& u, int flag_wire, std::uint64_t M,
                          std::uint64_t seed, int cap) {
  if (M < 2) throw Error("amplitude_estimate: M must be at least 2");
  if (flag_wire < 0 || flag_wire >= u.width) throw Error("amplitude_estimate: bad flag wire");
  if (u.width > cap)
    throw Error("amplitude_estimate: width " + std::to_string(u.width) +
                " exceeds the simulation cap of " + std::to_string(cap));
  Statevector s = make_basis_state(u.width, 0);
  for (const Gate& g : u.gates) apply_gate(&s, g);
  double a = 0;
  const std::uint64_t fb = bit(flag_wire);
  for (std::uint64_t i = 0; i < s.amp.size(); ++i)
    if (i & fb) a += std::norm(s.amp[i]);
  return estimate_from_probability(a, M, seed);
}

std::uint64_t strong_sim_iterations(double delta_prime) {
  return static_cast<std::uint64_t>(std::ceil(100.0 * std::numbers::pi / delta_prime));
}

double strong_sim_additive(const QuantumCircuit& c, const std::vector<bool>& x,
                           double delta_prime, std::uint64_t seed, int cap) {
  const int n = c.width;
  if (static_cast<int>(x.size()) != n)
    throw Error("strong_sim_additive: x length does not match circuit width");
  if (!(delta_prime >= std::ldexp(1.0, -(n + 1)) && delta_prime < 1.0))
    throw Error("strong_sim_additive: delta_prime must lie in [2^-(n+1), 1)");
  const std::uint64_t M = strong_sim_iterations(delta_prime);
  const FlaggedCircuit eq = build_equality_estimation_circuit(c, x);
  if (eq.circuit.width <= cap)
    return amplitude_estimate(eq.circuit, eq.flag_wire, M, seed, cap);
  // Too wide to simulate doubled; the flagged probability of the equality
  // circuit is |<x|C|0>|^2, which the single-register statevector provides.
  std::vector<bool> zero(n, false);
  const std::complex<double> amp = statevector_amplitude(c, x, zero, cap);
  return estimate_from_probability(std::norm(amp), M, seed);
}

}  // namespace qlab
