#include "qlab/json_io.hpp"

#include <cstdio>
#include <cstdlib>

#include "qlab/common.hpp"

namespace qlab {

namespace {

const Json& field(const Json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key))
    throw Error(std::string(context) + ": missing field \"" + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key, const char* context) {
  const Json& v = field(j, key, context);
  if (!v.is_number_integer())
    throw Error(std::string(context) + ": field \"" + key + "\" must be an integer");
  return v.get<int>();
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Toffoli: return "TOFFOLI";
  }
  throw Error("circuit_to_json: unknown gate kind");
}

}  // namespace

std::string decimal_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double decimal_from_string(const std::string& s) {
  if (s.empty()) throw Error("decimal_from_string: empty string");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw Error("decimal_from_string: cannot parse \"" + s + "\"");
  return v;
}

Json circuit_to_json(const QuantumCircuit& c) {
  Json j;
  j["width"] = c.width;
  if (c.wires) {
    Json w;
    w["inputs"] = c.wires->num_inputs;
    w["ancillas"] = c.wires->num_ancillas;
    w["output"] = c.wires->output;
    j["wires"] = std::move(w);
  }
  Json gates = Json::array();
  for (const Gate& g : c.gates) {
    Json item;
    item["g"] = gate_name(g.kind);
    Json q = Json::array();
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
        q.push_back(g.q0);
        break;
      case GateKind::Cnot:
        q.push_back(g.q0);
        q.push_back(g.q1);
        break;
      case GateKind::Toffoli:
        q.push_back(g.q0);
        q.push_back(g.q1);
        q.push_back(g.q2);
        break;
    }
    item["q"] = std::move(q);
    gates.push_back(std::move(item));
  }
  j["gates"] = std::move(gates);
  return j;
}

QuantumCircuit circuit_from_json(const Json& j) {
  const char* ctx = "circuit_from_json";
  QuantumCircuit c;
  c.width = int_field(j, "width", ctx);
  if (c.width < 1) throw Error(std::string(ctx) + ": width must be positive");
  if (j.contains("wires")) {
    const Json& w = j.at("wires");
    WireLayout layout;
    layout.num_inputs = int_field(w, "inputs", ctx);
    layout.num_ancillas = int_field(w, "ancillas", ctx);
    layout.output = int_field(w, "output", ctx);
    if (layout.num_inputs < 0 || layout.num_ancillas < 0 || layout.output < 0 ||
        layout.output >= c.width)
      throw Error(std::string(ctx) + ": wire layout out of range");
    c.wires = layout;
  }
  const Json& gates = field(j, "gates", ctx);
  if (!gates.is_array()) throw Error(std::string(ctx) + ": \"gates\" must be an array");
  for (const Json& item : gates) {
    const Json& name = field(item, "g", ctx);
    const Json& q = field(item, "q", ctx);
    if (!name.is_string() || !q.is_array())
      throw Error(std::string(ctx) + ": malformed gate entry");
    std::vector<int> wires;
    for (const Json& v : q) {
      if (!v.is_number_integer()) throw Error(std::string(ctx) + ": gate wires must be integers");
      const int wire = v.get<int>();
      if (wire < 0 || wire >= c.width)
        throw Error(std::string(ctx) + ": gate wire " + std::to_string(wire) +
                    " outside width " + std::to_string(c.width));
      for (int seen : wires)
        if (seen == wire) throw Error(std::string(ctx) + ": gate wires must be distinct");
      wires.push_back(wire);
    }
    const std::string n = name.get<std::string>();
    if (n == "H" && wires.size() == 1) {
      c.gates.push_back(gate_h(wires[0]));
    } else if (n == "X" && wires.size() == 1) {
      c.gates.push_back(gate_x(wires[0]));
    } else if (n == "CNOT" && wires.size() == 2) {
      c.gates.push_back(gate_cnot(wires[0], wires[1]));
    } else if (n == "TOFFOLI" && wires.size() == 3) {
      c.gates.push_back(gate_toffoli(wires[0], wires[1], wires[2]));
    } else {
      throw Error(std::string(ctx) + ": unknown gate \"" + n + "\" with " +
                  std::to_string(wires.size()) + " wires");
    }
  }
  return c;
}

Json lattice_to_json(const LatticeInstance& inst) {
  Json j;
  j["p"] = inst.p;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["k"] = inst.k;
  j["d"] = inst.d;
  j["r_pow_p"] = inst.r_pow_p;
  Json b = Json::array();
  for (int r = 0; r < inst.d; ++r)
    for (int c = 0; c < inst.n; ++c) b.push_back(decimal_string(inst.B(r, c)));
  j["B"] = std::move(b);
  Json t = Json::array();
  for (int r = 0; r < inst.d; ++r) t.push_back(decimal_string(inst.t(r)));
  j["t"] = std::move(t);
  j["provenance"] = inst.provenance;
  return j;
}

LatticeInstance lattice_from_json(const Json& j) {
  const char* ctx = "lattice_from_json";
  LatticeInstance inst;
  const Json& p = field(j, "p", ctx);
  if (!p.is_number()) throw Error(std::string(ctx) + ": field \"p\" must be a number");
  inst.p = p.get<double>();
  inst.n = int_field(j, "n", ctx);
  inst.m = int_field(j, "m", ctx);
  inst.k = int_field(j, "k", ctx);
  inst.d = int_field(j, "d", ctx);
  if (!(inst.p >= 1) || inst.n < 0 || inst.m < 0 || inst.k < 0 || inst.d < 0)
    throw Error(std::string(ctx) + ": parameters out of range");
  const Json& r = field(j, "r_pow_p", ctx);
  if (!r.is_number_integer())
    throw Error(std::string(ctx) + ": field \"r_pow_p\" must be an exact integer");
  inst.r_pow_p = r.get<std::int64_t>();

  const Json& b = field(j, "B", ctx);
  const Json& t = field(j, "t", ctx);
  const std::size_t cells = static_cast<std::size_t>(inst.d) * inst.n;
  if (!b.is_array() || b.size() != cells)
    throw Error(std::string(ctx) + ": \"B\" must hold d*n decimal strings");
  if (!t.is_array() || t.size() != static_cast<std::size_t>(inst.d))
    throw Error(std::string(ctx) + ": \"t\" must hold d decimal strings");
  inst.B = Eigen::MatrixXd(inst.d, inst.n);
  std::size_t idx = 0;
  for (int row = 0; row < inst.d; ++row)
    for (int col = 0; col < inst.n; ++col) {
      const Json& cell = b.at(idx++);
      if (!cell.is_string()) throw Error(std::string(ctx) + ": matrix cells must be strings");
      inst.B(row, col) = decimal_from_string(cell.get<std::string>());
    }
  inst.t = Eigen::VectorXd(inst.d);
  for (int row = 0; row < inst.d; ++row) {
    const Json& cell = t.at(row);
    if (!cell.is_string()) throw Error(std::string(ctx) + ": vector cells must be strings");
    inst.t(row) = decimal_from_string(cell.get<std::string>());
  }
  const Json& prov = field(j, "provenance", ctx);
  if (!prov.is_string()) throw Error(std::string(ctx) + ": provenance must be a string");
  inst.provenance = prov.get<std::string>();
  return inst;
}

Json ov_to_json(const OVInstance& inst) {
  auto encode = [&](const std::vector<std::vector<std::uint64_t>>& list) {
    Json out = Json::array();
    for (const auto& vec : list) {
      std::string bits(inst.d, '0');
      for (int jj = 0; jj < inst.d; ++jj)
        if ((vec[jj / 64] >> (jj % 64)) & 1) bits[jj] = '1';
      out.push_back(std::move(bits));
    }
    return out;
  };
  Json j;
  j["d"] = inst.d;
  j["A"] = encode(inst.A);
  j["B"] = encode(inst.B);
  return j;
}

OVInstance ov_from_json(const Json& j) {
  const char* ctx = "ov_from_json";
  OVInstance inst;
  inst.d = int_field(j, "d", ctx);
  if (inst.d < 0) throw Error(std::string(ctx) + ": dimension must be nonnegative");
  const std::size_t words = (static_cast<std::size_t>(inst.d) + 63) / 64;
  auto decode = [&](const char* key) {
    const Json& list = field(j, key, ctx);
    if (!list.is_array())
      throw Error(std::string(ctx) + ": \"" + key + "\" must be an array");
    std::vector<std::vector<std::uint64_t>> out;
    for (const Json& item : list) {
      if (!item.is_string())
        throw Error(std::string(ctx) + ": vectors must be bitstrings");
      const std::string bits = item.get<std::string>();
      if (bits.size() != static_cast<std::size_t>(inst.d))
        throw Error(std::string(ctx) + ": bitstring length " + std::to_string(bits.size()) +
                    " does not match d = " + std::to_string(inst.d));
      std::vector<std::uint64_t> vec(words, 0);
      for (int jj = 0; jj < inst.d; ++jj) {
        if (bits[jj] == '1')
          vec[jj / 64] |= std::uint64_t{1} << (jj % 64);
        else if (bits[jj] != '0')
          throw Error(std::string(ctx) + ": bitstrings may contain only 0 and 1");
      }
      out.push_back(std::move(vec));
    }
    return out;
  };
  inst.A = decode("A");
  inst.B = decode("B");
  return inst;
}

}  // namespace qlab
