// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every tolerance and sample count is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlab/bounds.hpp"
#include "qlab/circuit.hpp"
#include "qlab/common.hpp"
#include "qlab/formula.hpp"
#include "qlab/lattice.hpp"
#include "qlab/ov.hpp"
#include "qlab/simulator.hpp"
#include "qlab/width_reduction.hpp"

using namespace qlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Unsatisfied-clause count of a CNF under the assignment packed into `bits`.
int unsatisfied_clauses(const Formula& f, std::uint64_t bits) {
  int bad = 0;
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      int var = lit > 0 ? lit : -lit;
      bool value = (bits >> (var - 1)) & 1;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) ++bad;
  }
  return bad;
}

// Criterion 1: splitting into width-k formulas neither loses nor invents
// solutions, and the leaf count respects binom(m + ceil(n/k), ceil(n/k)).
Outcome criterion_width_reduction() {
  const double limit = 120.0;
  auto start = Clock::now();
  int good = 0;
  std::uint64_t max_leaves = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(40000 + i);
    int n = 5 + static_cast<int>(rng.below(10));  // 5..14
    int m = 1 + static_cast<int>(rng.below(40));  // 1..40
    int k = 3 + i % 3;                            // 3, 4, 5
    Formula f = random_formula(n, m, n, 41000 + i);
    auto rep = verify_count_preservation(f, k);
    if (rep.pass) ++good;
    if (rep.leaves > max_leaves) max_leaves = rep.leaves;
  }
  double elapsed = seconds_since(start);
  return {good == 200 && elapsed <= limit,
          format("%d/200 formulas exact and within bound, max leaves %llu, %.1fs (limit %.0fs)",
                 good, static_cast<unsigned long long>(max_leaves), elapsed, limit)};
}

// Criterion 2: the encoding circuit's zero-to-zero amplitude equals
// count / 2^n, by dense statevector for compiled width <= 18 and by the
// word-parallel classical route (with tidiness checks) for n <= 16.
Outcome criterion_circuit_encoding() {
  const double limit = 300.0;
  const double tol = 1e-9;
  auto start = Clock::now();

  int simulated = 0;
  int draw = 0;
  double worst = 0;
  while (simulated < 50) {
    Rng rng(42000 + draw);
    int n = 2 + static_cast<int>(rng.below(7));            // 2..8
    int m = 1 + static_cast<int>(rng.below(6));            // 1..6
    int k = 1 + static_cast<int>(rng.below(n < 4 ? n : 4));
    Formula f = random_formula(n, m, k, 43000 + draw);
    ++draw;
    ReversibleCircuit core = compile_tidy(f);
    if (core.width > 18) continue;
    QuantumCircuit enc = assemble_encoding_circuit(core);
    std::vector<bool> zeros(enc.width, false);
    std::complex<double> amp = statevector_amplitude(enc, zeros, zeros);
    double expect =
        static_cast<double>(count_satisfying(f)) / std::ldexp(1.0, f.num_vars);
    double err = std::abs(amp - std::complex<double>(expect, 0.0));
    if (err > worst) worst = err;
    ++simulated;
  }

  int exact = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(44000 + i);
    int n = 1 + static_cast<int>(rng.below(16));  // 1..16, any clause width
    int m = 1 + static_cast<int>(rng.below(12));
    int k = 1 + static_cast<int>(rng.below(n));
    Formula f = random_formula(n, m, k, 45000 + i);
    DyadicFraction d = fast_zero_amplitude(f);  // throws if any ancilla is left dirty
    if (d.numerator == count_satisfying(f) && d.log2_denominator == n) ++exact;
  }

  double elapsed = seconds_since(start);
  return {worst <= tol && exact == 50 && elapsed <= limit,
          format("50 statevector runs, worst error %.2e (tol %.0e); %d/50 exact dyadic "
                 "amplitudes; %.1fs (limit %.0fs)",
                 worst, tol, exact, elapsed, limit)};
}

// Criterion 3: reading all n+1 digits of the dyadic amplitude recovers the
// count exactly, and its top two digits decide majority.
Outcome criterion_readout() {
  int good = 0;
  const int trials = 120;
  PropertySpec maj;
  maj.kind = PropertyKind::Majority;
  for (int i = 0; i < trials; ++i) {
    Rng rng(46000 + i);
    int n = 1 + static_cast<int>(rng.below(10));  // 1..10
    int m = 1 + static_cast<int>(rng.below(10));
    int k = 1 + static_cast<int>(rng.below(n));
    Formula f = random_formula(n, m, k, 47000 + i);
    std::uint64_t count = count_satisfying(f);
    DyadicFraction d = fast_zero_amplitude(f);

    std::uint64_t digits = 0;
    for (int b = 0; b <= d.log2_denominator; ++b) digits = digits * 2 + d.digit(b);
    bool full = d.log2_denominator == n && digits == count &&
                std::llround(d.to_double() * std::ldexp(1.0, n)) ==
                    static_cast<long long>(count);

    std::uint64_t majority = eval_property(truth_table(f), maj);
    bool two = static_cast<std::uint64_t>(d.digit(0) | d.digit(1)) == majority;

    if (full && two) ++good;
  }
  return {good == trials,
          format("%d/%d formulas: full readout recovers the count, top two digits "
                 "match majority",
                 good, trials)};
}

// Criterion 4: phase-estimation amplitude readings land within 100*pi/M of
// sqrt(a) at least 90% of the time (minus three binomial sigmas).
Outcome criterion_estimation_contract() {
  const double limit = 300.0;
  auto start = Clock::now();
  const std::uint64_t M = 4096;
  const double tol = 100.0 * M_PI / static_cast<double>(M);
  const int trials = 500;
  const double sigma = std::sqrt(0.9 * 0.1 / trials);
  const int need = static_cast<int>(std::ceil((0.9 - 3.0 * sigma) * trials));

  std::string counts;
  bool pass = true;
  const double values[3] = {0.125, 0.25, 0.75};
  for (int ai = 0; ai < 3; ++ai) {
    double a = values[ai];
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      double est = estimate_from_probability(a, M, 100000 + 1000 * ai + t);
      if (std::abs(est - std::sqrt(a)) <= tol) ++hits;
    }
    pass = pass && hits >= need;
    counts += format("%s a=%.3f %d/%d", counts.empty() ? "" : ",", a, hits, trials);
  }
  double elapsed = seconds_since(start);
  return {pass && elapsed <= limit,
          format("hits within 100pi/M:%s (need >= %d); %.1fs (limit %.0fs)",
                 counts.c_str(), need, elapsed, limit)};
}

// Criterion 5: additive-error strong simulation on random circuits, plus the
// ceil(100*pi/delta') iteration budget.
Outcome criterion_strong_sim() {
  const double delta = 0.05;
  bool iter_ok =
      strong_sim_iterations(delta) ==
          static_cast<std::uint64_t>(std::ceil(100.0 * M_PI / delta)) &&
      strong_sim_iterations(delta / 2) ==
          static_cast<std::uint64_t>(std::ceil(200.0 * M_PI / delta));

  int hits = 0;
  const int trials = 20;
  for (int i = 0; i < trials; ++i) {
    Rng rng(48000 + i);
    int width = 5 + static_cast<int>(rng.below(8));  // 5..12 wires
    int gates = 8 + static_cast<int>(rng.below(18));
    QuantumCircuit c;
    c.width = width;
    for (int g = 0; g < gates; ++g) {
      int kind = static_cast<int>(rng.below(4));
      int a = static_cast<int>(rng.below(width));
      int b = static_cast<int>(rng.below(width));
      while (b == a) b = static_cast<int>(rng.below(width));
      int t = static_cast<int>(rng.below(width));
      while (t == a || t == b) t = static_cast<int>(rng.below(width));
      switch (kind) {
        case 0: c.gates.push_back(gate_h(a)); break;
        case 1: c.gates.push_back(gate_x(a)); break;
        case 2: c.gates.push_back(gate_cnot(a, b)); break;
        default: c.gates.push_back(gate_toffoli(a, b, t)); break;
      }
    }
    std::vector<bool> x(width), zeros(width, false);
    for (int w = 0; w < width; ++w) x[w] = rng.coin();
    double truth = std::abs(statevector_amplitude(c, x, zeros));
    double est = strong_sim_additive(c, x, delta, 49000 + i);
    if (std::abs(est - truth) <= delta + 1e-12) ++hits;
  }
  return {iter_ok && hits >= 18,
          format("%d/%d estimates within 0.05 (need >= 18); iteration budget %s", hits,
                 trials, iter_ok ? "matches ceil(100pi/delta')" : "WRONG")};
}

// Criterion 6: the lattice counting instance reproduces SAT counts exactly,
// binary vectors obey the closed-form distance law, and 1000 sampled
// non-binary vectors per instance stay outside the exclusion radius.
Outcome criterion_lattice_counts() {
  const double limit = 600.0;
  const double tol = 1e-6;
  auto start = Clock::now();

  IsolatingParallelepiped ips[2] = {find_isolating_parallelepiped(1, 3),
                                    find_isolating_parallelepiped(3, 3)};
  int good = 0;
  double worst_law = 0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    Rng rng(50000 + i);
    int n = 3 + static_cast<int>(rng.below(8));  // 3..10
    int m = 1 + static_cast<int>(rng.below(8));  // 1..8
    Formula f = random_formula(n, m, 3, 51000 + i);
    std::uint64_t count = count_satisfying(f);

    bool ok = true;
    for (const auto& ip : ips) {
      LatticeInstance inst = cnf_to_vcp(f, ip);
      // margin_check draws the 1000 non-binary samples and throws on any
      // exclusion-zone violation.
      if (vcp_count_bruteforce(inst, true, tol) != count) ok = false;

      const double step = std::pow(1.3, ip.p) - 1.0;
      const double base = static_cast<double>(m) * (n + 1);
      Eigen::VectorXd y(n);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        for (int j = 0; j < n; ++j) y(j) = static_cast<double>((bits >> j) & 1);
        double dist = lp_pow(inst.B * y - inst.t, ip.p);
        double expect = base + unsatisfied_clauses(f, bits) * step;
        double err = std::abs(dist - expect);
        if (err > worst_law) worst_law = err;
        if (err > tol) ok = false;
      }
    }
    if (ok) ++good;
  }
  double elapsed = seconds_since(start);
  return {good == trials && elapsed <= limit,
          format("%d/%d instances (p=1 and p=3): counts exact, distance law off by "
                 "<= %.2e (tol %.0e), exclusion sampled clean; %.1fs (limit %.0fs)",
                 good, trials, worst_law, tol, elapsed, limit)};
}

// Criterion 7: the parallelepiped generator meets its residual and margin
// contract on the supported (p, k) grid and rejects even exponents.
Outcome criterion_parallelepipeds() {
  const double residual_tol = 1e-8;
  struct Cell {
    double p;
    int k;
  };
  const Cell cells[4] = {{1, 3}, {3, 3}, {5, 3}, {3, 4}};
  int good = 0;
  double worst_residual = 0;
  double least_margin = 1e9;
  for (const Cell& c : cells) {
    auto ip = find_isolating_parallelepiped(c.p, c.k);
    auto rep = verify_parallelepiped(ip, residual_tol);
    if (rep.residual > worst_residual) worst_residual = rep.residual;
    if (rep.u_margin < least_margin) least_margin = rep.u_margin;
    if (rep.pass && rep.residual <= residual_tol && rep.u_margin >= 0.1) ++good;
  }
  bool rejected = false;
  try {
    find_isolating_parallelepiped(4, 3);
  } catch (const Error&) {
    rejected = true;
  }
  return {good == 4 && rejected,
          format("%d/4 grid cells: residual <= %.1e (worst %.1e), |u|_p >= 1.1 "
                 "(least margin %.3f); even p rejected: %s",
                 good, residual_tol, worst_residual, least_margin,
                 rejected ? "yes" : "NO")};
}

// Criterion 8: sparsified survival frequencies sit in the predicted interval
// (4 sigma slack) and the gap decision procedure lands on the correct side.
Outcome criterion_sparsification() {
  struct Planted {
    double t0, t1, t2;
    std::uint64_t count;
  };
  const Planted cases[3] = {
      {0.5, 0.5, 0.5, 0}, {0.25, 0.25, 0.25, 1}, {0.5, 0.25, 0.25, 2}};
  auto make = [](const Planted& c) {
    LatticeInstance inst;
    inst.p = 1;
    inst.n = 3;
    inst.d = 3;
    inst.B = Eigen::MatrixXd::Identity(3, 3);
    inst.t = Eigen::VectorXd(3);
    inst.t << c.t0, c.t1, c.t2;
    inst.r_pow_p = 1;
    inst.provenance = "planted";
    return inst;
  };

  int intervals = 0;
  std::uint64_t seed = 52000;
  for (std::uint64_t Q : {std::uint64_t{31}, std::uint64_t{61}}) {
    for (const Planted& c : cases) {
      auto rep = sparsification_stats(make(c), Q, 2500, seed++);
      if (rep.count == c.count && rep.pass) ++intervals;
    }
  }

  auto two = make(cases[2]);
  auto none = make(cases[0]);
  int correct = 0;
  const int runs = 50;
  for (int s = 0; s < runs; ++s) {
    GapAnswer got;
    GapAnswer want;
    if (s % 3 == 0) {
      got = gap_vcp_decide(two, 1, 1.0, 0, 53000 + s);  // count 2 = (1+1)*1
      want = GapAnswer::Large;
    } else if (s % 3 == 1) {
      got = gap_vcp_decide(two, 2, 1.0, 0, 53000 + s);  // count 2 <= 2
      want = GapAnswer::Small;
    } else {
      got = gap_vcp_decide(none, 1, 1.0, 0, 53000 + s);  // count 0 <= 1
      want = GapAnswer::Small;
    }
    if (got == want) ++correct;
  }
  return {intervals == 6 && correct >= 45,
          format("%d/6 planted interval checks (N in {0,1,2}, Q in {31,61}, 2500 "
                 "samples); %d/%d gap decisions correct (need >= 45)",
                 intervals, correct, runs)};
}

// Criterion 9: the split-and-list instance has exactly one orthogonal pair
// per satisfying assignment, so counts and parity transfer.
Outcome criterion_ov() {
  int good = 0;
  const int trials = 200;
  PropertySpec par;
  par.kind = PropertyKind::Parity;
  for (int i = 0; i < trials; ++i) {
    Rng rng(54000 + i);
    int n = 2 + static_cast<int>(rng.below(15));  // 2..16
    int m = 1 + static_cast<int>(rng.below(30));  // 1..30
    int k = 1 + static_cast<int>(rng.below(n));
    Formula f = random_formula(n, m, k, 55000 + i);
    std::uint64_t pairs = ov_count_pairs(cnf_to_ov(f));
    if (pairs == count_satisfying(f) &&
        pairs % 2 == eval_property(truth_table(f), par))
      ++good;
  }
  return {good == trials, format("%d/%d formulas: pair count equals SAT count and "
                                 "parity transfers",
                                 good, trials)};
}

// Criterion 10: every conjectured-bound table row on spot-check inputs, the
// distinguishing-weight inequality over random draws, and the jump-gap bound
// for residue counting, exhaustively to input length 64.
Outcome criterion_bounds() {
  int rows = 0;
  int expected_rows = 0;
  auto row = [&](Problem p, const char* variant, const BoundParams& bp, double want) {
    ++expected_rows;
    BoundReport r = conjectured_time_bound(p, variant, bp);
    if (std::abs(r.value - want) <= 1e-9 * (1 + std::abs(want))) ++rows;
  };

  BoundParams n20;
  n20.n = 20;
  row(Problem::Cnfsat, "vanilla", n20, 1024.0);
  row(Problem::Cnfsat, "parity", n20, 1048576.0);
  row(Problem::Cnfsat, "majority", n20, 1048576.0);
  row(Problem::Cnfsat, "strict-majority", n20, 1048576.0);
  row(Problem::Cnfsat, "count", n20, 1048576.0);
  BoundParams qp = n20;
  qp.q = 7;
  row(Problem::Cnfsat, "count-mod", qp, 1048576.0);
  BoundParams add;
  add.n = 4;
  add.delta = 2.0;
  add.h_hat = 8;
  row(Problem::Cnfsat, "additive-error", add, 2.0 * std::sqrt(2.0) + 4.0);
  BoundParams mult;
  mult.n = 10;
  mult.gamma = 0.1;
  mult.h_hat = 512;
  row(Problem::Cnfsat, "multiplicative", mult, 10.0);

  row(Problem::Ksat, "vanilla", n20, 1024.0);
  row(Problem::Ksat, "parity", n20, 1048576.0);
  row(Problem::Ksat, "count", n20, 1048576.0);
  row(Problem::Ksat, "count-mod", qp, 1048576.0);
  row(Problem::Ksat, "multiplicative", mult, 10.0);

  row(Problem::StrongSim, "exact-n-bits", n20, 1048576.0);
  row(Problem::StrongSim, "exact-2-bits", n20, 1048576.0);
  BoundParams sim;
  sim.n = 4;
  sim.delta_prime = 0.25;
  sim.h_hat = 8;
  row(Problem::StrongSim, "additive-error", sim, 4.0);
  row(Problem::StrongSim, "multiplicative", mult, 10.0);

  row(Problem::Cvp, "vanilla", n20, 1024.0);

  row(Problem::Vcp, "vanilla", n20, 1048576.0);
  row(Problem::Vcp, "count-mod", qp, 1048576.0);
  row(Problem::Vcp, "multiplicative", mult, 10.0);

  BoundParams ov;
  ov.n = 100;
  row(Problem::Ov, "vanilla", ov, 100.0);
  row(Problem::Ov, "parity", ov, 10000.0);
  row(Problem::Ov, "count", ov, 10000.0);
  BoundParams ovm = ov;
  ovm.gamma = 0.1;
  ovm.h_hat = 5000;
  row(Problem::Ov, "multiplicative", ovm, 10.0);

  row(Problem::HittingSet, "vanilla", n20, 1024.0);
  row(Problem::HittingSet, "parity", n20, 1048576.0);
  row(Problem::HittingSet, "count", n20, 1048576.0);
  row(Problem::HittingSet, "multiplicative", mult, 10.0);

  row(Problem::SetCover, "parity", n20, 1048576.0);

  int separated = 0;
  const int draws = 10000;
  Rng rng(56000);
  for (int i = 0; i < draws; ++i) {
    std::uint64_t n = 16 + rng.below(4081);  // 16..4096
    double lo = 1.0 / static_cast<double>(n);
    double gamma = lo + (0.4999 - lo) * rng.real();
    DistinguishParams dp = gamma_distinguish_params(n, gamma);
    double left = static_cast<double>(dp.level_zero) * (1.0 + gamma);
    double right = static_cast<double>(dp.level_one) * (1.0 - gamma);
    if (left < right && dp.level_one + dp.level_zero == n) ++separated;
  }

  bool gap_ok = true;
  for (std::uint64_t n = 6; n <= 64; ++n)
    for (std::uint64_t q = 3; q <= n / 2; ++q)
      if (paturi_gamma(residue_indicator_spectrum(n, q)) > 2 * q - 1) gap_ok = false;

  return {rows == expected_rows && separated == draws && gap_ok,
          format("%d/%d table rows match; %d/%d weight pairs strictly separated; "
                 "jump gap <= 2q-1 for all N <= 64: %s",
                 rows, expected_rows, separated, draws, gap_ok ? "yes" : "NO")};
}

// Criterion 11: negation complements the count and the counting-family
// property values follow by arithmetic.
Outcome criterion_negation() {
  int good = 0;
  const int trials = 150;
  for (int i = 0; i < trials; ++i) {
    Rng rng(57000 + i);
    int n = 1 + static_cast<int>(rng.below(12));  // 1..12
    int m = 1 + static_cast<int>(rng.below(14));
    int k = 1 + static_cast<int>(rng.below(n));
    Formula f = random_formula(n, m, k, 58000 + i);
    if (rng.coin()) f = negate(f);  // exercise DNF inputs too
    Formula g = negate(f);

    const std::uint64_t N = std::uint64_t{1} << n;
    std::uint64_t c = count_satisfying(f);
    bool ok = c + count_satisfying(g) == N;

    TruthTable tg = truth_table(g);
    PropertySpec spec;
    spec.kind = PropertyKind::Count;
    ok = ok && eval_property(tg, spec) == N - c;
    spec.kind = PropertyKind::Parity;
    ok = ok && eval_property(tg, spec) == ((N - c) & 1);
    spec.kind = PropertyKind::Majority;
    ok = ok && eval_property(tg, spec) == (N - c >= N / 2 ? 1 : 0);
    if (n >= 3) {
      spec.kind = PropertyKind::CountMod;
      spec.modulus = 3;
      ok = ok && eval_property(tg, spec) == (N - c) % 3;
    }
    if (ok) ++good;
  }
  return {good == trials,
          format("%d/%d formulas: count complements to 2^n and count/parity/"
                 "count-mod/majority transfer",
                 good, trials)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "width reduction preserves counts", criterion_width_reduction},
      {2, "encoding circuits hit count/2^n", criterion_circuit_encoding},
      {3, "dyadic readout recovers count and majority", criterion_readout},
      {4, "amplitude estimation error contract", criterion_estimation_contract},
      {5, "strong simulation additive error", criterion_strong_sim},
      {6, "lattice counting matches SAT counts", criterion_lattice_counts},
      {7, "isolating parallelepiped generator", criterion_parallelepipeds},
      {8, "sparsification survival and gap decisions", criterion_sparsification},
      {9, "orthogonal-vectors parsimony", criterion_ov},
      {10, "bound calculator reference values", criterion_bounds},
      {11, "negation complements counts and properties", criterion_negation},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("unexpected exception: ") + ex.what()};
    }
    std::printf("%s  criterion %2d: %s -- %s\n", o.pass ? "PASS" : "FAIL", e.id,
                e.title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, entries.size());
  return failures ? 1 : 0;
}
