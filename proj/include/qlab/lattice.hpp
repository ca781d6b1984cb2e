#ifndef QLAB_LATTICE_HPP
#define QLAB_LATTICE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

// Pair (V, u) with ||Vx - u||_p = 1 for every nonzero binary x and
// ||u||_p > 1.  V has 2^k rows and k columns; u has 2^k entries.
struct IsolatingParallelepiped {
  double p = 1;
  int k = 0;
  Eigen::MatrixXd V;
  Eigen::VectorXd u;
  double residual = 0;  // max over x != 0 of | ||Vx - u||_p - 1 |
  double u_margin = 0;  // ||u||_p - 1
};

struct ParallelepipedReport {
  double residual = 0;
  double u_margin = 0;
  bool pass = false;
};

// Vector-counting instance: how many y in {0,1}^n satisfy
// ||B y - t||_p^p <= r_pow_p.  For instances built from a CNF, d = m 2^k + n,
// the bottom n rows of B are 2 m^{1/p} I, and r_pow_p = m (n + 1) exactly.
struct LatticeInstance {
  double p = 1;
  int n = 0;  // columns of B, and coefficient dimension
  int m = 0;  // clause count (0 for hand-planted instances)
  int k = 0;  // parallelepiped arity (0 for hand-planted instances)
  int d = 0;  // rows of B
  Eigen::MatrixXd B;
  Eigen::VectorXd t;
  std::int64_t r_pow_p = 0;
  std::string provenance;
};

struct CvpResult {
  std::vector<std::int64_t> coeffs;
  double dist_pow_p = 0;
  // Set when the optimum sits on the enumeration box edge; a larger box
  // could then hold a closer point.
  bool boundary = false;
};

struct SparsifiedLattice {
  Eigen::MatrixXd basis;
  Eigen::VectorXd shift;
  std::uint64_t Q = 0;
  std::vector<std::uint64_t> z;
  std::vector<std::uint64_t> c;
};

struct SparsificationReport {
  std::uint64_t count = 0;  // near points of t in the full lattice
  double freq = 0;
  double lower = 0;
  double upper = 0;
  double slack = 0;
  bool pass = false;
};

enum class GapAnswer { Small, Large };

// Sum of |v_i|^p.  Distances are always compared in this p-th power form.
double lp_pow(const Eigen::VectorXd& v, double p);

bool is_prime(std::uint64_t q);
std::uint64_t next_prime(std::uint64_t q);

// Numerically searches for a (p, k) isolating parallelepiped: damped least
// squares on the constraint residuals with random restarts, aiming at
// ||u||_p = 1.3 so the margin clears 0.1.  k must lie in [3, 6]; even
// integer p is an unsupported regime and rejected.  Throws after the restart
// budget with the best residual reached in the message.
IsolatingParallelepiped find_isolating_parallelepiped(double p, int k, double tol = 1e-8,
                                                      std::uint64_t seed = 1);

// Recomputes residual and margin from scratch over all 2^k - 1 constraints;
// pass requires residual <= tol and u_margin > 0.  Accepts hand-built
// objects of any dimensions (k taken from the field).
ParallelepipedReport verify_parallelepiped(const IsolatingParallelepiped& ip, double tol = 1e-8);

// Assembles the counting instance of a CNF whose clause widths are at most
// ip.k.  One 2^k-row block per clause: column j of block w is +v_s, -v_s or
// zero depending on whether variable j appears positively, negatively or not
// at position s of clause w; the block target is u minus the sum of v_s over
// negative positions.  A bottom block 2 m^{1/p} I with target m^{1/p} 1
// makes distinct y give distinct points and pins binary coordinates.
// Satisfying assignments land at distance^p exactly m(n+1) = r_pow_p.
LatticeInstance cnf_to_vcp(const Formula& f, const IsolatingParallelepiped& ip);

// Counts binary y with ||By - t||_p^p <= r_pow_p + tol.  With margin_check,
// additionally samples 1000 vectors from {-1,0,1,2}^n \ {0,1}^n (fixed
// internal seed) and throws unless each stays at distance^p at least
// m(n+2) - tol, the exclusion bound non-binary integer vectors must obey.
std::uint64_t vcp_count_bruteforce(const LatticeInstance& inst, bool margin_check = false,
                                   double tol = 1e-6);

// Closest lattice point by full enumeration of coefficient vectors with
// |y_i| <= box_radius; rank (columns) capped at 6.  Ties pick the
// lexicographically smallest coefficient vector.
CvpResult cvp_bruteforce(const Eigen::MatrixXd& basis, const Eigen::VectorXd& target, double p,
                         int box_radius);

// Basis of the sublattice {Bv : v integer, <z, v> = 0 mod Q}, returned as
// B times a coefficient basis in column Hermite normal form.  z identically
// zero mod Q returns the input basis.  The sublattice has index Q otherwise.
Eigen::MatrixXd sublattice_basis(const std::vector<std::uint64_t>& z, std::uint64_t Q,
                                 const Eigen::MatrixXd& basis);

// Bundles sublattice_basis with the shift w = B c.
SparsifiedLattice sparsify(const Eigen::MatrixXd& basis, std::uint64_t Q,
                           const std::vector<std::uint64_t>& z,
                           const std::vector<std::uint64_t>& c);

// Samples (z, c) uniformly over Z_Q^n and measures how often the shifted
// sublattice still holds a point within distance r of t, i.e.
// min over u in L_z of ||t + Bc - u||_p <= r.  Near points are precomputed
// over the box {-1,0,1,2}^n (valid for instances whose other integer points
// obey the exclusion bound, which cnf_to_vcp products and the planted test
// instances do), so each sample reduces to congruence checks.  The expected
// frequency lies in [N/Q - N^2/Q^2 - N^2/Q^(n-1), N/Q + N/Q^n]; pass allows
// 4 binomial sigmas of slack.  Requires N <= Q and n <= 6.
SparsificationReport sparsification_stats(const LatticeInstance& inst, std::uint64_t Q,
                                          std::uint64_t samples, std::uint64_t seed);

// Number of samples after which the midpoint rule below is correct with
// probability at least 9/10 (two-sided Hoeffding bound for the interval gap).
std::uint64_t gap_decide_required_samples(std::uint64_t big_n, double gamma, int n,
                                          std::uint64_t q);

// Decides whether the instance holds at most N near points (Small) or at
// least (1+gamma) N (Large), under that promise.  Chooses the smallest prime
// Q >= 20 N max(1, 1/gamma), estimates the sparsified-survival frequency and
// compares it against the midpoint between the two cases' intervals.
// samples = 0 picks the Hoeffding count above.  The promise is verified
// against the exact count first; violations throw.
GapAnswer gap_vcp_decide(const LatticeInstance& inst, std::uint64_t big_n, double gamma,
                         std::uint64_t samples, std::uint64_t seed);

}  // namespace qlab

#endif
