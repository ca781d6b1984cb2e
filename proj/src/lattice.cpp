#include "qlab/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace qlab {

namespace {

using MatI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

double soft_pow(double q, double half_p) {
  // q = r^2 + mu^2; returns q^{p/2} with a clamp so derivatives stay finite.
  return std::pow(std::max(q, 1e-300), half_p);
}

std::pair<double, double> exact_residual_margin(const Eigen::MatrixXd& V,
                                                const Eigen::VectorXd& u, double p, int k) {
  double worst = 0;
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << k); ++x) {
    Eigen::VectorXd r = -u;
    for (int j = 0; j < k; ++j)
      if ((x >> j) & 1) r += V.col(j);
    const double dist = std::pow(lp_pow(r, p), 1.0 / p);
    worst = std::max(worst, std::abs(dist - 1.0));
  }
  const double margin = std::pow(lp_pow(u, p), 1.0 / p) - 1.0;
  return {worst, margin};
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  b %= q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

// Column-style Hermite normal form: lower triangular, positive diagonal,
// entries left of the diagonal reduced into [0, diagonal).
void hnf_columns(MatI* mat) {
  MatI& a = *mat;
  const int n = static_cast<int>(a.rows());
  for (int r = 0; r < n; ++r) {
    while (true) {
      int best = -1;
      for (int c = r; c < n; ++c)
        if (a(r, c) != 0 && (best < 0 || std::abs(a(r, c)) < std::abs(a(r, best)))) best = c;
      if (best < 0) throw Error("sublattice_basis: generators are singular");
      if (best != r) a.col(r).swap(a.col(best));
      bool clean = true;
      for (int c = r + 1; c < n; ++c) {
        if (a(r, c) == 0) continue;
        const std::int64_t q = a(r, c) / a(r, r);
        a.col(c) -= q * a.col(r);
        if (a(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, r) < 0) a.col(r) = -a.col(r);
    for (int c = 0; c < r; ++c) {
      std::int64_t q = a(r, c) / a(r, r);
      if (a(r, c) - q * a(r, r) < 0) --q;
      a.col(c) -= q * a.col(r);
    }
  }
}

std::vector<std::vector<std::int64_t>> near_points(const LatticeInstance& inst, double tol) {
  const int n = inst.n;
  std::vector<std::vector<std::int64_t>> found;
  std::vector<int> digit(n, 0);
  Eigen::VectorXd y(n);
  while (true) {
    for (int i = 0; i < n; ++i) y(i) = digit[i] - 1;
    if (lp_pow(inst.B * y - inst.t, inst.p) <=
        static_cast<double>(inst.r_pow_p) + tol) {
      std::vector<std::int64_t> yi(n);
      for (int i = 0; i < n; ++i) yi[i] = digit[i] - 1;
      found.push_back(std::move(yi));
    }
    int i = 0;
    while (i < n && digit[i] == 3) digit[i++] = 0;
    if (i == n) break;
    ++digit[i];
  }
  return found;
}

double spar_lower(double big_n, double q, int n) {
  return big_n / q - big_n * big_n / (q * q) - big_n * big_n / std::pow(q, n - 1);
}

double spar_upper(double big_n, double q, int n) {
  return big_n / q + big_n / std::pow(q, n);
}

double sampled_frequency(const std::vector<std::vector<std::int64_t>>& near, int n,
                         std::uint64_t q, std::uint64_t samples, Rng* rng) {
  const std::int64_t qi = static_cast<std::int64_t>(q);
  std::vector<std::int64_t> z(n), c(n);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) z[i] = static_cast<std::int64_t>(rng->below(q));
    for (int i = 0; i < n; ++i) c[i] = static_cast<std::int64_t>(rng->below(q));
    bool event = false;
    for (const auto& y : near) {
      std::int64_t acc = 0;
      for (int i = 0; i < n; ++i) acc = (acc + z[i] * (((y[i] + c[i]) % qi + qi) % qi)) % qi;
      if (acc == 0) {
        event = true;
        break;
      }
    }
    hits += event ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

void check_spar_preconditions(const LatticeInstance& inst) {
  if (inst.n < 1 || inst.n > 6)
    throw Error("sparsification: coefficient dimension must lie in [1, 6]");
  if (inst.B.cols() != inst.n || inst.B.rows() != inst.d || inst.t.size() != inst.d)
    throw Error("sparsification: instance dimensions are inconsistent");
}

}  // namespace

double lp_pow(const Eigen::VectorXd& v, double p) {
  double acc = 0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::abs(v(i));
  } else if (p == 2.0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += v(i) * v(i);
  } else {
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v(i)), p);
  }
  return acc;
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t q) {
  if (q < 2) return 2;
  while (!is_prime(q)) ++q;
  return q;
}

IsolatingParallelepiped find_isolating_parallelepiped(double p, int k, double tol,
                                                      std::uint64_t seed) {
  if (k < 3 || k > 6) throw Error("find_isolating_parallelepiped: k must lie in [3, 6]");
  if (!(p >= 1.0)) throw Error("find_isolating_parallelepiped: p must be at least 1");
  const double rounded = std::round(p);
  if (std::abs(p - rounded) < 1e-9 && static_cast<std::int64_t>(rounded) % 2 == 0)
    throw Error("find_isolating_parallelepiped: even norm exponents are an unsupported regime");
  if (!(tol > 0)) throw Error("find_isolating_parallelepiped: tolerance must be positive");

  const int rows = 1 << k;            // output dimension and residual count
  const int cons = rows - 1;          // one constraint per nonzero x
  const int nth = rows * k + rows;    // V entries then u entries
  const double target_pow = std::pow(1.3, p);

  Eigen::MatrixXd xs(cons, k);
  for (int x = 1; x < rows; ++x)
    for (int j = 0; j < k; ++j) xs(x - 1, j) = (x >> j) & 1;

  std::vector<double> schedule;
  if (p >= 2.0)
    schedule = {0.0};
  else
    schedule = {0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 0.0};

  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < 50; ++restart) {
    Eigen::MatrixXd V(rows, k);
    Eigen::VectorXd u(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < k; ++j) V(i, j) = rng.real() * 2 - 1;
    for (int i = 0; i < rows; ++i) u(i) = rng.real() * 2 - 1;

    for (double mu : schedule) {
      const double mu2 = mu * mu;
      double lam = 1e-3;
      for (int it = 0; it < 300; ++it) {
        Eigen::MatrixXd r = xs * V.transpose();
        r.rowwise() -= u.transpose();
        Eigen::VectorXd f(rows);
        Eigen::MatrixXd g(cons, rows);
        for (int e = 0; e < cons; ++e) {
          double sum = 0;
          for (int i = 0; i < rows; ++i) {
            const double q = r(e, i) * r(e, i) + mu2;
            sum += soft_pow(q, p / 2);
            g(e, i) = p * r(e, i) * soft_pow(q, p / 2 - 1);
          }
          f(e) = sum - 1.0;
        }
        double usum = 0;
        Eigen::VectorXd gu(rows);
        for (int i = 0; i < rows; ++i) {
          const double q = u(i) * u(i) + mu2;
          usum += soft_pow(q, p / 2);
          gu(i) = p * u(i) * soft_pow(q, p / 2 - 1);
        }
        f(cons) = usum - target_pow;
        if (f.lpNorm<Eigen::Infinity>() < (mu == 0.0 ? 1e-14 : 1e-12)) break;

        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, nth);
        for (int e = 0; e < cons; ++e) {
          for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < k; ++j) jac(e, i * k + j) = g(e, i) * xs(e, j);
            jac(e, rows * k + i) = -g(e, i);
          }
        }
        for (int i = 0; i < rows; ++i) jac(cons, rows * k + i) = gu(i);

        const double fn = f.norm();
        bool accepted = false;
        for (int trial = 0; trial < 25; ++trial) {
          Eigen::MatrixXd a = jac * jac.transpose();
          a.diagonal().array() += lam;
          const Eigen::VectorXd alpha = a.ldlt().solve(-f);
          const Eigen::VectorXd delta = jac.transpose() * alpha;
          Eigen::MatrixXd v2 = V;
          Eigen::VectorXd u2 = u;
          for (int i = 0; i < rows; ++i)
            for (int j = 0; j < k; ++j) v2(i, j) += delta(i * k + j);
          u2 += delta.segment(rows * k, rows);

          Eigen::MatrixXd r2 = xs * v2.transpose();
          r2.rowwise() -= u2.transpose();
          double norm2 = 0;
          for (int e = 0; e < cons; ++e) {
            double sum = 0;
            for (int i = 0; i < rows; ++i) sum += soft_pow(r2(e, i) * r2(e, i) + mu2, p / 2);
            norm2 += (sum - 1.0) * (sum - 1.0);
          }
          double usum2 = 0;
          for (int i = 0; i < rows; ++i) usum2 += soft_pow(u2(i) * u2(i) + mu2, p / 2);
          norm2 += (usum2 - target_pow) * (usum2 - target_pow);

          if (std::sqrt(norm2) < fn) {
            V = v2;
            u = u2;
            lam = std::max(lam * 0.5, 1e-12);
            accepted = true;
            break;
          }
          lam *= 10;
        }
        if (!accepted) break;
      }
    }

    const auto [res, margin] = exact_residual_margin(V, u, p, k);
    best = std::min(best, res);
    if (res <= tol && margin >= 0.1) {
      IsolatingParallelepiped ip;
      ip.p = p;
      ip.k = k;
      ip.V = V;
      ip.u = u;
      ip.residual = res;
      ip.u_margin = margin;
      return ip;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", best);
  throw Error(std::string("find_isolating_parallelepiped: no solution after 50 restarts; "
                          "best residual ") +
              buf);
}

ParallelepipedReport verify_parallelepiped(const IsolatingParallelepiped& ip, double tol) {
  if (ip.V.rows() != ip.u.size() || ip.V.cols() != ip.k || ip.k < 1)
    throw Error("verify_parallelepiped: inconsistent dimensions");
  const auto [res, margin] = exact_residual_margin(ip.V, ip.u, ip.p, ip.k);
  return {res, margin, res <= tol && margin > 0};
}

LatticeInstance cnf_to_vcp(const Formula& f, const IsolatingParallelepiped& ip) {
  if (f.kind != FormulaKind::Cnf) throw Error("cnf_to_vcp: input must be CNF");
  validate(f);
  const int m = static_cast<int>(f.clauses.size());
  if (m < 1) throw Error("cnf_to_vcp: formula needs at least one clause");
  if (f.width() > ip.k)
    throw Error("cnf_to_vcp: clause width " + std::to_string(f.width()) +
                " exceeds the parallelepiped arity " + std::to_string(ip.k));
  const int rows = 1 << ip.k;
  if (ip.V.rows() != rows || ip.u.size() != rows || ip.V.cols() != ip.k)
    throw Error("cnf_to_vcp: parallelepiped dimensions are inconsistent");

  const int n = f.num_vars;
  LatticeInstance inst;
  inst.p = ip.p;
  inst.n = n;
  inst.m = m;
  inst.k = ip.k;
  inst.d = m * rows + n;
  inst.r_pow_p = static_cast<std::int64_t>(m) * (n + 1);
  inst.B = Eigen::MatrixXd::Zero(inst.d, n);
  inst.t = Eigen::VectorXd::Zero(inst.d);
  inst.provenance = "cnf-" + fnv_hex(emit_dimacs(f));

  const double scale = std::pow(static_cast<double>(m), 1.0 / ip.p);
  for (int w = 0; w < m; ++w) {
    const int base = w * rows;
    Eigen::VectorXd tw = ip.u;
    for (std::size_t s = 0; s < f.clauses[w].size(); ++s) {
      const int lit = f.clauses[w][s];
      const int col = (lit < 0 ? -lit : lit) - 1;
      const Eigen::VectorXd vs = ip.V.col(static_cast<int>(s));
      inst.B.block(base, col, rows, 1) = lit > 0 ? vs : -vs;
      if (lit < 0) tw -= vs;
    }
    inst.t.segment(base, rows) = tw;
  }
  for (int j = 0; j < n; ++j) {
    inst.B(m * rows + j, j) = 2 * scale;
    inst.t(m * rows + j) = scale;
  }
  return inst;
}

std::uint64_t vcp_count_bruteforce(const LatticeInstance& inst, bool margin_check, double tol) {
  if (inst.n < 0 || inst.n > 14)
    throw Error("vcp_count_bruteforce: coefficient dimension exceeds the enumeration cap");
  if (inst.B.rows() != inst.d || inst.B.cols() != inst.n || inst.t.size() != inst.d)
    throw Error("vcp_count_bruteforce: instance dimensions are inconsistent");
  const double radius = static_cast<double>(inst.r_pow_p) + tol;

  // Gray-code walk: one coordinate flips between consecutive y.
  Eigen::VectorXd r = -inst.t;
  std::uint64_t bits = 0, count = 0;
  if (lp_pow(r, inst.p) <= radius) ++count;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << inst.n); ++g) {
    const int flip = std::countr_zero(g);
    bits ^= std::uint64_t{1} << flip;
    if (bits & (std::uint64_t{1} << flip))
      r += inst.B.col(flip);
    else
      r -= inst.B.col(flip);
    if (lp_pow(r, inst.p) <= radius) ++count;
  }

  if (margin_check) {
    const double floor_bound = static_cast<double>(inst.m) * (inst.n + 2) - tol;
    Rng rng(0x9e3779b97f4a7c15ULL);
    Eigen::VectorXd y(inst.n);
    for (int s = 0; s < 1000; ++s) {
      bool non_binary = false;
      for (int i = 0; i < inst.n; ++i) {
        y(i) = static_cast<double>(static_cast<int>(rng.below(4)) - 1);
        non_binary = non_binary || y(i) < 0 || y(i) > 1;
      }
      if (!non_binary) y(static_cast<int>(rng.below(inst.n))) = rng.coin() ? -1 : 2;
      if (lp_pow(inst.B * y - inst.t, inst.p) < floor_bound)
        throw Error("vcp_count_bruteforce: non-binary vector below the exclusion bound; "
                    "instance invalid");
    }
  }
  return count;
}

CvpResult cvp_bruteforce(const Eigen::MatrixXd& basis, const Eigen::VectorXd& target, double p,
                         int box_radius) {
  const int rank = static_cast<int>(basis.cols());
  if (rank < 1 || rank > 6) throw Error("cvp_bruteforce: rank must lie in [1, 6]");
  if (basis.rows() != target.size()) throw Error("cvp_bruteforce: dimension mismatch");
  if (box_radius < 0) throw Error("cvp_bruteforce: box radius must be nonnegative");

  CvpResult bestr;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> y(rank, -box_radius);
  Eigen::VectorXd yd(rank);
  while (true) {
    for (int i = 0; i < rank; ++i) yd(i) = static_cast<double>(y[i]);
    const double dist = lp_pow(basis * yd - target, p);
    if (dist < best) {
      best = dist;
      bestr.coeffs = y;
    }
    // lexicographic odometer, last coordinate fastest
    int i = rank - 1;
    while (i >= 0 && y[i] == box_radius) y[i--] = -box_radius;
    if (i < 0) break;
    ++y[i];
  }
  bestr.dist_pow_p = best;
  bestr.boundary = false;
  for (int i = 0; i < rank; ++i)
    if (std::abs(bestr.coeffs[i]) == box_radius && box_radius > 0) bestr.boundary = true;
  return bestr;
}

Eigen::MatrixXd sublattice_basis(const std::vector<std::uint64_t>& z, std::uint64_t Q,
                                 const Eigen::MatrixXd& basis) {
  if (!is_prime(Q)) throw Error("sublattice_basis: modulus must be prime");
  const int n = static_cast<int>(basis.cols());
  if (static_cast<int>(z.size()) != n) throw Error("sublattice_basis: z length mismatch");
  std::vector<std::uint64_t> zr(z);
  bool all_zero = true;
  for (auto& v : zr) {
    v %= Q;
    all_zero = all_zero && v == 0;
  }
  if (all_zero) return basis;

  int pivot = 0;
  while (zr[pivot] == 0) ++pivot;
  const std::uint64_t inv = mod_pow(zr[pivot], Q - 2, Q);

  MatI coeff = MatI::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (j == pivot) {
      coeff(pivot, j) = static_cast<std::int64_t>(Q);
    } else {
      coeff(j, j) = 1;
      coeff(pivot, j) = -static_cast<std::int64_t>(zr[j] * inv % Q);
    }
  }
  hnf_columns(&coeff);
  return basis * coeff.cast<double>();
}

SparsifiedLattice sparsify(const Eigen::MatrixXd& basis, std::uint64_t Q,
                           const std::vector<std::uint64_t>& z,
                           const std::vector<std::uint64_t>& c) {
  const int n = static_cast<int>(basis.cols());
  if (static_cast<int>(c.size()) != n) throw Error("sparsify: c length mismatch");
  SparsifiedLattice out;
  out.basis = sublattice_basis(z, Q, basis);
  Eigen::VectorXd cd(n);
  for (int i = 0; i < n; ++i) cd(i) = static_cast<double>(c[i] % Q);
  out.shift = basis * cd;
  out.Q = Q;
  out.z = z;
  out.c = c;
  for (auto& v : out.z) v %= Q;
  for (auto& v : out.c) v %= Q;
  return out;
}

SparsificationReport sparsification_stats(const LatticeInstance& inst, std::uint64_t Q,
                                          std::uint64_t samples, std::uint64_t seed) {
  check_spar_preconditions(inst);
  if (!is_prime(Q)) throw Error("sparsification_stats: modulus must be prime");
  if (samples < 1) throw Error("sparsification_stats: need at least one sample");

  const auto near = near_points(inst, 1e-6);
  SparsificationReport rep;
  rep.count = near.size();
  if (rep.count > Q)
    throw Error("sparsification_stats: near-point count exceeds the modulus");

  Rng rng(seed);
  rep.freq = sampled_frequency(near, inst.n, Q, samples, &rng);
  const double nn = static_cast<double>(rep.count);
  const double qq = static_cast<double>(Q);
  rep.lower = spar_lower(nn, qq, inst.n);
  rep.upper = spar_upper(nn, qq, inst.n);
  rep.slack = 4 * std::sqrt(rep.freq * (1 - rep.freq) / static_cast<double>(samples));
  rep.pass = rep.freq >= rep.lower - rep.slack && rep.freq <= rep.upper + rep.slack;
  return rep;
}

std::uint64_t gap_decide_required_samples(std::uint64_t big_n, double gamma, int n,
                                          std::uint64_t q) {
  const double qq = static_cast<double>(q);
  const double gap = spar_lower((1 + gamma) * static_cast<double>(big_n), qq, n) -
                     spar_upper(static_cast<double>(big_n), qq, n);
  if (!(gap > 0)) throw Error("gap_vcp_decide: interval gap is not positive");
  return static_cast<std::uint64_t>(std::ceil(2 * std::log(20.0) / (gap * gap)));
}

GapAnswer gap_vcp_decide(const LatticeInstance& inst, std::uint64_t big_n, double gamma,
                         std::uint64_t samples, std::uint64_t seed) {
  check_spar_preconditions(inst);
  if (big_n < 1) throw Error("gap_vcp_decide: N must be at least 1");
  if (!(gamma > 0)) throw Error("gap_vcp_decide: gamma must be positive");

  const double scale = 20.0 * static_cast<double>(big_n) * std::max(1.0, 1.0 / gamma);
  const std::uint64_t Q = next_prime(static_cast<std::uint64_t>(std::ceil(scale)));

  const auto near = near_points(inst, 1e-6);
  const double count = static_cast<double>(near.size());
  const double upper_small = static_cast<double>(big_n);
  const double lower_large = (1 + gamma) * static_cast<double>(big_n);
  if (count > upper_small + 1e-9 && count < lower_large - 1e-9)
    throw PromiseViolation("gap_vcp_decide: count " + std::to_string(near.size()) +
                           " is neither at most N nor at least (1+gamma)N");
  if (near.size() > Q) throw Error("gap_vcp_decide: near-point count exceeds the modulus");

  const double qq = static_cast<double>(Q);
  const double threshold =
      (spar_upper(upper_small, qq, inst.n) + spar_lower(lower_large, qq, inst.n)) / 2;
  if (samples == 0) samples = gap_decide_required_samples(big_n, gamma, inst.n, Q);

  Rng rng(seed);
  const double freq = sampled_frequency(near, inst.n, Q, samples, &rng);
  return freq < threshold ? GapAnswer::Small : GapAnswer::Large;
}

}  // namespace qlab
