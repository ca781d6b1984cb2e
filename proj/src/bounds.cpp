#include "qlab/bounds.hpp"

#include <cmath>

namespace qlab {

namespace {

SymmetricSpectrum make_spectrum(std::uint64_t n, const std::function<bool(std::uint64_t)>& f) {
  SymmetricSpectrum s;
  s.input_length = n;
  s.levels.resize(n + 1);
  for (std::uint64_t w = 0; w <= n; ++w) s.levels[w] = f(w) ? 1 : 0;
  return s;
}

}  // namespace

SymmetricSpectrum parity_spectrum(std::uint64_t n) {
  return make_spectrum(n, [](std::uint64_t w) { return (w & 1) != 0; });
}

SymmetricSpectrum majority_spectrum(std::uint64_t n) {
  return make_spectrum(n, [n](std::uint64_t w) { return 2 * w >= n; });
}

SymmetricSpectrum strict_majority_spectrum(std::uint64_t n) {
  return make_spectrum(n, [n](std::uint64_t w) { return 2 * w > n; });
}

SymmetricSpectrum or_spectrum(std::uint64_t n) {
  return make_spectrum(n, [](std::uint64_t w) { return w > 0; });
}

SymmetricSpectrum residue_indicator_spectrum(std::uint64_t n, std::uint64_t q) {
  if (q < 3 || 2 * q > n)
    throw Error("residue_indicator_spectrum: q must lie in [3, n/2]");
  return make_spectrum(n, [q](std::uint64_t w) { return w % q == q - 1; });
}

std::uint64_t paturi_gamma(const SymmetricSpectrum& s) {
  const std::uint64_t n = s.input_length;
  if (s.levels.size() != n + 1) throw Error("paturi_gamma: spectrum has wrong length");
  bool any_jump = false;
  std::uint64_t best = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (s.levels[k] == s.levels[k + 1]) continue;
    // |2k - n + 1| without signed arithmetic.
    std::uint64_t gap = 2 * k + 1 >= n ? 2 * k + 1 - n : n - 2 * k - 1;
    if (!any_jump || gap < best) best = gap;
    any_jump = true;
  }
  if (!any_jump) throw Error("paturi_gamma: constant spectrum has no jump");
  return best;
}

BoundWitness query_bound_witness(const PropertySpec& p, std::uint64_t n,
                                 std::optional<std::uint64_t> ones_count) {
  BoundWitness w;
  w.property = p;
  w.input_length = n;
  if (n < 1) throw Error("query_bound_witness: empty input length");
  const double nd = static_cast<double>(n);
  switch (p.kind) {
    case PropertyKind::Or:
      w.value = std::sqrt(nd);
      w.formula = "sqrt(N)";
      break;
    case PropertyKind::Count:
    case PropertyKind::Parity:
    case PropertyKind::Majority:
    case PropertyKind::StrictMajority:
      // All of these have a spectrum jump within O(1) of weight N/2.
      w.value = nd;
      w.formula = "N";
      break;
    case PropertyKind::CountMod: {
      if (p.modulus < 3 || 2 * p.modulus > n)
        throw Error("query_bound_witness: modulus must lie in [3, N/2]");
      w.value = std::sqrt(nd * (nd - 2.0 * static_cast<double>(p.modulus) + 1.0));
      w.formula = "sqrt(N*(N-2q+1))";
      break;
    }
    case PropertyKind::AdditiveCount: {
      if (p.slack < 1 || p.slack >= n)
        throw Error("query_bound_witness: slack must lie in [1, N)");
      if (!ones_count) throw Error("query_bound_witness: additive-count needs a weight t");
      if (*ones_count > n) throw Error("query_bound_witness: weight t exceeds N");
      const double t = static_cast<double>(*ones_count);
      const double d = static_cast<double>(p.slack);
      w.value = std::sqrt(nd / d) + std::sqrt(t * (nd - t)) / d;
      w.formula = "sqrt(N/slack) + sqrt(t*(N-t))/slack";
      break;
    }
    case PropertyKind::WeightDistinguish: {
      if (p.level_one == p.level_zero)
        throw Error("query_bound_witness: the two levels must differ");
      if (p.level_one > n || p.level_zero > n)
        throw Error("query_bound_witness: level exceeds N");
      const std::uint64_t hi = p.level_one > p.level_zero ? p.level_one : p.level_zero;
      const std::uint64_t lo = p.level_one > p.level_zero ? p.level_zero : p.level_one;
      const std::uint64_t gap = hi - lo;
      // The level farther from N/2 governs the second term; |2l - N| orders
      // the two candidates without touching floats.
      auto dist2 = [n](std::uint64_t l) { return 2 * l >= n ? 2 * l - n : n - 2 * l; };
      const std::uint64_t pick = dist2(p.level_one) >= dist2(p.level_zero) ? p.level_one
                                                                           : p.level_zero;
      const double pd = static_cast<double>(pick);
      const double g = static_cast<double>(gap);
      w.value = std::sqrt(nd / g) + std::sqrt(pd * (nd - pd)) / g;
      w.formula = "sqrt(N/gap) + sqrt(p*(N-p))/gap";
      break;
    }
  }
  return w;
}

DistinguishParams gamma_distinguish_params(std::uint64_t n, double gamma) {
  if (n < 2) throw Error("gamma_distinguish_params: need N >= 2");
  const long double nd = static_cast<long double>(n);
  if (!(gamma >= 1.0 / static_cast<double>(n)) || !(gamma < 0.4999))
    throw Error("gamma_distinguish_params: gamma must lie in [1/N, 0.4999)");
  const long double g = gamma;
  const std::uint64_t level_one =
      static_cast<std::uint64_t>(std::ceil(nd / (2.0L * (1.0L - g))));
  if (level_one > n)
    throw Error("gamma_distinguish_params: N too small (upper level exceeds N)");
  const std::uint64_t level_zero = n - level_one;
  // level_one >= N/2 by construction, so the difference is non-negative.
  const std::uint64_t gap = level_one - level_zero;
  if (!(static_cast<long double>(level_zero) * (1.0L + g) <
        static_cast<long double>(level_one) * (1.0L - g)))
    throw Error(
        "gamma_distinguish_params: separation failed "
        "(level_zero*(1+gamma) < level_one*(1-gamma) does not hold)");
  const long double gap_ld = static_cast<long double>(gap);
  const long double lo = 2.0L * g * static_cast<long double>(level_one) - 2.0L * g;
  const long double hi = 2.0L * g * static_cast<long double>(level_one) + 2.0L;
  if (!(lo <= gap_ld && gap_ld < hi))
    throw Error(
        "gamma_distinguish_params: gap bracket failed "
        "(2*gamma*level_one - 2*gamma <= gap < 2*gamma*level_one + 2 does not hold)");
  return {level_one, level_zero, gap};
}

std::string problem_name(Problem p) {
  switch (p) {
    case Problem::Cnfsat: return "cnfsat";
    case Problem::Ksat: return "ksat";
    case Problem::StrongSim: return "strong-sim";
    case Problem::Cvp: return "cvp";
    case Problem::Vcp: return "vcp";
    case Problem::Ov: return "ov";
    case Problem::HittingSet: return "hitting-set";
    case Problem::SetCover: return "set-cover";
  }
  throw Error("problem_name: unknown problem");
}

Problem problem_from_name(const std::string& name) {
  if (name == "cnfsat") return Problem::Cnfsat;
  if (name == "ksat") return Problem::Ksat;
  if (name == "strong-sim") return Problem::StrongSim;
  if (name == "cvp") return Problem::Cvp;
  if (name == "vcp") return Problem::Vcp;
  if (name == "ov") return Problem::Ov;
  if (name == "hitting-set") return Problem::HittingSet;
  if (name == "set-cover") return Problem::SetCover;
  throw Error("unknown problem name: " + name);
}

namespace {

// Shared handling of the multiplicative (relative-error counting) rows.
// `total` is the size of the counted space (2^n, or n^2 for the pair
// problems) and `exact_bound` the bound that applies when the relative
// accuracy is too coarse to beat exact counting.
void multiplicative_row(BoundReport& r, double total, double exact_bound) {
  if (!r.params.gamma || !r.params.h_hat)
    throw Error("bounds: multiplicative row needs gamma and h_hat");
  const double gamma = *r.params.gamma;
  if (!(gamma >= 1.0 / total) || !(gamma < 0.4999))
    throw Error("bounds: gamma must lie in [1/total, 0.4999)");
  const double hh = static_cast<double>(*r.params.h_hat);
  if (hh < 1 || hh > total) throw Error("bounds: h_hat must lie in [1, total]");
  if (gamma * hh > 1.0) {
    r.value = (1.0 / gamma) * std::sqrt((total - hh) / hh);
    r.exponent_note = "relative-error counting regime; polynomial factors suppressed";
    return;
  }
  if (!r.params.allow_fallback)
    throw Error("bounds: gamma*h_hat <= 1 and fallback disabled");
  r.value = exact_bound;
  r.exponent_note =
      "gamma*h_hat <= 1: estimate pins the exact count, exact-count bound applies "
      "(exponent slack o(.) suppressed)";
}

void require(bool ok, const char* msg) {
  if (!ok) throw Error(std::string("bounds: ") + msg);
}

}  // namespace

BoundReport conjectured_time_bound(Problem problem, const std::string& variant,
                                   const BoundParams& params) {
  BoundReport r;
  r.problem = problem;
  r.variant = variant;
  r.params = params;
  const int n = params.n;
  require(n >= 1, "n must be positive");

  const bool exponential = problem != Problem::Ov;
  double total = 0;
  if (exponential) {
    require(n <= 1000, "n too large for a finite double bound");
    total = std::exp2(static_cast<double>(n));
  } else {
    require(n >= 2, "ov: need at least two vectors per list");
    total = static_cast<double>(n) * static_cast<double>(n);
  }

  const std::string slack_note = "exponent carries a -o(n) slack in the conjecture";

  switch (problem) {
    case Problem::Cnfsat:
    case Problem::Ksat: {
      const bool full = problem == Problem::Cnfsat;
      if (variant == "vanilla") {
        r.value = std::exp2(static_cast<double>(n) / 2.0);
        r.exponent_note = "exponent n/2 carries a -o(n) slack in the conjecture";
      } else if (variant == "parity" || variant == "count" ||
                 (full && (variant == "majority" || variant == "strict-majority"))) {
        r.value = total;
        r.exponent_note = slack_note;
      } else if (variant == "count-mod") {
        require(params.q.has_value(), "count-mod needs q");
        const double q = static_cast<double>(*params.q);
        require(q >= 3 && q <= total / 2.0, "q must lie in [3, 2^(n-1)]");
        r.value = total;
        r.exponent_note = slack_note;
      } else if (full && variant == "additive-error") {
        require(params.delta.has_value() && params.h_hat.has_value(),
                "additive-error needs delta and h_hat");
        const double d = *params.delta;
        require(d >= 1 && d < total, "delta must lie in [1, 2^n)");
        const double hh = static_cast<double>(*params.h_hat);
        require(hh >= 0 && hh <= total, "h_hat must lie in [0, 2^n]");
        r.value = std::sqrt(total / d) + std::sqrt(hh * (total - hh)) / d;
        r.exponent_note = "additive-error counting regime; polynomial factors suppressed";
      } else if (variant == "multiplicative") {
        multiplicative_row(r, total, total);
      } else {
        throw Error("bounds: unknown " + problem_name(problem) + " variant '" + variant + "'");
      }
      break;
    }
    case Problem::StrongSim: {
      if (variant == "exact-n-bits" || variant == "exact-2-bits") {
        r.value = total;
        r.exponent_note = slack_note;
      } else if (variant == "additive-error") {
        require(params.delta_prime.has_value() && params.h_hat.has_value(),
                "additive-error needs delta_prime and h_hat");
        const double d = *params.delta_prime;
        require(d >= 1.0 / total && d < 1.0, "delta_prime must lie in [1/2^n, 1)");
        const double hh = static_cast<double>(*params.h_hat);
        require(hh >= 0 && hh <= total, "h_hat must lie in [0, 2^n]");
        r.value = std::sqrt(1.0 / d) + std::sqrt(hh * (total - hh)) / (total * d);
        r.exponent_note = "additive-error amplitude regime; polynomial factors suppressed";
      } else if (variant == "multiplicative") {
        multiplicative_row(r, total, total);
      } else {
        throw Error("bounds: unknown strong-sim variant '" + variant + "'");
      }
      break;
    }
    case Problem::Cvp: {
      if (variant != "vanilla") throw Error("bounds: unknown cvp variant '" + variant + "'");
      r.value = std::exp2(static_cast<double>(n) / 2.0);
      r.exponent_note =
          "norms with non-even exponent; exponent n/2 carries a -o(n) slack in the conjecture";
      break;
    }
    case Problem::Vcp: {
      if (variant == "vanilla") {
        r.value = total;
        r.exponent_note = slack_note;
      } else if (variant == "count-mod") {
        require(params.q.has_value(), "count-mod needs q");
        const double q = static_cast<double>(*params.q);
        require(q >= 3 && q <= total, "q must lie in [3, 2^n]");
        r.value = total;
        r.exponent_note = slack_note;
      } else if (variant == "multiplicative") {
        multiplicative_row(r, total, total);
      } else {
        throw Error("bounds: unknown vcp variant '" + variant + "'");
      }
      break;
    }
    case Problem::Ov: {
      if (variant == "vanilla") {
        r.value = static_cast<double>(n);
        r.exponent_note = "exponent carries a -o(1) slack in the conjecture";
      } else if (variant == "parity" || variant == "count") {
        r.value = total;
        r.exponent_note = "exponent 2 carries a -o(1) slack in the conjecture";
      } else if (variant == "multiplicative") {
        multiplicative_row(r, total, total);
      } else {
        throw Error("bounds: unknown ov variant '" + variant + "'");
      }
      break;
    }
    case Problem::HittingSet: {
      if (variant == "vanilla") {
        r.value = std::exp2(static_cast<double>(n) / 2.0);
        r.exponent_note = "exponent n/2 carries a -o(n) slack in the conjecture";
      } else if (variant == "parity" || variant == "count") {
        r.value = total;
        r.exponent_note = slack_note;
      } else if (variant == "multiplicative") {
        multiplicative_row(r, total, total);
      } else {
        throw Error("bounds: unknown hitting-set variant '" + variant + "'");
      }
      break;
    }
    case Problem::SetCover: {
      if (variant != "parity")
        throw Error("bounds: unknown set-cover variant '" + variant + "'");
      r.value = total;
      r.exponent_note = slack_note;
      break;
    }
  }
  return r;
}

}  // namespace qlab
