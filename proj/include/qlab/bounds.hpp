#ifndef QLAB_BOUNDS_HPP
#define QLAB_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

// A symmetric Boolean property of N-bit strings: the value depends only on
// the Hamming weight, so it is a 0/1 vector over weights 0..N.
struct SymmetricSpectrum {
  std::uint64_t input_length = 0;         // N
  std::vector<std::uint8_t> levels;       // N+1 entries, each 0 or 1

  bool operator==(const SymmetricSpectrum&) const = default;
};

SymmetricSpectrum parity_spectrum(std::uint64_t n);
SymmetricSpectrum majority_spectrum(std::uint64_t n);
SymmetricSpectrum strict_majority_spectrum(std::uint64_t n);
SymmetricSpectrum or_spectrum(std::uint64_t n);
// 1 exactly at weights w with w mod q == q-1 (the decision form of counting
// modulo q).  Requires 3 <= q <= n/2.
SymmetricSpectrum residue_indicator_spectrum(std::uint64_t n, std::uint64_t q);

// Jump gap of a symmetric property: min |2k - N + 1| over the k < N where
// levels[k] != levels[k+1].  Small gap means a jump near weight N/2 and
// hence high approximate degree.  Throws Error on a constant spectrum.
std::uint64_t paturi_gamma(const SymmetricSpectrum& s);

// Quantum query lower bound witness for a property at input length N.
// `ones_count` feeds the additive-count formula (the weight t of the input
// regime being probed) and is ignored elsewhere.
struct BoundWitness {
  PropertySpec property;
  std::uint64_t input_length = 0;
  double value = 0;
  std::string formula;  // human-readable form of the bound that was applied
};

BoundWitness query_bound_witness(const PropertySpec& p, std::uint64_t n,
                                 std::optional<std::uint64_t> ones_count = {});

// Weight pair for distinguishing a count h from (1+gamma)h at relative
// accuracy gamma: level_one is mapped to 1, level_zero to 0, and gap is
// their difference.  Throws Error when gamma is out of range or the
// separation inequality fails, naming the failed check.
struct DistinguishParams {
  std::uint64_t level_one = 0;   // ceil(N / (2(1-gamma)))
  std::uint64_t level_zero = 0;  // N - level_one
  std::uint64_t gap = 0;
};

DistinguishParams gamma_distinguish_params(std::uint64_t n, double gamma);

// ---- conjectured time lower bounds ----------------------------------------

enum class Problem { Cnfsat, Ksat, StrongSim, Cvp, Vcp, Ov, HittingSet, SetCover };

std::string problem_name(Problem p);
Problem problem_from_name(const std::string& name);

struct BoundParams {
  int n = 0;  // variable count, or list length for the vector problems
  std::optional<double> gamma;
  std::optional<double> delta;        // additive slack on counts
  std::optional<double> delta_prime;  // additive slack on amplitudes
  std::optional<std::uint64_t> h_hat;
  std::optional<std::uint64_t> q;
  // When false, a multiplicative row with gamma * h_hat <= 1 is an error
  // instead of dropping to the exact-count bound.
  bool allow_fallback = true;
};

struct BoundReport {
  Problem problem = Problem::Cnfsat;
  std::string variant;
  BoundParams params;
  double value = 0;
  std::string exponent_note;
};

// Conjectured quantum time lower bound for a problem variant.  Variants per
// problem:
//   cnfsat:      vanilla parity majority strict-majority count count-mod
//                additive-error multiplicative
//   ksat:        vanilla parity count count-mod multiplicative
//   strong-sim:  exact-n-bits exact-2-bits additive-error multiplicative
//   cvp:         vanilla
//   vcp:         vanilla count-mod multiplicative
//   ov:          vanilla parity count multiplicative
//   hitting-set: vanilla parity count multiplicative
//   set-cover:   parity
// Throws Error for unknown rows or parameters outside their legal ranges.
BoundReport conjectured_time_bound(Problem problem, const std::string& variant,
                                   const BoundParams& params);

}  // namespace qlab

#endif
