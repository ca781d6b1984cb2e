#ifndef QLAB_OV_HPP
#define QLAB_OV_HPP

#include <cstdint>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

// Split-and-list instance.  Each vector has d coordinates, one per clause,
// packed into 64-bit words: coordinate j sits in word j / 64 at bit j % 64.
// A set bit means the half-assignment leaves that clause unsatisfied, so a
// pair is orthogonal exactly when the two halves cover every clause.
struct OVInstance {
  int d = 0;
  std::vector<std::vector<std::uint64_t>> A;  // 2^ceil(n/2) vectors
  std::vector<std::vector<std::uint64_t>> B;  // 2^floor(n/2) vectors
};

// Splits the variables into the first ceil(n/2) and the rest.  A[alpha]
// has bit j clear iff assignment alpha to the first half satisfies clause j,
// where bit i of alpha is the value of the (i+1)-th variable of that half;
// B likewise over the second half.  Orthogonal pairs are in bijection with
// the satisfying assignments.  Requires CNF with 2 <= n <= 32.
OVInstance cnf_to_ov(const Formula& f);

// Exact orthogonal-pair count by the quadratic double loop, split across
// threads over chunks of A.  Lists must be non-empty, every vector must have
// the word count d implies, and bits past coordinate d must be clear.
std::uint64_t ov_count_pairs(const OVInstance& inst);

}  // namespace qlab

#endif
