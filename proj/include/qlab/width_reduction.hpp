#ifndef QLAB_WIDTH_REDUCTION_HPP
#define QLAB_WIDTH_REDUCTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

// One leaf of the width-reduction branching tree.  `formula` lives on a
// compact variable set 1..formula.num_vars; variable_map[i] names the
// original variable behind compact variable i+1, and `pinned` lists the
// original variables that were fixed on the way down together with their
// forced values.  Every original variable appears in exactly one of the two.
struct ReducedFormula {
  Formula formula;
  std::string branch_path;  // '0' = clause trimmed to k literals, '1' = those literals forced false
  std::vector<std::pair<int, bool>> pinned;
  std::vector<int> variable_map;
};

// Splits a CNF into width-k CNFs whose solution sets partition the input's.
// The first clause wider than k (in clause order) drives each branch: the
// left branch keeps only its first k literals, the right branch forces those
// k literals false and drops the killed variables.  A branch whose clause
// empties out is emitted as a single contradiction leaf (one empty clause).
// Leaves arrive in depth-first order, left branch first.
void reduce_width_visit(const Formula& f, int k,
                        const std::function<void(const ReducedFormula&)>& emit);

std::vector<ReducedFormula> reduce_width(const Formula& f, int k);

// Upper bound on the number of leaves: binom(m + ceil(n/k), ceil(n/k)).
std::uint64_t output_bound(int n, int m, int k);

// Extends an assignment of a leaf's compact variables to the original
// variable set, filling pinned variables with their forced values.
std::vector<bool> lift_assignment(const ReducedFormula& leaf, int original_num_vars,
                                  const std::vector<bool>& leaf_assignment);

struct CountPreservationReport {
  std::uint64_t direct_count = 0;  // count_satisfying on the input
  std::uint64_t lifted_sum = 0;    // sum of leaf counts
  std::uint64_t leaves = 0;
  std::uint64_t bound = 0;
  bool within_bound = false;
  bool pass = false;               // lifted_sum == direct_count && within_bound
};

// Streams the reduction and checks that leaf counts add up to the input
// count and that the leaf total respects output_bound.
CountPreservationReport verify_count_preservation(const Formula& f, int k, int cap = 24);

}  // namespace qlab

#endif
