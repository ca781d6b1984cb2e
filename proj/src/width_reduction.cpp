#include "qlab/width_reduction.hpp"

#include <algorithm>
#include <limits>

namespace qlab {

namespace {

struct Frame {
  Formula formula;
  std::string path;
  std::vector<std::pair<int, bool>> pinned;
  std::vector<int> var_map;  // compact var i+1 -> original var
};

int first_wide_clause(const Formula& f, int k) {
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    if (static_cast<int>(f.clauses[i].size()) > k) return static_cast<int>(i);
  return -1;
}

// Forces the given literals of `base` to false, drops the killed variables
// and renumbers the survivors.  Returns false when some clause loses all its
// literals, i.e. the branch is contradictory.
bool substitute(const Frame& base, const std::vector<int>& forced_false, Frame* out) {
  // value[v]: -1 free, 0/1 forced.
  std::vector<signed char> value(base.formula.num_vars + 1, -1);
  for (int lit : forced_false) value[lit < 0 ? -lit : lit] = lit < 0 ? 1 : 0;

  std::vector<int> new_index(base.formula.num_vars + 1, 0);
  out->var_map.clear();
  out->pinned = base.pinned;
  for (int v = 1; v <= base.formula.num_vars; ++v) {
    if (value[v] < 0) {
      out->var_map.push_back(base.var_map[v - 1]);
      new_index[v] = static_cast<int>(out->var_map.size());
    } else {
      out->pinned.emplace_back(base.var_map[v - 1], value[v] == 1);
    }
  }

  out->formula.kind = FormulaKind::Cnf;
  out->formula.num_vars = static_cast<int>(out->var_map.size());
  out->formula.clauses.clear();
  for (const auto& clause : base.formula.clauses) {
    std::vector<int> reduced;
    bool satisfied = false;
    for (int lit : clause) {
      int v = lit < 0 ? -lit : lit;
      if (value[v] < 0) {
        reduced.push_back(lit < 0 ? -new_index[v] : new_index[v]);
      } else if ((value[v] == 1) == (lit > 0)) {
        satisfied = true;
        break;
      }
      // A falsified literal just disappears.
    }
    if (satisfied) continue;
    if (reduced.empty() && !clause.empty()) return false;
    if (reduced.empty() && clause.empty()) return false;  // inherited contradiction
    out->formula.clauses.push_back(std::move(reduced));
  }
  return true;
}

void visit(Frame frame, int k, const std::function<void(const ReducedFormula&)>& emit) {
  const int wide = first_wide_clause(frame.formula, k);
  if (wide < 0) {
    emit({std::move(frame.formula), std::move(frame.path), std::move(frame.pinned),
          std::move(frame.var_map)});
    return;
  }
  const std::vector<int> head(frame.formula.clauses[wide].begin(),
                              frame.formula.clauses[wide].begin() + k);

  // Left: the wide clause keeps only its first k literals.
  Frame left = frame;
  left.formula.clauses[wide] = head;
  left.path += '0';
  visit(std::move(left), k, emit);

  // Right: those k literals are all false; their variables leave the formula.
  Frame right;
  right.path = frame.path + '1';
  if (!substitute(frame, head, &right)) {
    // The forced values wiped out a clause: emit one contradiction leaf.
    ReducedFormula leaf;
    leaf.formula.kind = FormulaKind::Cnf;
    leaf.formula.num_vars = static_cast<int>(right.var_map.size());
    leaf.formula.clauses = {{}};
    leaf.branch_path = std::move(right.path);
    leaf.pinned = std::move(right.pinned);
    leaf.variable_map = std::move(right.var_map);
    emit(leaf);
    return;
  }
  visit(std::move(right), k, emit);
}

}  // namespace

void reduce_width_visit(const Formula& f, int k,
                        const std::function<void(const ReducedFormula&)>& emit) {
  if (f.kind != FormulaKind::Cnf) throw Error("reduce_width: input must be CNF");
  if (k < 1) throw Error("reduce_width: target width must be positive");
  validate(f);
  Frame root;
  root.formula = f;
  root.var_map.resize(f.num_vars);
  for (int v = 1; v <= f.num_vars; ++v) root.var_map[v - 1] = v;
  visit(std::move(root), k, emit);
}

std::vector<ReducedFormula> reduce_width(const Formula& f, int k) {
  std::vector<ReducedFormula> out;
  reduce_width_visit(f, k, [&](const ReducedFormula& leaf) { out.push_back(leaf); });
  return out;
}

std::uint64_t output_bound(int n, int m, int k) {
  if (n < 1 || m < 0 || k < 1) throw Error("output_bound: need n >= 1, m >= 0, k >= 1");
  const std::uint64_t r = (static_cast<std::uint64_t>(n) + k - 1) / k;
  // binom(m + r, r), iteratively; guard against overflow.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (static_cast<std::uint64_t>(m) + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw Error("output_bound: bound exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<bool> lift_assignment(const ReducedFormula& leaf, int original_num_vars,
                                  const std::vector<bool>& leaf_assignment) {
  if (leaf_assignment.size() != leaf.variable_map.size())
    throw Error("lift_assignment: assignment length mismatch");
  if (leaf.variable_map.size() + leaf.pinned.size() != static_cast<std::size_t>(original_num_vars))
    throw Error("lift_assignment: leaf does not cover the original variable set");
  std::vector<bool> full(original_num_vars, false);
  for (const auto& [var, val] : leaf.pinned) full[var - 1] = val;
  for (std::size_t i = 0; i < leaf.variable_map.size(); ++i)
    full[leaf.variable_map[i] - 1] = leaf_assignment[i];
  return full;
}

CountPreservationReport verify_count_preservation(const Formula& f, int k, int cap) {
  CountPreservationReport r;
  r.direct_count = count_satisfying(f, cap);
  reduce_width_visit(f, k, [&](const ReducedFormula& leaf) {
    r.lifted_sum += count_satisfying(leaf.formula, cap);
    ++r.leaves;
  });
  r.bound = output_bound(f.num_vars, static_cast<int>(f.clauses.size()), k);
  r.within_bound = r.leaves <= r.bound;
  r.pass = r.within_bound && r.lifted_sum == r.direct_count;
  return r;
}

}  // namespace qlab
