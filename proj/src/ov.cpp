#include "qlab/ov.hpp"

#include "qlab/common.hpp"

namespace qlab {

OVInstance cnf_to_ov(const Formula& f) {
  if (f.kind != FormulaKind::Cnf) throw Error("cnf_to_ov: input must be CNF");
  validate(f);
  if (f.num_vars < 2) throw Error("cnf_to_ov: need at least two variables");
  if (f.num_vars > 32) throw Error("cnf_to_ov: variable count exceeds the list cap of 32");

  const int n = f.num_vars;
  const int first_half = (n + 1) / 2;
  const int m = static_cast<int>(f.clauses.size());
  const std::size_t words = (m + 63) / 64;

  auto make_list = [&](int first_var, int half_size) {
    std::vector<std::vector<std::uint64_t>> list(std::size_t{1} << half_size,
                                                 std::vector<std::uint64_t>(words, 0));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << half_size); ++a) {
      for (int j = 0; j < m; ++j) {
        bool satisfied = false;
        for (int lit : f.clauses[j]) {
          const int var = lit > 0 ? lit : -lit;
          if (var < first_var || var >= first_var + half_size) continue;
          const bool value = (a >> (var - first_var)) & 1;
          if (lit > 0 ? value : !value) {
            satisfied = true;
            break;
          }
        }
        if (!satisfied) list[a][j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
    return list;
  };

  OVInstance inst;
  inst.d = m;
  inst.A = make_list(1, first_half);
  inst.B = make_list(first_half + 1, n - first_half);
  return inst;
}

std::uint64_t ov_count_pairs(const OVInstance& inst) {
  if (inst.d < 0) throw Error("ov_count_pairs: negative dimension");
  if (inst.A.empty() || inst.B.empty())
    throw Error("ov_count_pairs: both lists must be non-empty");
  const std::size_t words = (static_cast<std::size_t>(inst.d) + 63) / 64;
  const std::uint64_t tail_mask =
      inst.d % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (inst.d % 64)) - 1;
  for (const auto* list : {&inst.A, &inst.B}) {
    for (const auto& vec : *list) {
      if (vec.size() != words) throw Error("ov_count_pairs: vector length mismatch");
      if (words > 0 && (vec.back() & ~tail_mask) != 0)
        throw Error("ov_count_pairs: vector has bits past coordinate d");
    }
  }

  std::vector<std::uint64_t> partial(chunk_count(inst.A.size()), 0);
  parallel_chunks(inst.A.size(), [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto& a = inst.A[i];
      for (const auto& b : inst.B) {
        bool orthogonal = true;
        for (std::size_t w = 0; w < words && orthogonal; ++w)
          orthogonal = (a[w] & b[w]) == 0;
        local += orthogonal ? 1 : 0;
      }
    }
    partial[chunk] = local;
  });

  std::uint64_t total = 0;
  for (std::uint64_t v : partial) total += v;
  return total;
}

}  // namespace qlab
