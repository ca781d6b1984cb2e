#include "qlab/formula.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qlab {

namespace {

// Value of variable j (1-based) across the 64 assignments {base, .., base+63},
// one bit per assignment.  Variables 1..6 toggle inside a word; higher ones
// are constant over the word and depend on `base` alone.
constexpr std::uint64_t kLanes[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

inline std::uint64_t literal_lane(int lit, std::uint64_t base) {
  std::uint64_t lane = assignment_lane(lit < 0 ? -lit : lit, base);
  return lit < 0 ? ~lane : lane;
}

// Truth of the whole formula on assignments {base..base+63} as a bit mask.
std::uint64_t formula_lane(const Formula& f, std::uint64_t base) {
  if (f.kind == FormulaKind::Cnf) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (const auto& clause : f.clauses) {
      std::uint64_t cm = 0;
      for (int lit : clause) cm |= literal_lane(lit, base);
      acc &= cm;
      if (acc == 0) break;
    }
    return acc;
  }
  std::uint64_t acc = 0;
  for (const auto& term : f.clauses) {
    std::uint64_t tm = ~std::uint64_t{0};
    for (int lit : term) tm &= literal_lane(lit, base);
    acc |= tm;
    if (acc == ~std::uint64_t{0}) break;
  }
  return acc;
}

void check_cap(const Formula& f, int cap, const char* op) {
  if (f.num_vars > cap)
    throw Error(std::string(op) + ": " + std::to_string(f.num_vars) +
                " variables exceed the enumeration cap of " + std::to_string(cap));
}

}  // namespace

std::uint64_t assignment_lane(int var, std::uint64_t base) {
  if (var <= 6) return kLanes[var - 1];
  return ((base >> (var - 1)) & 1) ? ~std::uint64_t{0} : std::uint64_t{0};
}

void validate(const Formula& f) {
  if (f.num_vars < 0) throw Error("formula: negative variable count");
  for (const auto& clause : f.clauses) {
    std::vector<int> seen;
    for (int lit : clause) {
      int v = lit < 0 ? -lit : lit;
      if (v < 1 || v > f.num_vars) throw Error("formula: literal out of range");
      for (int other : seen) {
        if (other == lit) throw Error("formula: duplicate literal in clause");
        if (other == -lit) throw Error("formula: clause contains a variable and its negation");
      }
      seen.push_back(lit);
    }
  }
}

std::uint64_t TruthTable::weight() const {
  std::uint64_t w = 0;
  for (std::uint64_t word : words) w += std::popcount(word);
  return w;
}

std::string to_hex(const TruthTable& t) {
  const std::uint64_t rows = t.size();
  const std::uint64_t digits = (rows + 3) / 4;
  std::string out = "n=" + std::to_string(t.num_vars) + ":";
  out.reserve(out.size() + digits);
  for (std::uint64_t d = digits; d-- > 0;) {
    std::uint64_t nibble = (t.words[(4 * d) >> 6] >> ((4 * d) & 63)) & 0xF;
    out.push_back("0123456789abcdef"[nibble]);
  }
  return out;
}

TruthTable truth_table_from_hex(const std::string& text) {
  if (text.rfind("n=", 0) != 0) throw Error("truth table: expected n= prefix");
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw Error("truth table: missing ':' separator");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(text.substr(2, colon - 2), &used);
    if (used != colon - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw Error("truth table: bad variable count");
  }
  if (n < 0 || n > 24) throw Error("truth table: variable count out of range");
  TruthTable t;
  t.num_vars = n;
  const std::uint64_t rows = t.size();
  const std::uint64_t digits = (rows + 3) / 4;
  const std::string hex = text.substr(colon + 1);
  if (hex.size() != digits) throw Error("truth table: wrong digit count");
  t.words.assign((rows + 63) / 64, 0);
  for (std::uint64_t i = 0; i < digits; ++i) {
    char c = hex[digits - 1 - i];
    std::uint64_t nibble;
    if (c >= '0' && c <= '9')
      nibble = c - '0';
    else if (c >= 'a' && c <= 'f')
      nibble = 10 + (c - 'a');
    else
      throw Error("truth table: invalid hex digit");
    t.words[(4 * i) >> 6] |= nibble << ((4 * i) & 63);
  }
  if (rows < 64 && (t.words[0] >> rows) != 0)
    throw Error("truth table: set bits beyond 2^n rows");
  return t;
}

std::string property_name(PropertyKind k) {
  switch (k) {
    case PropertyKind::Or: return "or";
    case PropertyKind::Count: return "count";
    case PropertyKind::Parity: return "parity";
    case PropertyKind::CountMod: return "count-mod";
    case PropertyKind::Majority: return "majority";
    case PropertyKind::StrictMajority: return "strict-majority";
    case PropertyKind::AdditiveCount: return "additive-count";
    case PropertyKind::WeightDistinguish: return "weight-distinguish";
  }
  throw Error("property_name: unknown kind");
}

PropertyKind property_from_name(const std::string& name) {
  if (name == "or") return PropertyKind::Or;
  if (name == "count") return PropertyKind::Count;
  if (name == "parity") return PropertyKind::Parity;
  if (name == "count-mod") return PropertyKind::CountMod;
  if (name == "majority") return PropertyKind::Majority;
  if (name == "strict-majority") return PropertyKind::StrictMajority;
  if (name == "additive-count") return PropertyKind::AdditiveCount;
  if (name == "weight-distinguish") return PropertyKind::WeightDistinguish;
  throw Error("unknown property name: " + name);
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  Formula f;
  long declared_clauses = 0;
  std::vector<int> clause;
  bool clause_open = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream toks(raw);
    std::string tok;
    if (!(toks >> tok)) continue;
    if (tok == "c") continue;
    if (tok[0] == 'c' && !have_header) continue;  // "cfoo" comment variants
    if (tok == "%") break;                        // trailing section marker
    if (tok == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string kind;
      long n = -1, m = -1;
      if (!(toks >> kind >> n >> m) || (kind != "cnf" && kind != "dnf") || n < 0 || m < 0)
        throw ParseError(line_no, "malformed header (expected 'p cnf <vars> <clauses>')");
      std::string rest;
      if (toks >> rest) throw ParseError(line_no, "malformed header (trailing tokens)");
      f.kind = kind == "cnf" ? FormulaKind::Cnf : FormulaKind::Dnf;
      f.num_vars = static_cast<int>(n);
      declared_clauses = m;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause data before header");
    // Literal tokens; the first one was already consumed into `tok`.
    while (true) {
      long lit;
      try {
        std::size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line_no, "invalid token '" + tok + "'");
      }
      if (lit == 0) {
        if (static_cast<long>(f.clauses.size()) == declared_clauses)
          throw ParseError(line_no, "more clauses than the header declares");
        f.clauses.push_back(clause);
        clause.clear();
        clause_open = false;
      } else {
        long v = lit < 0 ? -lit : lit;
        if (v > f.num_vars)
          throw ParseError(line_no, "literal " + std::to_string(lit) + " out of range");
        bool duplicate = false;
        for (int other : clause) {
          if (other == lit) duplicate = true;
          if (other == -lit)
            throw ParseError(line_no, "tautological clause (contains " + std::to_string(-lit) +
                                          " and " + std::to_string(lit) + ")");
        }
        if (!duplicate) clause.push_back(static_cast<int>(lit));
        clause_open = true;
      }
      if (!(toks >> tok)) break;
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header");
  if (clause_open) throw ParseError(line_no, "missing terminating 0");
  if (static_cast<long>(f.clauses.size()) != declared_clauses)
    throw ParseError(line_no, "fewer clauses than the header declares (got " +
                                  std::to_string(f.clauses.size()) + ", expected " +
                                  std::to_string(declared_clauses) + ")");
  return f;
}

std::string emit_dimacs(const Formula& f) {
  std::string out = "p ";
  out += f.kind == FormulaKind::Cnf ? "cnf " : "dnf ";
  out += std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

bool evaluate(const Formula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.num_vars)
    throw Error("evaluate: assignment length " + std::to_string(assignment.size()) +
                " does not match " + std::to_string(f.num_vars) + " variables");
  auto lit_true = [&](int lit) {
    bool v = assignment[(lit < 0 ? -lit : lit) - 1];
    return lit < 0 ? !v : v;
  };
  if (f.kind == FormulaKind::Cnf) {
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) sat = sat || lit_true(lit);
      if (!sat) return false;
    }
    return true;
  }
  for (const auto& term : f.clauses) {
    bool all = true;
    for (int lit : term) all = all && lit_true(lit);
    if (all) return true;
  }
  return false;
}

bool evaluate_bits(const Formula& f, std::uint64_t bits) {
  auto lit_true = [&](int lit) {
    bool v = (bits >> ((lit < 0 ? -lit : lit) - 1)) & 1;
    return lit < 0 ? !v : v;
  };
  if (f.kind == FormulaKind::Cnf) {
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) sat = sat || lit_true(lit);
      if (!sat) return false;
    }
    return true;
  }
  for (const auto& term : f.clauses) {
    bool all = true;
    for (int lit : term) all = all && lit_true(lit);
    if (all) return true;
  }
  return false;
}

Formula negate(const Formula& f) {
  Formula g;
  g.kind = f.kind == FormulaKind::Cnf ? FormulaKind::Dnf : FormulaKind::Cnf;
  g.num_vars = f.num_vars;
  g.clauses.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    std::vector<int> flipped;
    flipped.reserve(clause.size());
    for (int lit : clause) flipped.push_back(-lit);
    g.clauses.push_back(std::move(flipped));
  }
  return g;
}

TruthTable truth_table(const Formula& f, int cap) {
  check_cap(f, cap, "truth_table");
  TruthTable t;
  t.num_vars = f.num_vars;
  const std::uint64_t rows = t.size();
  const std::uint64_t num_words = (rows + 63) / 64;
  t.words.assign(num_words, 0);
  parallel_chunks(num_words, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t w = begin; w < end; ++w) t.words[w] = formula_lane(f, w * 64);
  });
  if (rows < 64) t.words[0] &= (std::uint64_t{1} << rows) - 1;
  return t;
}

std::uint64_t count_satisfying(const Formula& f, int cap) {
  check_cap(f, cap, "count_satisfying");
  const std::uint64_t rows = std::uint64_t{1} << f.num_vars;
  const std::uint64_t num_words = (rows + 63) / 64;
  const std::uint64_t tail_mask = rows < 64 ? (std::uint64_t{1} << rows) - 1 : ~std::uint64_t{0};
  std::vector<std::uint64_t> partial(chunk_count(num_words), 0);
  parallel_chunks(num_words, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    for (std::uint64_t w = begin; w < end; ++w) {
      std::uint64_t lane = formula_lane(f, w * 64);
      if (w == num_words - 1) lane &= tail_mask;
      local += std::popcount(lane);
    }
    partial[chunk] = local;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t eval_property(const TruthTable& t, const PropertySpec& p) {
  const std::uint64_t n_rows = t.size();
  const std::uint64_t w = t.weight();
  switch (p.kind) {
    case PropertyKind::Or:
      return w > 0 ? 1 : 0;
    case PropertyKind::Count:
      return w;
    case PropertyKind::Parity:
      return w & 1;
    case PropertyKind::CountMod:
      if (p.modulus < 3 || p.modulus > n_rows / 2)
        throw Error("count-mod: modulus must lie in [3, 2^n / 2]");
      return w % p.modulus;
    case PropertyKind::Majority:
      return 2 * w >= n_rows ? 1 : 0;
    case PropertyKind::StrictMajority:
      return 2 * w > n_rows ? 1 : 0;
    case PropertyKind::AdditiveCount:
      if (p.slack < 1 || p.slack >= n_rows)
        throw Error("additive-count: slack must lie in [1, 2^n)");
      return w;
    case PropertyKind::WeightDistinguish: {
      if (p.level_one == p.level_zero)
        throw Error("weight-distinguish: the two levels must differ");
      if (p.level_one > n_rows || p.level_zero > n_rows)
        throw Error("weight-distinguish: level exceeds 2^n");
      if (w == p.level_one) return 1;
      if (w == p.level_zero) return 0;
      throw PromiseViolation("weight-distinguish: table weight " + std::to_string(w) +
                             " is at neither level (" + std::to_string(p.level_one) + ", " +
                             std::to_string(p.level_zero) + ")");
    }
  }
  throw Error("eval_property: unknown property kind");
}

Formula random_formula(int n, int m, int k, std::uint64_t seed) {
  if (n < 1) throw Error("random_formula: need at least one variable");
  if (m < 0) throw Error("random_formula: negative clause count");
  if (k < 1 || k > n) throw Error("random_formula: width bound must lie in [1, n]");
  Rng rng(seed);
  Formula f;
  f.kind = FormulaKind::Cnf;
  f.num_vars = n;
  f.clauses.reserve(m);
  std::vector<int> pool(n);
  for (int c = 0; c < m; ++c) {
    int w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> clause;
    clause.reserve(w);
    for (int i = 0; i < w; ++i) {
      // Partial Fisher-Yates: pick an unused variable, then a polarity.
      std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      clause.push_back(rng.coin() ? -pool[i] : pool[i]);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace qlab
