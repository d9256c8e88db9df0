#include "zeno/constraints.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "zeno/error.hpp"

namespace zeno {

namespace {

constexpr int kBundledVars[45][3] = {
    {2, 1, 3}, {1, 3, 2}, {0, 1, 2}, {2, 3, 4}, {4, 0, 3}, {1, 0, 4}, {3, 0, 1}, {1, 4, 0}, {2, 1, 0},
    {0, 4, 3}, {4, 2, 3}, {3, 1, 0}, {1, 2, 0}, {3, 2, 0}, {4, 1, 3}, {1, 0, 4}, {3, 2, 4}, {3, 2, 4},
    {1, 3, 4}, {2, 4, 1}, {3, 1, 2}, {2, 1, 4}, {4, 0, 1}, {3, 4, 0}, {2, 4, 0}, {2, 4, 3}, {1, 4, 2},
    {4, 3, 1}, {2, 0, 4}, {3, 0, 2}, {4, 3, 2}, {0, 2, 4}, {0, 4, 2}, {1, 4, 0}, {4, 2, 1}, {2, 3, 4},
    {0, 4, 1}, {2, 0, 4}, {3, 2, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 2}, {0, 2, 3}, {2, 1, 4}, {4, 1, 0}};

constexpr int kBundledNeg[45][3] = {
    {1, 1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 0, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 1, 0},
    {1, 1, 1}, {1, 1, 0}, {1, 1, 1}, {1, 1, 0}, {1, 1, 0}, {1, 0, 1}, {1, 0, 1}, {1, 0, 0}, {1, 0, 1},
    {1, 1, 0}, {1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 0, 1},
    {1, 0, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 0}, {1, 1, 1}, {1, 1, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1},
    {1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {1, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 0, 0}};

// Unbiased draw in [0, n) from the raw engine so generated instances do not depend on the
// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

bool clause_violated_by_bits(const Clause& c, std::uint64_t bits) {
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    const bool value = (bits >> c.vars[i]) & 1;
    if (value != bool(c.negated[i])) return false;  // literal is true
  }
  return true;
}

}  // namespace

void CnfFormula::validate() const {
  if (n_vars < 1) throw InputError("formula needs at least one variable");
  for (const Clause& c : clauses) {
    if (c.vars.size() != c.negated.size()) throw InputError("clause literal and negation counts differ");
    std::set<int> seen;
    for (int v : c.vars) {
      if (v < 0 || v >= n_vars) throw InputError("clause variable out of range: " + std::to_string(v));
      if (!seen.insert(v).second) throw InputError("clause repeats variable " + std::to_string(v));
    }
  }
  if (planted) {
    if (int(planted->size()) != n_vars) throw InputError("planted assignment length mismatch");
    if (!satisfies(*this, *planted)) throw InputError("planted assignment does not satisfy the formula");
  }
}

CnfFormula load_bundled_instance() {
  CnfFormula f;
  f.n_vars = 5;
  for (int c = 0; c < 45; ++c) {
    Clause cl;
    for (int i = 0; i < 3; ++i) {
      cl.vars.push_back(kBundledVars[c][i]);
      cl.negated.push_back(kBundledNeg[c][i] != 0);
    }
    f.clauses.push_back(cl);
  }
  f.planted = std::vector<int>(5, 0);
  return f;
}

CnfFormula unsatisfiable_variant(const CnfFormula& f) {
  CnfFormula g = f;
  g.clauses.push_back({{0, 1, 2}, {false, false, false}});
  g.planted.reset();
  return g;
}

Pattern clause_forbidden_pattern(const Clause& c) {
  Pattern p;
  p.units = c.vars;
  for (bool neg : c.negated) p.values.push_back(neg ? 1 : 0);
  return p;
}

bool satisfies(const CnfFormula& f, const TritString& t) {
  if (int(t.size()) != f.n_vars) throw InputError("assignment length does not match the formula");
  for (const Clause& c : f.clauses) {
    const Pattern p = clause_forbidden_pattern(c);
    bool matched = true;
    for (std::size_t i = 0; i < p.units.size() && matched; ++i) matched = t[p.units[i]] == p.values[i];
    if (matched) return false;
  }
  return true;
}

std::vector<std::vector<int>> satisfying_assignments(const CnfFormula& f, std::size_t limit) {
  if (f.n_vars > 20) throw UnsupportedError("exhaustive search limited to 20 variables");
  std::vector<std::vector<int>> out;
  const std::uint64_t N = std::uint64_t(1) << f.n_vars;
  for (std::uint64_t b = 0; b < N && out.size() < limit; ++b) {
    bool ok = true;
    for (const Clause& c : f.clauses)
      if (clause_violated_by_bits(c, b)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<int> bits(f.n_vars);
    for (int j = 0; j < f.n_vars; ++j) bits[j] = int((b >> j) & 1);
    out.push_back(bits);
  }
  return out;
}

CnfFormula planted_generator(int n, std::uint64_t seed) {
  if (n < 3) throw InputError("planted instances need at least 3 variables");
  if (n > 20) throw UnsupportedError("uniqueness check is exhaustive; n must be at most 20");
  std::mt19937_64 rng(seed);
  const std::uint64_t N = std::uint64_t(1) << n;
  std::vector<bool> alive(N, true);
  std::uint64_t alive_count = N;
  std::set<std::vector<std::pair<int, bool>>> seen;

  CnfFormula f;
  f.n_vars = n;
  f.planted = std::vector<int>(n, 0);
  while (alive_count > 1) {
    Clause c;
    while (c.vars.size() < 3) {
      const int v = int(uniform_below(rng, std::uint64_t(n)));
      if (std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) c.vars.push_back(v);
    }
    const std::uint64_t mask = 1 + uniform_below(rng, 7);  // any sign pattern with a negation
    for (int i = 0; i < 3; ++i) c.negated.push_back((mask >> i) & 1);

    std::vector<std::pair<int, bool>> key;
    for (int i = 0; i < 3; ++i) key.emplace_back(c.vars[i], c.negated[i]);
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;

    f.clauses.push_back(c);
    for (std::uint64_t b = 0; b < N; ++b)
      if (alive[b] && clause_violated_by_bits(c, b)) {
        alive[b] = false;
        --alive_count;
      }
  }
  return f;
}

bool cardinality_holds(const CardinalityConstraint& c, const std::vector<int>& bits) {
  int ones = 0, zeros = 0;
  for (int u : c.scope) (bits.at(u) == 1 ? ones : zeros)++;
  switch (c.kind) {
    case CardinalityKind::exactly: return ones == c.k;
    case CardinalityKind::at_most_ones: return ones <= c.k;
    case CardinalityKind::at_most_zeros: return zeros <= c.k;
  }
  return false;
}

std::vector<std::size_t> cardinality_forbidden_patterns(const CardinalityConstraint& c, const SpaceSpec& spec) {
  if (spec.levels != 2) throw UnsupportedError("cardinality constraints need qubit units");
  if (c.k < 0 || c.k > int(c.scope.size())) throw InputError("cardinality bound out of range");
  for (int u : c.scope)
    if (u < 0 || u >= spec.n_units) throw InputError("cardinality scope unit out of range");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    const TritString t = trit_string(i, spec);
    int ones = 0, zeros = 0, undef = 0;
    for (int u : c.scope) {
      if (t[u] == 0) ++zeros;
      else if (t[u] == 1) ++ones;
      else ++undef;
    }
    bool infeasible = false;
    switch (c.kind) {
      case CardinalityKind::exactly: infeasible = ones > c.k || ones + undef < c.k; break;
      case CardinalityKind::at_most_ones: infeasible = ones > c.k; break;
      case CardinalityKind::at_most_zeros: infeasible = zeros > c.k; break;
    }
    if (infeasible) out.push_back(i);
  }
  return out;
}

CnfFormula domain_wall_clauses(int m_states) {
  if (m_states < 2) throw InputError("domain-wall encoding needs at least 2 states");
  CnfFormula f;
  f.n_vars = m_states - 1;
  for (int j = 0; j + 1 < f.n_vars; ++j) f.clauses.push_back({{j, j + 1}, {false, true}});
  return f;
}

ForbiddenSet clause_entries(const CnfFormula& f, const SpaceSpec& spec, double weight) {
  f.validate();
  if (spec.n_units != f.n_vars) throw InputError("formula size does not match the space");
  ForbiddenSet out;
  for (const Clause& c : f.clauses) {
    const Pattern p = clause_forbidden_pattern(c);
    std::size_t idx = 0, stride = 1;
    for (int v : p.values) {
      idx += std::size_t(v) * stride;
      stride *= std::size_t(spec.local_dim());
    }
    Vec s = Vec::Zero(Eigen::Index(stride));
    s(Eigen::Index(idx)) = 1.0;
    out.push_back({s, p.units, weight});
  }
  return out;
}

ForbiddenSet basis_entries(const std::vector<std::size_t>& indices, const SpaceSpec& spec, double weight) {
  std::vector<int> all(spec.n_units);
  for (int j = 0; j < spec.n_units; ++j) all[j] = j;
  ForbiddenSet out;
  for (std::size_t i : indices) {
    if (i >= spec.dim()) throw InputError("basis index out of range");
    Vec s = Vec::Zero(spec.dim());
    s(Eigen::Index(i)) = 1.0;
    out.push_back({s, all, weight});
  }
  return out;
}

CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  int declared_clauses = -1;
  bool header = false;
  Clause current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") {
      std::string key, value;
      if (ls >> key >> value && key == "planted") f.planted = bits_from_string(value);
      continue;
    }
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.n_vars >> declared_clauses) || fmt != "cnf")
        throw InputError("malformed header at line " + std::to_string(line_no));
      header = true;
      continue;
    }
    if (!header) throw InputError("clause before header at line " + std::to_string(line_no));
    std::istringstream toks(line);
    long lit;
    while (toks >> lit) {
      if (lit == 0) {
        if (current.vars.empty()) throw InputError("empty clause at line " + std::to_string(line_no));
        f.clauses.push_back(current);
        current = Clause{};
        continue;
      }
      const long v = lit < 0 ? -lit : lit;
      if (v > f.n_vars) throw InputError("literal out of range at line " + std::to_string(line_no));
      current.vars.push_back(int(v - 1));
      current.negated.push_back(lit < 0);
    }
    if (!toks.eof()) throw InputError("non-integer token at line " + std::to_string(line_no));
  }
  if (!header) throw InputError("missing 'p cnf' header");
  if (!current.vars.empty()) throw InputError("last clause is not terminated by 0");
  if (int(f.clauses.size()) != declared_clauses)
    throw InputError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  f.validate();
  return f;
}

void write_dimacs(std::ostream& out, const CnfFormula& f) {
  if (f.planted) out << "c planted " << bits_to_string(*f.planted) << "\n";
  out << "p cnf " << f.n_vars << " " << f.clauses.size() << "\n";
  for (const Clause& c : f.clauses) {
    for (std::size_t i = 0; i < c.vars.size(); ++i) out << (c.negated[i] ? "-" : "") << c.vars[i] + 1 << " ";
    out << "0\n";
  }
}

CnfFormula read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read CNF file: " + path);
  try {
    return read_dimacs(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Clause parse_clause(const std::string& text) {
  std::istringstream in(text);
  Clause c;
  long lit;
  while (in >> lit) {
    if (lit == 0) break;
    c.vars.push_back(int((lit < 0 ? -lit : lit) - 1));
    c.negated.push_back(lit < 0);
  }
  if (!in.eof() && in.fail()) throw InputError("clause must be whitespace-separated integers: " + text);
  if (c.vars.empty()) throw InputError("clause has no literals: " + text);
  return c;
}

std::string bits_to_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += b == 2 ? 'u' : char('0' + b);
  return s;
}

std::vector<int> bits_from_string(const std::string& s) {
  std::vector<int> bits;
  for (char ch : s) {
    if (ch == '0' || ch == '1') bits.push_back(ch - '0');
    else if (ch == 'u') bits.push_back(2);
    else throw InputError("bit string may contain only 0, 1 or u: " + s);
  }
  return bits;
}

}  // namespace zeno
