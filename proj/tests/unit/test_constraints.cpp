#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "zeno/constraints.hpp"
#include "zeno/error.hpp"

using namespace zeno;

namespace {

// Brute-force uniqueness, written without the library's satisfies().
std::vector<int> only_solution(const CnfFormula& f, int& count) {
  std::vector<int> last;
  count = 0;
  for (int m = 0; m < (1 << f.n_vars); ++m) {
    bool ok = true;
    for (const Clause& c : f.clauses) {
      bool sat = false;
      for (std::size_t i = 0; i < c.vars.size(); ++i) sat |= (((m >> c.vars[i]) & 1) == 1) != bool(c.negated[i]);
      ok &= sat;
    }
    if (ok) {
      ++count;
      last.clear();
      for (int j = 0; j < f.n_vars; ++j) last.push_back((m >> j) & 1);
    }
  }
  return last;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bundled instance has the all-zero assignment as its only solution") {
  const CnfFormula f = load_bundled_instance();
  CHECK(f.n_vars == 5);
  CHECK(f.clauses.size() == 45);
  int count = 0;
  CHECK(only_solution(f, count) == std::vector<int>(5, 0));
  CHECK(count == 1);
  CHECK(satisfying_assignments(f).size() == 1);
  CHECK(satisfies(f, {0, 0, 0, 0, 0}));
  CHECK(satisfies(f, {0, 0, 2, 0, 0}));  // a unit in |u> satisfies its clauses
  CHECK_FALSE(satisfies(f, {1, 0, 0, 0, 0}));

  const CnfFormula g = unsatisfiable_variant(f);
  CHECK(g.clauses.size() == 46);
  CHECK_FALSE(g.planted.has_value());
  only_solution(g, count);
  CHECK(count == 0);
}

TEST_CASE("bundled data file matches the compiled-in instance") {
  const CnfFormula file = read_dimacs_file(std::string(ZENO_DATA_DIR) + "/bundled_instance.cnf");
  std::ostringstream a, b;
  write_dimacs(a, file);
  write_dimacs(b, load_bundled_instance());
  CHECK(a.str() == b.str());
}

TEST_CASE("a clause forbids exactly one pattern") {
  const Clause c{{0, 3, 4}, {false, true, false}};
  const Pattern p = clause_forbidden_pattern(c);
  CHECK(p.units == std::vector<int>{0, 3, 4});
  CHECK(p.values == TritString{0, 1, 0});
}

TEST_CASE("planted generator") {
  for (int n : {3, 5, 8, 12})
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      const CnfFormula f = planted_generator(n, seed);
      int count = 0;
      CHECK(only_solution(f, count) == std::vector<int>(n, 0));
      CHECK(count == 1);
      std::set<std::vector<int>> keys;
      for (const Clause& c : f.clauses) {
        CHECK(c.vars.size() == 3);
        CHECK(std::set<int>(c.vars.begin(), c.vars.end()).size() == 3);
        std::vector<int> key;
        for (std::size_t i = 0; i < 3; ++i) key.push_back(2 * c.vars[i] + int(c.negated[i]));
        std::sort(key.begin(), key.end());
        CHECK(keys.insert(key).second);
      }
    }
  std::ostringstream a, b;
  write_dimacs(a, planted_generator(7, 123));
  write_dimacs(b, planted_generator(7, 123));
  CHECK(a.str() == b.str());
  CHECK_THROWS_AS(planted_generator(2, 1), InputError);
  CHECK_THROWS_AS(planted_generator(21, 1), UnsupportedError);
}

TEST_CASE("planted generator golden output") {
  std::ostringstream out;
  write_dimacs(out, planted_generator(5, 42));
  CHECK(out.str() == slurp(std::string(ZENO_TEST_DIR) + "/golden/planted_n5_seed42.cnf"));
}

TEST_CASE("cardinality patterns agree with completion by brute force") {
  const SpaceSpec s(4);
  const std::vector<CardinalityConstraint> cases = {{CardinalityKind::exactly, 1, {0, 1, 2, 3}},
                                                    {CardinalityKind::exactly, 2, {0, 2, 3}},
                                                    {CardinalityKind::at_most_ones, 1, {0, 1, 2, 3}},
                                                    {CardinalityKind::at_most_zeros, 2, {0, 1, 2, 3}}};
  for (const auto& c : cases) {
    const auto bad = cardinality_forbidden_patterns(c, s);
    const std::set<std::size_t> bad_set(bad.begin(), bad.end());
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const TritString t = trit_string(i, s);
      bool feasible = false;
      for (int m = 0; m < 16 && !feasible; ++m) {
        std::vector<int> bits(4);
        bool consistent = true;
        for (int j = 0; j < 4; ++j) {
          bits[j] = (m >> j) & 1;
          if (t[j] != 2 && t[j] != bits[j]) consistent = false;
        }
        feasible = consistent && cardinality_holds(c, bits);
      }
      CHECK(bad_set.count(i) == (feasible ? 0u : 1u));
    }
  }
  CHECK_THROWS_AS(cardinality_forbidden_patterns({CardinalityKind::exactly, 5, {0, 1}}, s), InputError);
}

TEST_CASE("domain-wall clauses admit exactly the wall states") {
  const CnfFormula f = domain_wall_clauses(5);
  CHECK(f.n_vars == 4);
  const auto sols = satisfying_assignments(f);
  CHECK(sols.size() == 5);
  for (const auto& s : sols)
    for (int j = 0; j + 1 < 4; ++j) CHECK_FALSE((s[j] == 0 && s[j + 1] == 1));
}

TEST_CASE("DIMACS round trip and malformed input") {
  const CnfFormula f = planted_generator(6, 5);
  std::stringstream buf;
  write_dimacs(buf, f);
  const CnfFormula g = read_dimacs(buf);
  CHECK(g.n_vars == f.n_vars);
  CHECK(g.clauses.size() == f.clauses.size());
  CHECK(g.planted == f.planted);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    CHECK(g.clauses[i].vars == f.clauses[i].vars);
    CHECK(g.clauses[i].negated == f.clauses[i].negated);
  }

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_dimacs(in);
  };
  CHECK_THROWS_AS(parse("1 2 0\n"), InputError);                    // no header
  CHECK_THROWS_AS(parse("p cnf 2 1\n1 3 0\n"), InputError);         // variable out of range
  CHECK_THROWS_AS(parse("p cnf 2 2\n1 2 0\n"), InputError);         // clause count mismatch
  CHECK_THROWS_AS(parse("p cnf 2 1\n1 x 0\n"), InputError);         // not an integer
  CHECK_THROWS_AS(read_dimacs_file("/nonexistent/file.cnf"), InputError);
  CHECK(parse("c comment\np cnf 3 1\n1 -2 3 0\n").clauses[0].negated == std::vector<bool>{false, true, false});
}

TEST_CASE("clause and bit-string parsing") {
  const Clause c = parse_clause("1 -2 3");
  CHECK(c.vars == std::vector<int>{0, 1, 2});
  CHECK(c.negated == std::vector<bool>{false, true, false});
  CHECK_THROWS_AS(parse_clause("0 1"), InputError);
  CHECK_THROWS_AS(parse_clause(""), InputError);
  CHECK(bits_to_string({0, 1, 2}) == "01u");
  CHECK(bits_from_string("01u") == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(bits_from_string("012"), InputError);
}
