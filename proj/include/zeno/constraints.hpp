#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zeno/hilbert.hpp"
#include "zeno/operators.hpp"

namespace zeno {

struct Clause {
  std::vector<int> vars;
  std::vector<bool> negated;
};

struct CnfFormula {
  int n_vars = 0;
  std::vector<Clause> clauses;
  std::optional<std::vector<int>> planted;

  void validate() const;
};

// The only assignment of a clause's variables that falsifies it.
struct Pattern {
  TritString values;
  std::vector<int> units;
};

CnfFormula load_bundled_instance();
CnfFormula unsatisfiable_variant(const CnfFormula& f);

Pattern clause_forbidden_pattern(const Clause& c);

// A clause is satisfied by a true literal or by any involved unit in |u>.
bool satisfies(const CnfFormula& f, const TritString& t);

// Every bit string that satisfies f (exhaustive, n <= 20).
std::vector<std::vector<int>> satisfying_assignments(const CnfFormula& f, std::size_t limit = SIZE_MAX);

CnfFormula planted_generator(int n, std::uint64_t seed);

enum class CardinalityKind { exactly, at_most_ones, at_most_zeros };

struct CardinalityConstraint {
  CardinalityKind kind = CardinalityKind::exactly;
  int k = 1;
  std::vector<int> scope;
};

// Full-space indices of trit strings that no completion of their u positions can make feasible.
std::vector<std::size_t> cardinality_forbidden_patterns(const CardinalityConstraint& c, const SpaceSpec& spec);

// Whether a bit string meets the constraint.
bool cardinality_holds(const CardinalityConstraint& c, const std::vector<int>& bits);

CnfFormula domain_wall_clauses(int m_states);

// Clause patterns as forbidden entries on each clause's scope.
ForbiddenSet clause_entries(const CnfFormula& f, const SpaceSpec& spec, double weight = 1.0);

// Full basis strings as forbidden entries over all units.
ForbiddenSet basis_entries(const std::vector<std::size_t>& indices, const SpaceSpec& spec, double weight = 1.0);

CnfFormula read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const CnfFormula& f);
CnfFormula read_dimacs_file(const std::string& path);

// Parses "1 -2 3" (1-based DIMACS literals) into a clause.
Clause parse_clause(const std::string& text);

std::string bits_to_string(const std::vector<int>& bits);
std::vector<int> bits_from_string(const std::string& s);

}  // namespace zeno
