#pragma once

#include "cvar/joint_dist.hpp"
#include "cvar/polynomial.hpp"
#include "cvar/symmetry.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvar {

enum class Relation { eq, gt, ge, lt, le };

std::string_view relation_symbol(Relation r);

/// `lhs rel rhs`, or `lhs/denom rel rhs` when a denominator is present. For a
/// ratio whose denominator vanishes the condition holds iff lhs vanishes too.
/// Polynomials live in p_ring(). A condition with alternatives holds when it
/// or any alternative holds.
struct SignCondition {
  Polynomial lhs = Polynomial(p_ring());
  std::optional<Polynomial> denom;
  Relation rel = Relation::eq;
  Rational rhs = 0;
  std::vector<SignCondition> alternatives;

  bool holds(const JointDist& p) const;
  bool holds(const JointDistD& p, double slack = 0) const;
  bool strict() const { return rel == Relation::gt || rel == Relation::lt; }
  std::string to_string() const;
};

/// Conjunction of sign conditions plus the open-interval convention: every
/// coordinate not pinned by an equality `p_ab = c` lies strictly in (0,1).
struct FeasibilityTest {
  std::vector<SignCondition> conditions;

  /// Outcome mask of coordinates pinned by single-coordinate equalities.
  unsigned pinned() const;
  std::string to_string() const;
};

/// First failing requirement, or nullopt when the test passes.
std::optional<std::string> explain_failure(const FeasibilityTest& t, const JointDist& p);
bool evaluate_test(const FeasibilityTest& t, const JointDist& p);
/// Floating variant for plotting/fitting diagnostics.
bool evaluate_test(const FeasibilityTest& t, const JointDistD& p, double slack = 0);

/// Substitutes p_o -> p_{g(o)} so that the result holds on g's image of the
/// original set.
FeasibilityTest transform_test(const SymmetryElem& g, const FeasibilityTest& t);

/// Renames outcome variables: p_o -> p_{perm[o]}.
Polynomial permute_p(const Polynomial& f, const std::array<unsigned, 4>& perm);

/// Parses `expr rel expr` or `frac(N, D) rel c`, rel in =, >, >=, <, <=;
/// alternatives are joined with ` or `.
SignCondition parse_condition(std::string_view text);

}  // namespace cvar
