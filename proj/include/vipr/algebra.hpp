#pragma once

#include <functional>
#include <set>
#include <stdexcept>

#include "vipr/model.hpp"

namespace vipr {

/// Result of a linear combination of constraints. Its sign may be indefinite,
/// so it carries the geq/leq flags instead of a Sense.
struct PseudoConstraint {
  LinearExpr lhs;  ///< combined coefficient vector A
  Rational rhs;    ///< combined right hand side B
  bool geq = true;
  bool leq = true;

  [[nodiscard]] bool eq() const { return geq && leq; }
  [[nodiscard]] bool suitable() const { return geq || leq; }

  friend bool operator==(const PseudoConstraint&, const PseudoConstraint&) = default;
};

/// The flag triple (s = 0, s >= 0, s <= 0) for a definite sign.
struct SignFlags {
  bool eq = false;
  bool geq = false;
  bool leq = false;
};

SignFlags flags_of(Sense sense);

/// The expanded domination predicate over raw (lhs, rhs, flags) pairs.
///
/// Holds when the source has a zero left hand side and an rhs that makes it
/// unsatisfiable under its flags, or when both sides share a left hand side
/// and the source bound is at least as tight in the target's direction.
/// All-false source flags never dominate.
bool dominates_expanded(const LinearExpr& a, const Rational& b, const SignFlags& source,
                        const LinearExpr& a_target, const Rational& b_target,
                        const SignFlags& target);

/// Domination with an arbitrary flag triple on the source and a definite
/// target constraint.
bool dominates(const LinearExpr& a, const Rational& b, bool eq, bool geq, bool leq,
               const Constraint& target);

/// Shorthand for two constraints with definite sign.
bool dominates(const Constraint& source, const Constraint& target);

bool dominates(const PseudoConstraint& source, const Constraint& target);

class UnresolvableIndex : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Maps a constraint index to its constraint, or nullptr when unknown.
using ConstraintResolver = std::function<const Constraint*(Index)>;

/// Sum of `multipliers[i] * C_i` with the suitability flags of the weights.
///
/// geq holds when every weight agrees with its constraint's direction for a
/// `>=` result, leq likewise for `<=`. Cancelled coefficients are dropped.
/// Throws UnresolvableIndex when the resolver has no constraint for an index.
PseudoConstraint linear_combination(const Multipliers& multipliers,
                                    const ConstraintResolver& resolver);

/// Integer coefficients on integer variables, zero elsewhere, and not an
/// equality.
bool roundable_flags(const LinearExpr& a, bool eq, const std::set<Index>& int_vars);

/// Whether the rounding of (a, b, flags) dominates `target`. Assumes the
/// combination is roundable; check that separately with roundable_flags.
bool rnd_dominance(const LinearExpr& a, const Rational& b, bool geq, bool leq,
                   const Constraint& target);

/// Whether `ci` and `cj` form a split disjunction `a.x <= delta`,
/// `a.x >= delta + 1` with integral `a` supported on integer variables.
bool is_split_disjunction(const Constraint& ci, const Constraint& cj,
                          const std::set<Index>& int_vars);

}  // namespace vipr
