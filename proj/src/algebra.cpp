#include "vipr/algebra.hpp"

namespace vipr {

SignFlags flags_of(Sense sense) {
  const int s = sign_value(sense);
  return {s == 0, s >= 0, s <= 0};
}

bool dominates_expanded(const LinearExpr& a, const Rational& b, const SignFlags& source,
                        const LinearExpr& a_target, const Rational& b_target,
                        const SignFlags& target) {
  if (a.empty()) {
    bool absurd = false;
    if (source.eq) {
      absurd = !b.is_zero();
    } else if (source.geq) {
      absurd = b.sign() > 0;
    } else if (source.leq) {
      absurd = b.sign() < 0;
    }
    if (absurd) return true;
  }
  if (a != a_target) return false;
  if (target.eq) return source.eq && b == b_target;
  if (target.geq) return source.geq && b >= b_target;
  if (target.leq) return source.leq && b <= b_target;
  return false;
}

bool dominates(const LinearExpr& a, const Rational& b, bool eq, bool geq, bool leq,
               const Constraint& target) {
  return dominates_expanded(a, b, SignFlags{eq, geq, leq}, target.lhs, target.rhs,
                            flags_of(target.sense));
}

bool dominates(const Constraint& source, const Constraint& target) {
  return dominates_expanded(source.lhs, source.rhs, flags_of(source.sense), target.lhs,
                            target.rhs, flags_of(target.sense));
}

bool dominates(const PseudoConstraint& source, const Constraint& target) {
  return dominates(source.lhs, source.rhs, source.eq(), source.geq, source.leq, target);
}

PseudoConstraint linear_combination(const Multipliers& multipliers,
                                    const ConstraintResolver& resolver) {
  PseudoConstraint out;
  for (const auto& [i, lambda] : multipliers) {
    const Constraint* c = resolver(i);
    if (c == nullptr) throw UnresolvableIndex("constraint " + std::to_string(i) + " cannot be resolved");
    const int weighted = lambda.sign() * sign_value(c->sense);
    out.geq = out.geq && weighted >= 0;
    out.leq = out.leq && weighted <= 0;
    for (const auto& [j, coeff] : c->lhs) out.lhs.add(j, lambda * coeff);
    out.rhs += lambda * c->rhs;
  }
  return out;
}

bool roundable_flags(const LinearExpr& a, bool eq, const std::set<Index>& int_vars) {
  if (eq) return false;
  for (const auto& [j, coeff] : a) {
    if (int_vars.count(j) == 0 || !coeff.is_integer()) return false;
  }
  return true;
}

bool rnd_dominance(const LinearExpr& a, const Rational& b, bool geq, bool leq,
                   const Constraint& target) {
  if (a.empty()) {
    if (geq ? b.sign() > 0 : (leq && b.sign() < 0)) return true;
  }
  if (a != target.lhs) return false;
  switch (target.sense) {
    case Sense::Eq:
      return false;
    case Sense::Geq:
      return geq && b.ceil() >= target.rhs;
    case Sense::Leq:
      return leq && b.floor() <= target.rhs;
  }
  return false;
}

bool is_split_disjunction(const Constraint& ci, const Constraint& cj,
                          const std::set<Index>& int_vars) {
  if (ci.lhs != cj.lhs) return false;
  for (const auto& [j, coeff] : ci.lhs) {
    if (int_vars.count(j) == 0 || !coeff.is_integer()) return false;
  }
  if (!ci.rhs.is_integer() || !cj.rhs.is_integer()) return false;
  const int si = sign_value(ci.sense);
  const int sj = sign_value(cj.sense);
  if (si == 0 || si + sj != 0) return false;
  return si == 1 ? ci.rhs == cj.rhs + Rational(1) : ci.rhs == cj.rhs - Rational(1);
}

}  // namespace vipr
