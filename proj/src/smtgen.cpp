#include "vipr/smtgen.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "vipr/algebra.hpp"

namespace vipr {

namespace {

using Terms = std::map<Index, std::string>;

const std::string kTrue = "true";
const std::string kFalse = "false";
const std::string kZero = "0.0";

std::string lit(const Rational& value) {
  const Rational magnitude = value.sign() < 0 ? -value : value;
  std::string text = magnitude.numerator_string() + ".0";
  if (!magnitude.is_integer()) text = "(/ " + text + " " + magnitude.denominator_string() + ".0)";
  return value.sign() < 0 ? "(- " + text + ")" : text;
}

std::string lit(bool value) { return value ? kTrue : kFalse; }

std::string app(const std::string& op, const std::string& a, const std::string& b) {
  return "(" + op + " " + a + " " + b + ")";
}

std::string app(const std::string& op, const std::string& a) { return "(" + op + " " + a + ")"; }

std::string nary(const std::string& op, const std::vector<std::string>& parts, const std::string& empty) {
  if (parts.empty()) return empty;
  if (parts.size() == 1) return parts.front();
  std::string out = "(" + op;
  for (const std::string& p : parts) out += " " + p;
  return out + ")";
}

std::string conj(const std::vector<std::string>& parts) {
  std::vector<std::string> kept;
  for (const std::string& p : parts) {
    if (p == kFalse) return kFalse;
    if (p != kTrue) kept.push_back(p);
  }
  return nary("and", kept, kTrue);
}

std::string disj(const std::vector<std::string>& parts) {
  std::vector<std::string> kept;
  for (const std::string& p : parts) {
    if (p == kTrue) return kTrue;
    if (p != kFalse) kept.push_back(p);
  }
  return nary("or", kept, kFalse);
}

std::string implies(bool antecedent, const std::string& consequent) {
  return antecedent ? consequent : kTrue;
}

std::string sum(const std::vector<std::string>& parts) { return nary("+", parts, kZero); }

std::string index_less(Index a, Index b) {
  return "(< " + std::to_string(a) + " " + std::to_string(b) + ")";
}

Terms literal_terms(const LinearExpr& expr) {
  Terms out;
  for (const auto& [j, coeff] : expr) out[j] = lit(coeff);
  return out;
}

std::string term_at(const Terms& terms, Index j) {
  const auto it = terms.find(j);
  return it == terms.end() ? kZero : it->second;
}

/// Symbolic sum of lambda_i * C_i over the multipliers.
struct SymbolicCombination {
  Terms lhs;
  std::string rhs;
};

SymbolicCombination combine(const Problem& problem, const Certificate& certificate, const Multipliers& data) {
  std::map<Index, std::vector<std::string>> columns;
  std::vector<std::string> rhs;
  for (const auto& [i, lambda] : data) {
    const Constraint& c = constraint_at(problem, certificate, i);
    for (const auto& [j, coeff] : c.lhs) columns[j].push_back(app("*", lit(lambda), lit(coeff)));
    if (!c.rhs.is_zero()) rhs.push_back(app("*", lit(lambda), lit(c.rhs)));
  }
  SymbolicCombination out;
  for (auto& [j, parts] : columns) out.lhs[j] = sum(parts);
  out.rhs = sum(rhs);
  return out;
}

std::vector<std::string> all_zero(const Terms& a) {
  std::vector<std::string> out;
  for (const auto& [j, term] : a) out.push_back(app("=", term, kZero));
  return out;
}

std::vector<std::string> same_lhs(const Terms& a, const LinearExpr& target) {
  std::set<Index> support;
  for (const auto& [j, term] : a) support.insert(j);
  for (const auto& [j, coeff] : target) support.insert(j);
  std::vector<std::string> out;
  for (Index j : support) out.push_back(app("=", term_at(a, j), lit(target.get(j))));
  return out;
}

std::string smt_dominates(const Terms& a, const std::string& b, const SignFlags& flags, const Constraint& target) {
  std::vector<std::string> absurd = all_zero(a);
  if (flags.eq) {
    absurd.push_back(app("not", app("=", b, kZero)));
  } else if (flags.geq) {
    absurd.push_back(app(">", b, kZero));
  } else if (flags.leq) {
    absurd.push_back(app("<", b, kZero));
  } else {
    absurd.push_back(kFalse);
  }

  std::vector<std::string> tighter = same_lhs(a, target.lhs);
  const std::string bt = lit(target.rhs);
  switch (target.sense) {
    case Sense::Eq:
      tighter.push_back(flags.eq ? app("=", b, bt) : kFalse);
      break;
    case Sense::Geq:
      tighter.push_back(flags.geq ? app(">=", b, bt) : kFalse);
      break;
    case Sense::Leq:
      tighter.push_back(flags.leq ? app("<=", b, bt) : kFalse);
      break;
  }
  return disj({conj(absurd), conj(tighter)});
}

std::string smt_dominates(const Constraint& source, const Constraint& target) {
  return smt_dominates(literal_terms(source.lhs), lit(source.rhs), flags_of(source.sense), target);
}

std::string smt_prv(Index k, const Multipliers& data) {
  std::vector<std::string> parts;
  for (const auto& [i, lambda] : data) parts.push_back(index_less(i, k));
  return conj(parts);
}

std::string smt_split(const Constraint& ci, const Constraint& cj, const std::set<Index>& int_vars) {
  std::vector<std::string> parts = same_lhs(literal_terms(ci.lhs), cj.lhs);
  for (const auto& [j, coeff] : ci.lhs) {
    parts.push_back(int_vars.count(j) != 0 ? app("is_int", lit(coeff)) : app("=", lit(coeff), kZero));
  }
  parts.push_back(app("is_int", lit(ci.rhs)));
  parts.push_back(app("is_int", lit(cj.rhs)));
  const int si = sign_value(ci.sense);
  const int sj = sign_value(cj.sense);
  parts.push_back(lit(si != 0 && si + sj == 0));
  parts.push_back(app("=", lit(ci.rhs), app(si == 1 ? "+" : "-", lit(cj.rhs), "1.0")));
  return conj(parts);
}

std::string floor_of(const std::string& x) { return app("to_real", app("to_int", x)); }

std::string ceil_of(const std::string& x) { return app("to_real", app("-", app("to_int", app("-", x)))); }

std::string objective_value(const Problem& problem, const SparseVector& point) {
  std::vector<std::string> parts;
  for (const auto& [j, c] : problem.objective) {
    if (point.contains(j)) parts.push_back(app("*", lit(c), lit(point.get(j))));
  }
  return sum(parts);
}

std::string smt_der_k(const Problem& problem, const Certificate& certificate, const AssumptionSets& asets,
                      Index k) {
  const DerivedConstraint& der = derived_at(problem, certificate, k);
  const Constraint& target = der.constraint;
  switch (der.reason) {
    case Reason::Asm:
      return kTrue;

    case Reason::Lin:
    case Reason::Rnd: {
      const Multipliers& data = *der.multipliers();
      const SymbolicCombination combo = combine(problem, certificate, data);
      // Only the flags are taken from the native combination.
      const PseudoConstraint native = linear_combination(data, [&](Index i) { return &constraint_at(problem, certificate, i); });
      const SignFlags flags{native.eq(), native.geq, native.leq};
      if (der.reason == Reason::Lin) {
        return conj({smt_prv(k, data), smt_dominates(combo.lhs, combo.rhs, flags, target)});
      }
      std::vector<std::string> roundable{lit(!flags.eq)};
      for (const auto& [j, term] : combo.lhs) {
        roundable.push_back(problem.is_integer_var(j) ? app("is_int", term) : app("=", term, kZero));
      }
      std::vector<std::string> absurd = all_zero(combo.lhs);
      absurd.push_back(flags.geq ? app(">", combo.rhs, kZero) : (flags.leq ? app("<", combo.rhs, kZero) : kFalse));
      std::vector<std::string> tighter = same_lhs(combo.lhs, target.lhs);
      switch (target.sense) {
        case Sense::Eq:
          tighter.push_back(kFalse);
          break;
        case Sense::Geq:
          tighter.push_back(flags.geq ? app(">=", ceil_of(combo.rhs), lit(target.rhs)) : kFalse);
          break;
        case Sense::Leq:
          tighter.push_back(flags.leq ? app("<=", floor_of(combo.rhs), lit(target.rhs)) : kFalse);
          break;
      }
      return conj({smt_prv(k, data), conj(roundable), disj({conj(absurd), conj(tighter)})});
    }

    case Reason::Uns: {
      const Unsplit& u = *der.unsplit();
      return conj({index_less(u.i1, k), index_less(u.l1, k), index_less(u.i2, k), index_less(u.l2, k),
                   lit(!asets.index_violation[k - 1]),
                   smt_dominates(constraint_at(problem, certificate, u.i1), target),
                   smt_dominates(constraint_at(problem, certificate, u.i2), target),
                   smt_split(constraint_at(problem, certificate, u.l1), constraint_at(problem, certificate, u.l2),
                             problem.int_vars)});
    }

    case Reason::Sol: {
      const bool min_sense = problem.sense == ObjectiveSense::Min;
      const Terms objective = literal_terms(problem.objective);
      std::vector<std::string> options;
      for (const SolutionPoint& point : certificate.sol) {
        options.push_back(smt_dominates(objective, objective_value(problem, point.coords),
                                        flags_of(min_sense ? Sense::Leq : Sense::Geq), target));
      }
      return disj(options);
    }
  }
  return kFalse;
}

std::string smt_feasible(const Problem& problem, const SolutionPoint& point) {
  std::vector<std::string> parts;
  for (Index j : problem.int_vars) parts.push_back(app("is_int", lit(point.coords.get(j))));
  for (const Constraint& c : problem.constraints) {
    std::vector<std::string> activity;
    for (const auto& [j, a] : c.lhs) {
      if (point.coords.contains(j)) activity.push_back(app("*", lit(a), lit(point.coords.get(j))));
    }
    const char* op = c.sense == Sense::Eq ? "=" : (c.sense == Sense::Geq ? ">=" : "<=");
    parts.push_back(app(op, sum(activity), lit(c.rhs)));
  }
  return conj(parts);
}

std::string wrap(const std::string& comment, const std::string& formula) {
  return "; " + comment + "\n(set-logic ALL)\n(assert " + formula + ")\n(check-sat)\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

EmissionPlan make_plan(std::size_t m, std::size_t der_count, unsigned workers,
                       std::optional<std::size_t> block_size) {
  EmissionPlan plan;
  plan.block_size = block_size.value_or(der_count / std::max(1U, workers));
  plan.block_size = std::max<std::size_t>(1, plan.block_size);
  for (std::size_t start = 0; start < der_count; start += plan.block_size) {
    const std::size_t end = std::min(der_count, start + plan.block_size);
    plan.blocks.emplace_back(m + 1 + start, m + end);
  }
  return plan;
}

std::string kind_label(const EmittedFile& file) {
  switch (file.kind) {
    case FileKind::Sol:
      return "sol";
    case FileKind::Final:
      return "final";
    case FileKind::Block:
      break;
  }
  return "block[" + std::to_string(file.first) + ".." + std::to_string(file.last) + "]";
}

std::string smt_sol(const Problem& problem, const Certificate& certificate, EmitMode mode) {
  const RtpFlags flags = rtp_flags(problem, certificate);
  if (mode == EmitMode::Folded) return wrap("sol", lit(phi_sol(problem, certificate, flags)));
  if (!flags.has_range) return wrap("sol", lit(certificate.sol.empty()));

  std::vector<std::string> parts;
  for (const SolutionPoint& point : certificate.sol) parts.push_back(smt_feasible(problem, point));
  const bool need_witness = flags.min_sense ? flags.prove_upper : flags.prove_lower;
  std::vector<std::string> witnesses;
  for (const SolutionPoint& point : certificate.sol) {
    const std::string value = objective_value(problem, point.coords);
    witnesses.push_back(flags.min_sense ? app("<=", value, lit(flags.upper)) : app(">=", value, lit(flags.lower)));
  }
  parts.push_back(implies(need_witness, disj(witnesses)));
  return wrap("sol", conj(parts));
}

std::string smt_block(const Problem& problem, const Certificate& certificate, const AssumptionSets& asets,
                      Index first, Index last, EmitMode mode) {
  const std::string comment = "block " + std::to_string(first) + ".." + std::to_string(last);
  if (mode == EmitMode::Folded) {
    bool holds = true;
    for (Index k = first; k <= last && holds; ++k) holds = !phi_der_k(problem, certificate, asets, k);
    return wrap(comment, lit(holds));
  }
  std::string formula = "(and";
  for (Index k = first; k <= last; ++k) formula += "\n  " + smt_der_k(problem, certificate, asets, k);
  formula += ")";
  return wrap(comment, formula);
}

std::string smt_final(const Problem& problem, const Certificate& certificate, const AssumptionSets& asets,
                      EmitMode mode) {
  const RtpFlags flags = rtp_flags(problem, certificate);
  if (mode == EmitMode::Folded) {
    return wrap("final", lit(!check_final(problem, certificate, asets, flags)));
  }
  const bool need_absurd = !flags.has_range;
  const bool need_lower = flags.has_range && flags.min_sense && flags.prove_lower;
  const bool need_upper = flags.has_range && !flags.min_sense && flags.prove_upper;
  const std::size_t d = total_constraints(problem, certificate);
  if (d == 0) {
    if (need_absurd || need_lower || need_upper) {
      throw EmptyConstraintSystem("certificate has no constraints but its RTP requires a conclusion");
    }
    return wrap("final", kTrue);
  }
  const Constraint& last = constraint_at(problem, certificate, d);
  const std::string no_assumptions = lit(asets.of(d).empty());
  const Constraint absurdity{"", {}, Sense::Geq, Rational(1)};
  return wrap("final",
              conj({implies(need_absurd, conj({smt_dominates(last, absurdity), no_assumptions})),
                    implies(need_lower, conj({smt_dominates(last, objective_bound(problem, flags.lower, Sense::Geq)),
                                              no_assumptions})),
                    implies(need_upper, conj({smt_dominates(last, objective_bound(problem, flags.upper, Sense::Leq)),
                                              no_assumptions}))}));
}

std::vector<EmittedFile> emit(const Problem& problem, const Certificate& certificate,
                              const AssumptionSets& asets, const EmissionPlan& plan,
                              const std::filesystem::path& out_dir, EmitMode mode) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<EmittedFile> files;
  files.push_back({out_dir / "sol.smt2", FileKind::Sol, 0, 0});
  write_file(files.back().path, smt_sol(problem, certificate, mode));
  for (const auto& [first, last] : plan.blocks) {
    files.push_back({out_dir / ("der_" + std::to_string(first) + "_" + std::to_string(last) + ".smt2"),
                     FileKind::Block, first, last});
    write_file(files.back().path, smt_block(problem, certificate, asets, first, last, mode));
  }
  files.push_back({out_dir / "final.smt2", FileKind::Final, 0, 0});
  write_file(files.back().path, smt_final(problem, certificate, asets, mode));
  return files;
}

}  // namespace vipr
