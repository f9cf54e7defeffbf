#include "vipr/checker.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace vipr {

namespace {

std::string label(const Problem& problem, const Certificate& certificate, Index k) {
  const Constraint& c = constraint_at(problem, certificate, k);
  return "C_" + std::to_string(k) + " (" + c.name + ": " + describe(problem, c) + ")";
}

Failure at_der(Index k, std::string id, std::string message) {
  return {AtDer{k}, std::move(id), std::move(message)};
}

Failure at_attr(Index k, std::string id, std::string message) {
  return {AtAttr{k}, std::move(id), std::move(message)};
}

std::string describe_pseudo(const Problem& problem, const PseudoConstraint& p) {
  Constraint shown{"", p.lhs, Sense::Eq, p.rhs};
  std::string text = describe(problem, shown);
  // describe() renders '='; replace it with the combination's flags.
  const std::string relation = p.eq() ? " = " : (p.geq ? " >= " : (p.leq ? " <= " : " ?? "));
  if (const auto pos = text.rfind(" = "); pos != std::string::npos) text.replace(pos, 3, relation);
  if (!p.suitable()) text += " (multiplier signs are not suitable)";
  return text;
}

std::string no_solution_note(const Certificate& certificate) {
  return certificate.sol.empty() ? "; SOL is empty, no solution was checked"
                                 : "; " + std::to_string(certificate.sol.size()) + " solution(s) in SOL";
}

}  // namespace

RtpFlags rtp_flags(const Problem& problem, const Certificate& certificate) {
  RtpFlags flags;
  flags.min_sense = problem.sense == ObjectiveSense::Min;
  flags.has_range = !certificate.infeasible();
  if (flags.has_range) {
    const auto& range = std::get<RtpRange>(certificate.rtp);
    flags.prove_upper = range.upper.has_value();
    flags.prove_lower = range.lower.has_value();
    if (flags.prove_upper) flags.upper = *range.upper;
    if (flags.prove_lower) flags.lower = *range.lower;
  }
  return flags;
}

AssumptionSets compute_assumption_sets(const Problem& problem, const Certificate& certificate) {
  const std::size_t m = problem.m();
  const std::size_t d = total_constraints(problem, certificate);
  AssumptionSets out;
  out.sets.resize(d);
  out.index_violation.assign(d, false);

  for (Index k = m + 1; k <= d; ++k) {
    const DerivedConstraint& der = certificate.der[k - m - 1];
    std::vector<Index>& target = out.sets[k - 1];
    switch (der.reason) {
      case Reason::Asm:
        target = {k};
        out.assumptions.insert(k);
        break;
      case Reason::Lin:
      case Reason::Rnd: {
        std::set<Index> acc;
        for (const auto& [i, lambda] : *der.multipliers()) {
          if (i >= k) continue;
          acc.insert(out.sets[i - 1].begin(), out.sets[i - 1].end());
        }
        target.assign(acc.begin(), acc.end());
        break;
      }
      case Reason::Uns: {
        const Unsplit& u = *der.unsplit();
        if (u.i1 >= k || u.i2 >= k) {
          out.index_violation[k - 1] = true;
          break;
        }
        std::set<Index> acc;
        for (Index j : out.sets[u.i1 - 1]) {
          if (j != u.l1) acc.insert(j);
        }
        for (Index j : out.sets[u.i2 - 1]) {
          if (j != u.l2) acc.insert(j);
        }
        target.assign(acc.begin(), acc.end());
        break;
      }
      case Reason::Sol:
        break;
    }
  }
  return out;
}

bool phi_feas(const Problem& problem, const SolutionPoint& point) {
  for (Index j : problem.int_vars) {
    if (!point.coords.get(j).is_integer()) return false;
  }
  for (const Constraint& c : problem.constraints) {
    const Rational activity = c.lhs.dot(point.coords);
    const int s = sign_value(c.sense);
    if (s >= 0 && activity < c.rhs) return false;
    if (s <= 0 && activity > c.rhs) return false;
  }
  return true;
}

std::optional<Failure> check_sol(const Problem& problem, const Certificate& certificate,
                                 const RtpFlags& flags, bool collect_all,
                                 std::vector<Failure>* all) {
  std::optional<Failure> first;
  const auto report = [&](Failure f) {
    if (!first) first = f;
    if (all != nullptr) all->push_back(std::move(f));
    return !collect_all;
  };

  if (!flags.has_range) {
    if (!certificate.sol.empty()) {
      report({AtSol{certificate.sol.front().name}, "sol-nonempty",
              "RTP is infeasible but SOL lists " + std::to_string(certificate.sol.size()) +
                  " point(s)"});
    }
    return first;
  }

  for (const SolutionPoint& point : certificate.sol) {
    if (!phi_feas(problem, point)) {
      if (report({AtSol{point.name}, "sol-feasibility", "point " + point.name + " is not feasible"})) {
        return first;
      }
    }
  }

  const bool need_witness = flags.min_sense ? flags.prove_upper : flags.prove_lower;
  if (need_witness) {
    const Rational& bound = flags.min_sense ? flags.upper : flags.lower;
    const bool witnessed = std::any_of(certificate.sol.begin(), certificate.sol.end(), [&](const SolutionPoint& p) {
      const Rational value = problem.objective.dot(p.coords);
      return flags.min_sense ? value <= bound : value >= bound;
    });
    if (!witnessed) {
      report({AtSol{""}, "sol-bound",
              std::string("no point in SOL has objective value ") + (flags.min_sense ? "<= " : ">= ") +
                  bound.to_string() + no_solution_note(certificate)});
    }
  }
  return first;
}

bool phi_sol(const Problem& problem, const Certificate& certificate, const RtpFlags& flags) {
  return !check_sol(problem, certificate, flags).has_value();
}

bool phi_prv(Index k, const Multipliers& data) {
  return std::all_of(data.begin(), data.end(), [k](const auto& entry) { return entry.first < k; });
}

Constraint objective_bound(const Problem& problem, const Rational& value, Sense sense) {
  return Constraint{"OBJ", problem.objective, sense, value};
}

std::optional<Failure> phi_der_k(const Problem& problem, const Certificate& certificate,
                                 const AssumptionSets& asets, Index k) {
  const DerivedConstraint& der = derived_at(problem, certificate, k);
  const Constraint& target = der.constraint;
  const auto resolver = [&](Index i) -> const Constraint* {
    return i >= 1 && i <= total_constraints(problem, certificate) ? &constraint_at(problem, certificate, i)
                                                                   : nullptr;
  };

  switch (der.reason) {
    case Reason::Asm:
      return std::nullopt;

    case Reason::Lin:
    case Reason::Rnd: {
      const Multipliers& data = *der.multipliers();
      if (!phi_prv(k, data)) {
        return at_attr(k, "prv", label(problem, certificate, k) + " uses a multiplier on a constraint at or after itself");
      }
      const PseudoConstraint combo = linear_combination(data, resolver);
      if (der.reason == Reason::Lin) {
        if (!dominates(combo, target)) {
          return at_der(k, "lin-domination",
                        "combination " + describe_pseudo(problem, combo) + " does not dominate " +
                            label(problem, certificate, k));
        }
        return std::nullopt;
      }
      if (!roundable_flags(combo.lhs, combo.eq(), problem.int_vars)) {
        return at_der(k, "rnd-roundable", "combination " + describe_pseudo(problem, combo) + " is not roundable");
      }
      if (!rnd_dominance(combo.lhs, combo.rhs, combo.geq, combo.leq, target)) {
        return at_der(k, "rnd-domination",
                      "rounding of " + describe_pseudo(problem, combo) + " does not dominate " +
                          label(problem, certificate, k));
      }
      return std::nullopt;
    }

    case Reason::Uns: {
      const Unsplit& u = *der.unsplit();
      if (u.i1 >= k || u.l1 >= k || u.i2 >= k || u.l2 >= k || asets.index_violation[k - 1]) {
        return at_attr(k, "uns-index", label(problem, certificate, k) + " unsplits constraints at or after itself");
      }
      for (Index i : {u.i1, u.i2}) {
        if (!dominates(constraint_at(problem, certificate, i), target)) {
          return at_der(k, "uns-domination",
                        label(problem, certificate, i) + " does not dominate " + label(problem, certificate, k));
        }
      }
      if (!is_split_disjunction(constraint_at(problem, certificate, u.l1),
                                constraint_at(problem, certificate, u.l2), problem.int_vars)) {
        return at_der(k, "uns-disjunction",
                      label(problem, certificate, u.l1) + " and " + label(problem, certificate, u.l2) +
                          " do not form a split disjunction");
      }
      return std::nullopt;
    }

    case Reason::Sol: {
      const bool min_sense = problem.sense == ObjectiveSense::Min;
      for (const SolutionPoint& point : certificate.sol) {
        const Constraint bound =
            objective_bound(problem, problem.objective.dot(point.coords), min_sense ? Sense::Leq : Sense::Geq);
        if (dominates(bound, target)) return std::nullopt;
      }
      return at_der(k, "sol-domination",
                    std::string("no objective bound c.x ") + (min_sense ? "<=" : ">=") +
                        " c.sol over SOL dominates " + label(problem, certificate, k) + no_solution_note(certificate));
    }
  }
  return std::nullopt;
}

std::optional<Failure> check_final(const Problem& problem, const Certificate& certificate,
                                   const AssumptionSets& asets, const RtpFlags& flags) {
  const std::size_t d = total_constraints(problem, certificate);
  const bool need_absurd = !flags.has_range;
  const bool need_lower = flags.has_range && flags.min_sense && flags.prove_lower;
  const bool need_upper = flags.has_range && !flags.min_sense && flags.prove_upper;
  if (!need_absurd && !need_lower && !need_upper) return std::nullopt;
  if (d == 0) throw EmptyConstraintSystem("certificate has no constraints but its RTP requires a conclusion");

  const Constraint& last = constraint_at(problem, certificate, d);
  Constraint goal;
  std::string id;
  if (need_absurd) {
    goal = Constraint{"absurdity", {}, Sense::Geq, Rational(1)};
    id = "final-absurdity";
  } else if (need_lower) {
    goal = objective_bound(problem, flags.lower, Sense::Geq);
    id = "final-lower-bound";
  } else {
    goal = objective_bound(problem, flags.upper, Sense::Leq);
    id = "final-upper-bound";
  }
  if (!dominates(last, goal)) {
    return Failure{AtFinal{}, id,
                   label(problem, certificate, d) + " does not dominate " + describe(problem, goal) +
                       (need_absurd ? std::string() : no_solution_note(certificate))};
  }
  if (!asets.of(d).empty()) {
    std::string list;
    for (Index j : asets.of(d)) list += (list.empty() ? "" : ",") + std::to_string(j);
    return Failure{AtFinal{}, "final-assumptions",
                   label(problem, certificate, d) + " still depends on assumptions {" + list + "}"};
  }
  return std::nullopt;
}

std::optional<Failure> phi_der(const Problem& problem, const Certificate& certificate,
                               const AssumptionSets& asets, const RtpFlags& flags) {
  for (Index k = problem.m() + 1; k <= total_constraints(problem, certificate); ++k) {
    if (auto failure = phi_der_k(problem, certificate, asets, k)) return failure;
  }
  return check_final(problem, certificate, asets, flags);
}

CheckReport check_certificate_report(const Problem& problem, const Certificate& certificate,
                                     const CheckOptions& options) {
  CheckReport report;
  const RtpFlags flags = rtp_flags(problem, certificate);
  report.solutions_checked = flags.has_range ? certificate.sol.size() : 0;

  std::vector<Failure> sol_failures;
  if (auto f = check_sol(problem, certificate, flags, options.diagnose, &sol_failures); f && !options.diagnose) {
    report.failures.push_back(*f);
    report.verdict = Verdict::Invalid(std::move(*f));
    return report;
  }
  report.failures = std::move(sol_failures);

  const AssumptionSets asets = compute_assumption_sets(problem, certificate);
  const std::size_t m = problem.m();
  const std::size_t count = certificate.der.size();
  std::vector<std::optional<Failure>> results(count);

  // Once a failure at position p is known, later positions cannot be the
  // first failure and are skipped unless every failure is wanted.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_bad{std::numeric_limits<std::size_t>::max()};
  const auto worker = [&] {
    for (std::size_t pos = next.fetch_add(1); pos < count; pos = next.fetch_add(1)) {
      if (!options.diagnose && pos > first_bad.load(std::memory_order_relaxed)) continue;
      results[pos] = phi_der_k(problem, certificate, asets, m + 1 + pos);
      if (results[pos]) {
        std::size_t seen = first_bad.load();
        while (pos < seen && !first_bad.compare_exchange_weak(seen, pos)) {
        }
      }
    }
  };

  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (std::size_t pos = 0; pos < count; ++pos) {
    if (!results[pos]) continue;
    report.failures.push_back(*results[pos]);
    if (!options.diagnose) break;
  }
  report.derivations_checked =
      report.failures.empty() || options.diagnose ? count : first_bad.load() + 1;

  if (report.failures.empty() || options.diagnose) {
    if (auto f = check_final(problem, certificate, asets, flags)) report.failures.push_back(std::move(*f));
  }
  if (!report.failures.empty()) report.verdict = Verdict::Invalid(report.failures.front());
  return report;
}

Verdict check_certificate(const Problem& problem, const Certificate& certificate,
                          const CheckOptions& options) {
  return check_certificate_report(problem, certificate, options).verdict;
}

}  // namespace vipr
