#include "vipr/oracle.hpp"

namespace vipr::oracle {

namespace {

bool satisfies(const Constraint& c, const std::vector<Rational>& x) {
  Rational activity;
  for (const auto& [j, a] : c.lhs) activity += a * x[j - 1];
  switch (c.sense) {
    case Sense::Eq:
      return activity == c.rhs;
    case Sense::Geq:
      return activity >= c.rhs;
    case Sense::Leq:
      return activity <= c.rhs;
  }
  return false;
}

}  // namespace

BoxBounds BoxBounds::uniform(std::size_t n, const Rational& lo, const Rational& hi) {
  return {std::vector<Rational>(n, lo), std::vector<Rational>(n, hi)};
}

Answer brute_force(const Problem& problem, const BoxBounds& box) {
  const std::size_t n = problem.n();
  if (box.lower.size() != n || box.upper.size() != n) {
    throw std::invalid_argument("box has " + std::to_string(box.lower.size()) + " bounds for " +
                                std::to_string(n) + " variables");
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (!problem.is_integer_var(j)) {
      throw UnsupportedContinuousVariable("variable " + problem.var_names[j - 1] + " is continuous");
    }
  }

  std::vector<Rational> lo(n);
  std::vector<Rational> hi(n);
  Rational points(1);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = box.lower[j].ceil();
    hi[j] = box.upper[j].floor();
    if (hi[j] < lo[j]) return Infeasible{};
    points *= hi[j] - lo[j] + Rational(1);
    if (points > Rational(static_cast<std::int64_t>(kMaxPoints))) {
      throw EnumerationTooLarge("box has more than " + std::to_string(kMaxPoints) + " integer points");
    }
  }

  std::optional<Optimal> best;
  std::vector<Rational> x = lo;
  const bool minimize = problem.sense == ObjectiveSense::Min;
  while (true) {
    bool feasible = true;
    for (const Constraint& c : problem.constraints) {
      if (!satisfies(c, x)) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      Rational value;
      for (const auto& [j, c] : problem.objective) value += c * x[j - 1];
      if (!best || (minimize ? value < best->value : value > best->value)) best = Optimal{value, x};
    }
    // Odometer step, last variable fastest.
    std::size_t j = n;
    while (j > 0 && x[j - 1] == hi[j - 1]) {
      x[j - 1] = lo[j - 1];
      --j;
    }
    if (j == 0) break;
    x[j - 1] += Rational(1);
  }
  if (!best) return Infeasible{};
  return *best;
}

}  // namespace vipr::oracle
