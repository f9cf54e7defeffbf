#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "vipr/model.hpp"

namespace vipr::oracle {

/// Inclusive per-variable bounds; entry j-1 belongs to variable j.
struct BoxBounds {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  /// The same [lo, hi] for each of n variables.
  static BoxBounds uniform(std::size_t n, const Rational& lo, const Rational& hi);
};

struct Infeasible {
  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

struct Optimal {
  Rational value;
  std::vector<Rational> witness;  ///< entry j-1 is variable j

  friend bool operator==(const Optimal&, const Optimal&) = default;
};

using Answer = std::variant<Infeasible, Optimal>;

class UnsupportedContinuousVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnumerationTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxPoints = 1'000'000;

/// Enumerates every integer point of the box and returns the best feasible
/// one for the problem's sense. Ties keep the lexicographically first point.
Answer brute_force(const Problem& problem, const BoxBounds& box);

}  // namespace vipr::oracle
