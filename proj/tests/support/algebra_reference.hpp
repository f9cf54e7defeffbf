#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <random>
#include <set>
#include <vector>

#include "vipr/algebra.hpp"

namespace vipr::testing {

using Q = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kVars = 3;

// Dense copies over boost rationals, so that the reference definitions below
// share no arithmetic with the code under test.
struct Dense {
  std::vector<Q> a = std::vector<Q>(kVars + 1);
  int s = 0;
  Q b;
};

inline Q to_q(const Rational& r) { return Q(r.to_string()); }

inline Dense dense(const Constraint& c) {
  Dense d;
  for (const auto& [j, v] : c.lhs) d.a[j] = to_q(v);
  d.s = sign_value(c.sense);
  d.b = to_q(c.rhs);
  return d;
}

inline bool zero_lhs(const Dense& c) {
  for (const Q& v : c.a) {
    if (v != 0) return false;
  }
  return true;
}

inline bool is_integral(const Q& q) { return boost::multiprecision::denominator(q) == 1; }

inline Q floor_q(const Q& q) {
  const auto n = boost::multiprecision::numerator(q);
  const auto d = boost::multiprecision::denominator(q);
  boost::multiprecision::cpp_int f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return Q(f);
}

inline Q ceil_q(const Q& q) { return -floor_q(-q); }

// Absurdity: 0 >= beta with beta > 0, or 0 <= beta with beta < 0.
inline bool ref_absurd(const Dense& c) {
  return zero_lhs(c) && ((c.s == 1 && c.b > 0) || (c.s == -1 && c.b < 0));
}

// Domination by the case list of the definition.
inline bool ref_dominates(const Dense& c, const Dense& t) {
  if (ref_absurd(c)) return true;
  if (c.a != t.a) return false;
  if (t.s == 1) return (c.s == 1 || c.s == 0) && c.b >= t.b;
  if (t.s == -1) return (c.s == -1 || c.s == 0) && c.b <= t.b;
  return c.s == 0 && c.b == t.b;
}

inline bool ref_roundable(const Dense& c, const std::set<Index>& ints) {
  if (c.s == 0) return false;
  for (Index j = 1; j <= kVars; ++j) {
    if (ints.count(j) != 0 ? !is_integral(c.a[j]) : c.a[j] != 0) return false;
  }
  return true;
}

inline Dense ref_round(Dense c) {
  c.b = c.s == 1 ? ceil_q(c.b) : floor_q(c.b);
  return c;
}

inline bool ref_split(const Dense& x, const Dense& y, const std::set<Index>& ints) {
  const Dense* le = x.s == -1 ? &x : (y.s == -1 ? &y : nullptr);
  const Dense* ge = x.s == 1 ? &x : (y.s == 1 ? &y : nullptr);
  if (le == nullptr || ge == nullptr || le == ge) return false;
  if (le->a != ge->a) return false;
  for (Index j = 1; j <= kVars; ++j) {
    if (ints.count(j) != 0 ? !is_integral(le->a[j]) : le->a[j] != 0) return false;
  }
  return is_integral(le->b) && ge->b == le->b + 1;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational value(int range) { return {uniform(-range, range), coin(0.25) ? 2 : 1}; }

  Sense sense() { return std::array{Sense::Eq, Sense::Geq, Sense::Leq}[static_cast<std::size_t>(uniform(0, 2))]; }

  Constraint constraint() {
    Constraint c{"c", {}, sense(), value(3)};
    for (Index j = 1; j <= kVars; ++j) {
      if (coin(0.6)) c.lhs.set(j, value(2));
    }
    return c;
  }

  // A target that often shares the source's left hand side.
  Constraint related(const Constraint& c) {
    Constraint t = coin(0.7) ? c : constraint();
    if (coin(0.5)) t.sense = sense();
    if (coin(0.6)) t.rhs = value(3);
    return t;
  }

  std::set<Index> ints() {
    std::set<Index> out;
    for (Index j = 1; j <= kVars; ++j) {
      if (coin(0.7)) out.insert(j);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vipr::testing
