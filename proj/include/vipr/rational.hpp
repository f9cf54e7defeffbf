#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vipr {

/// Base class for every failure raised by Rational::parse.
class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Token uses decimal notation (contains a '.'); certificates must use p/q.
class DecimalNotationError : public RationalParseError {
 public:
  using RationalParseError::RationalParseError;
};

class MalformedNumberError : public RationalParseError {
 public:
  using RationalParseError::RationalParseError;
};

class ZeroDenominatorError : public RationalParseError {
 public:
  using RationalParseError::RationalParseError;
};

/// Exact arbitrary-precision rational number.
///
/// Every value is kept in canonical form: the denominator is positive and
/// coprime to the numerator, so equality is a structural comparison.
/// Values are immutable once built and may be shared across threads.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(mpq_class value);

  /// Parses `[+-]digits` or `[+-]digits/[+-]digits`.
  static Rational parse(std::string_view token);

  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const;

  [[nodiscard]] Rational floor() const;
  [[nodiscard]] Rational ceil() const;

  /// Canonical text: `p` for integers, `p/q` otherwise.
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::string numerator_string() const;
  [[nodiscard]] std::string denominator_string() const;

  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(const Rational& lhs, const Rational& rhs);
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Three-way comparison returning -1, 0 or 1.
int compare(const Rational& lhs, const Rational& rhs);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace vipr
