#include "vipr/rational.hpp"

#include <cctype>
#include <ostream>

namespace vipr {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

// Splits an optional leading sign off `s`; returns true when negative.
bool strip_sign(std::string_view& s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    const bool negative = s.front() == '-';
    s.remove_prefix(1);
    return negative;
  }
  return false;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw ZeroDenominatorError("zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)),
                     mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view token) {
  const std::string text(token);
  if (token.find('.') != std::string_view::npos) {
    throw DecimalNotationError("decimal notation is not accepted: '" + text + "'");
  }
  std::string_view num = token;
  std::string_view den;
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    num = token.substr(0, slash);
    den = token.substr(slash + 1);
    if (den.find('/') != std::string_view::npos) {
      throw MalformedNumberError("malformed number: '" + text + "'");
    }
  }

  bool negative = strip_sign(num);
  if (!all_digits(num)) throw MalformedNumberError("malformed number: '" + text + "'");

  mpz_class numerator(std::string(num), 10);
  mpz_class denominator(1);
  if (token.find('/') != std::string_view::npos) {
    negative = strip_sign(den) != negative;
    if (!all_digits(den)) throw MalformedNumberError("malformed number: '" + text + "'");
    denominator = mpz_class(std::string(den), 10);
    if (denominator == 0) throw ZeroDenominatorError("zero denominator: '" + text + "'");
  }
  if (negative) numerator = -numerator;

  mpq_class q(numerator, denominator);
  q.canonicalize();
  return Rational(std::move(q));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(r));
}

Rational Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(r));
}

std::string Rational::to_string() const { return value_.get_str(10); }

std::string Rational::numerator_string() const { return value_.get_num().get_str(10); }

std::string Rational::denominator_string() const { return value_.get_den().get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational operator/(const Rational& lhs, const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  return Rational(mpq_class(lhs.value_ / rhs.value_));
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

int compare(const Rational& lhs, const Rational& rhs) {
  const int c = cmp(lhs.raw(), rhs.raw());
  return (c > 0) - (c < 0);
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

}  // namespace vipr
