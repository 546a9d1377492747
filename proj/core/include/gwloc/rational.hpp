#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gwloc {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Immutable values; every operation returns a fresh object.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)

  Rational(long num, long den);
  explicit Rational(const BigInt& value) : q_(value) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "p", "-p", "p/q"; whitespace around the value is ignored.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(long exponent) const;

  /// "p/q", or just "p" when the denominator is one.
  std::string str() const { return q_.get_str(); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace gwloc
