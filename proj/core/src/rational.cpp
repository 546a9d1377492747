#include "gwloc/rational.hpp"

#include <cctype>
#include <ostream>

#include "gwloc/error.hpp"

namespace gwloc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::UnsupportedGenus: return "unsupported-genus";
    case ErrorKind::MissingHodgeTable: return "missing-hodge-table";
    case ErrorKind::GraphCapExceeded: return "graph-cap-exceeded";
    case ErrorKind::NonGenericWeights: return "non-generic-weights";
    case ErrorKind::SingularWeight: return "singular-weight";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  q_.get_num() = num;
  q_.get_den() = den;
  q_.canonicalize();
}

namespace {

bool valid_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  const std::string_view num = slash == std::string_view::npos ? text : trim(text.substr(0, slash));
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                               : trim(text.substr(slash + 1));
  if (!valid_integer_literal(num) || !valid_integer_literal(den) || den.front() == '-') {
    fail(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  return Rational(parse_integer(num), parse_integer(den));
}

Rational Rational::abs() const {
  Rational out;
  out.q_ = ::abs(q_);
  return out;
}

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  Rational out;
  mpq_inv(out.q_.get_mpq_t(), q_.get_mpq_t());
  return out;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Rational out;
  mpz_pow_ui(out.q_.get_num_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(out.q_.get_den_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return out;
}

Rational& Rational::operator+=(const Rational& other) {
  q_ += other.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  q_ -= other.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  q_ *= other.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  q_ /= other.q_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational out;
  out.q_ = -a.q_;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.str();
}

}  // namespace gwloc
