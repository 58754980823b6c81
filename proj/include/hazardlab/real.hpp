#ifndef HAZARDLAB_REAL_HPP
#define HAZARDLAB_REAL_HPP

#include <compare>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace hazardlab {

// A real number that is either an exact rational (arbitrary precision) or a
// binary64 approximation. Arithmetic stays exact while every operand is
// exact; a single approximate operand makes the result approximate.
class Real {
 public:
  Real() : value_(mpq_class(0)) {}

  template <std::integral I>
  Real(I v) : value_(mpq_class(static_cast<long>(v))) {}  // NOLINT: implicit by design of the numeric tower

  explicit Real(mpq_class q) : value_(std::move(q)) {
    std::get<mpq_class>(value_).canonicalize();
  }

  static Real ratio(long num, long den);
  static Real ratio(const mpz_class& num, const mpz_class& den);
  static Real approx(double d);
  static Real infinity();

  // Accepts "p", "p/q", or a decimal literal. Integers and p/q are exact,
  // anything with a '.' or exponent is parsed as binary64.
  static Real parse(std::string_view text);

  bool exact() const noexcept { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const;
  double to_double() const;
  bool is_infinite() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  std::string to_string() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  std::variant<mpq_class, double> value_;
};

Real abs(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real log(const Real& x);
Real exp(const Real& x);
// Exact when the base is exact and the exponent is an exact integer.
Real pow(const Real& base, const Real& exponent);

}  // namespace hazardlab

#endif  // HAZARDLAB_REAL_HPP
