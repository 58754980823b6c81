#include "hazardlab/real.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hazardlab/error.hpp"

namespace hazardlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::horizon_exceeded: return "HorizonExceeded";
    case ErrorCode::generator_stalled: return "GeneratorStalled";
    case ErrorCode::search_exhausted: return "SearchExhausted";
    case ErrorCode::no_stagnation_segment: return "NoStagnationSegment";
    case ErrorCode::witness_exhausted: return "WitnessExhausted";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::bad_arity: return "BadArity";
    case ErrorCode::bad_params: return "BadParams";
    case ErrorCode::degenerate: return "Degenerate";
    case ErrorCode::invalid_hazard: return "InvalidHazard";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

Real Real::ratio(long num, long den) {
  if (den == 0) throw Error(ErrorCode::bad_params, "zero denominator");
  return Real(mpq_class(num, den));
}

Real Real::ratio(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::bad_params, "zero denominator");
  return Real(mpq_class(num, den));
}

Real Real::approx(double d) {
  Real r;
  r.value_ = d;
  return r;
}

Real Real::infinity() { return approx(std::numeric_limits<double>::infinity()); }

Real Real::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::parse_error, "empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      return ratio(num, den);
    }
    if (s.find_first_of("eEnN") != std::string::npos) {
      std::size_t used = 0;
      double d = std::stod(s, &used);
      if (used != s.size()) throw Error(ErrorCode::parse_error, "trailing characters in '" + s + "'");
      return approx(d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      // Finite decimal literals are exact: 0.25 -> 1/4.
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits == "-" || digits == "+" || digits.empty()) {
        throw Error(ErrorCode::parse_error, "malformed number '" + s + "'");
      }
      if (digits.front() == '+') digits.erase(0, 1);
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      return ratio(num, den);
    }
    if (s.front() == '+') s.erase(0, 1);
    return Real(mpq_class(mpz_class(s, 10)));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::parse_error, "malformed number '" + s + "'");
  }
}

const mpq_class& Real::rational() const {
  if (!exact()) throw Error(ErrorCode::bad_params, "value is not exact");
  return std::get<mpq_class>(value_);
}

double Real::to_double() const {
  if (exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

bool Real::is_infinite() const { return !exact() && std::isinf(std::get<double>(value_)); }

int Real::sign() const {
  if (exact()) return sgn(std::get<mpq_class>(value_));
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::string Real::to_string() const {
  if (exact()) return std::get<mpq_class>(value_).get_str();
  return fmt::format("{}", std::get<double>(value_));
}

namespace {

template <class ExactOp, class ApproxOp>
void combine(std::variant<mpq_class, double>& lhs, const Real& rhs, ExactOp exact_op,
             ApproxOp approx_op) {
  if (std::holds_alternative<mpq_class>(lhs) && rhs.exact()) {
    exact_op(std::get<mpq_class>(lhs), rhs.rational());
    return;
  }
  double a = std::holds_alternative<mpq_class>(lhs) ? std::get<mpq_class>(lhs).get_d()
                                                    : std::get<double>(lhs);
  lhs = approx_op(a, rhs.to_double());
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a += b; },
          [](double a, double b) { return a + b; });
  return *this;
}

Real& Real::operator-=(const Real& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a -= b; },
          [](double a, double b) { return a - b; });
  return *this;
}

Real& Real::operator*=(const Real& o) {
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a *= b; },
          [](double a, double b) { return a * b; });
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.exact() && o.is_zero() && exact()) throw Error(ErrorCode::bad_params, "division by zero");
  combine(value_, o, [](mpq_class& a, const mpq_class& b) { a /= b; },
          [](double a, double b) { return a / b; });
  return *this;
}

Real operator-(const Real& a) {
  if (a.exact()) return Real(mpq_class(-a.rational()));
  return Real::approx(-a.to_double());
}

bool operator==(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) {
    int c = cmp(a.rational(), b.rational());
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return a.to_double() <=> b.to_double();
}

Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real log(const Real& x) {
  if (x.exact() && x.rational() == 1) return Real(0);
  return Real::approx(std::log(x.to_double()));
}

Real exp(const Real& x) {
  if (x.exact() && x.is_zero()) return Real(1);
  return Real::approx(std::exp(x.to_double()));
}

Real pow(const Real& base, const Real& exponent) {
  if (base.exact() && exponent.exact() && exponent.rational().get_den() == 1 &&
      abs(exponent) <= Real(4096)) {
    long e = exponent.rational().get_num().get_si();
    const mpq_class& b = base.rational();
    if (e < 0 && b == 0) throw Error(ErrorCode::bad_params, "zero to a negative power");
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), ue);
    return e < 0 ? Real::ratio(den, num) : Real::ratio(num, den);
  }
  return Real::approx(std::pow(base.to_double(), exponent.to_double()));
}

}  // namespace hazardlab
