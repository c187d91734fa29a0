#include "gcf/rational.hpp"

#include <cmath>
#include <cstdio>

#include "gcf/error.hpp"

namespace gcf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ShiftDirectionInvalid: return "ShiftDirectionInvalid";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::InvalidStart: return "InvalidStart";
    case ErrorCode::StateNotReduced: return "StateNotReduced";
    case ErrorCode::NonAffineMinor: return "NonAffineMinor";
    case ErrorCode::NonPositiveT: return "NonPositiveT";
    case ErrorCode::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InsufficientTrace: return "InsufficientTrace";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorCode::ParseError,
              "not an exact rational literal: '" + std::string(text) + "'");
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) bad_literal(text);
  Integer value(std::string(body), 10);
  return negative ? Integer(-value) : value;
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) bad_literal(text);
    Integer den(std::string(den_text), 10);
    if (den == 0) bad_literal(text);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) bad_literal(text);
  if (!whole.empty() && !all_digits(whole)) bad_literal(text);
  if (dot != std::string_view::npos && !all_digits(frac)) bad_literal(text);

  std::string digits = std::string(whole) + std::string(frac);
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational r(negative ? Integer(-num) : num, den);
  r.canonicalize();
  return r;
}

Rational canonical(Rational x) {
  x.canonicalize();
  return x;
}

std::string to_string(const Rational& x) {
  const Rational c = canonical(x);
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer round_half_toward_zero(const Rational& x) {
  Integer fl = floor(x);
  Rational frac = x - fl;
  const Rational half(1, 2);
  if (frac < half) return fl;
  if (frac > half) return fl + 1;
  return x > 0 ? fl : Integer(fl + 1);
}

bool is_integer(const Rational& x) { return canonical(x).get_den() == 1; }

Integer pow(const Integer& x, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

Rational pow(const Rational& x, unsigned long e) {
  Rational r(pow(x.get_num(), e), pow(x.get_den(), e));
  return r;  // already canonical: gcd is preserved by powers
}

std::size_t bit_size(const Rational& x) {
  std::size_t a = mpz_sizeinbase(x.get_num_mpz_t(), 2);
  std::size_t b = mpz_sizeinbase(x.get_den_mpz_t(), 2);
  return a > b ? a : b;
}

double log2_abs(const Integer& x) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

double log2_abs(const Rational& x) {
  return log2_abs(x.get_num()) - log2_abs(x.get_den());
}

std::string to_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", x);
  return buf;
}

}  // namespace gcf
