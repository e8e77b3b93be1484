#include "atcurv/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "atcurv/errors.hpp"

namespace atcurv {

Rational::Rational(long num, long den) {
  if (den == 0) throw InvalidArgument("Rational: zero denominator");
  q_ = mpq_class(num, 1);
  q_ /= mpq_class(den, 1);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("Rational::from_double: non-finite value");
  Rational r;
  mpq_set_d(r.q_.get_mpq_t(), v);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidArgument("Rational::parse: empty string");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Decimal literal: digits after the point become a power-of-ten denominator.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw InvalidArgument("Rational::parse: bad decimal '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    return Rational(mpq_class(num, den));
  }

  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("Rational::parse: bad rational '" + s + "'");
  if (q.get_den() == 0) throw InvalidArgument("Rational::parse: zero denominator");
  return Rational(q);
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::short_str() const { return q_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidArgument("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace atcurv
