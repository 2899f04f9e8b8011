#include "grouplab/rational.hpp"

#include <ostream>

namespace grouplab {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (sgn(d) == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(n) / mpq_class(d);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  std::string t = s;
  // mpq_class(str) accepts "p/q" but not surrounding spaces; trim them.
  const auto b = t.find_first_not_of(" \t");
  const auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("Rational::parse: blank string");
  t = t.substr(b, e - b + 1);
  mpq_class v;
  if (v.set_str(t, 10) != 0)
    throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
  if (sgn(mpq_class(v.get_den())) == 0)
    throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
  v.canonicalize();
  Rational r;
  r.v_ = v;
  return r;
}

std::string Rational::str() const { return v_.get_str(); }

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("Rational::to_long: not an integer: " + str());
  mpz_class n = num();
  if (!n.fits_slong_p()) throw std::domain_error("Rational::to_long: out of range: " + str());
  return n.get_si();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::invalid_argument("Rational::inverse of zero");
  Rational r;
  r.v_ = 1 / v_;
  return r;
}

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace grouplab
