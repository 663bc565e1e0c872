#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace configk3 {

using Integer = mpz_class;

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1, den > 0.
// Thin value wrapper around GMP's mpq_class so the rest of the code base never
// touches raw mpq_t state.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }
  Rational(const Integer& n, const Integer& d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const Integer& n) : q_(n) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Parses "p", "-p", "p/q" with arbitrary-precision parts.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational l, const Rational& r) { return l += r; }
  friend Rational operator-(Rational l, const Rational& r) { return l -= r; }
  friend Rational operator*(Rational l, const Rational& r) { return l *= r; }
  friend Rational operator/(Rational l, const Rational& r) { return l /= r; }

  friend bool operator==(const Rational& l, const Rational& r) { return l.q_ == r.q_; }
  friend bool operator!=(const Rational& l, const Rational& r) { return l.q_ != r.q_; }
  friend bool operator<(const Rational& l, const Rational& r) { return l.q_ < r.q_; }
  friend bool operator<=(const Rational& l, const Rational& r) { return l.q_ <= r.q_; }
  friend bool operator>(const Rational& l, const Rational& r) { return l.q_ > r.q_; }
  friend bool operator>=(const Rational& l, const Rational& r) { return l.q_ >= r.q_; }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  // Exact square root, if the value is a square of a rational.
  std::optional<Rational> sqrt_exact() const;

  std::string str() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

inline std::optional<Rational> Rational::sqrt_exact() const {
  if (sign() < 0) return std::nullopt;
  Integer n = numerator(), d = denominator();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace configk3
