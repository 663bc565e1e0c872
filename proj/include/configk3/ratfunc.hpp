#pragma once

#include <optional>
#include <string>
#include <vector>

#include "configk3/unipoly.hpp"

namespace configk3 {

// Element of Q(t): numerator/denominator coprime, denominator monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(UniPoly::constant(Rational(1))) {}
  RatFunc(const Rational& r)  // NOLINT(google-explicit-constructor)
      : num_(UniPoly::constant(r)), den_(UniPoly::constant(Rational(1))) {}
  explicit RatFunc(UniPoly n) : num_(std::move(n)), den_(UniPoly::constant(Rational(1))) {}
  RatFunc(UniPoly n, UniPoly d);

  static RatFunc t() { return RatFunc(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  Rational constant_value() const { return num_.coeff(0) / den_.coeff(0); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator-(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator*(const RatFunc& l, const RatFunc& r);
  friend RatFunc operator/(const RatFunc& l, const RatFunc& r);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inverse() const;
  RatFunc pow(int n) const;

  friend bool operator==(const RatFunc& l, const RatFunc& r) {
    return l.num_ == r.num_ && l.den_ == r.den_;
  }
  friend bool operator!=(const RatFunc& l, const RatFunc& r) { return !(l == r); }

  // Value at t = v; nullopt at a pole.
  std::optional<Rational> eval(const Rational& v) const;
  RatFunc derivative() const;
  // f(1/t), normalized.
  RatFunc at_inverse_t() const;
  // Substitute t -> g(t).
  RatFunc compose(const RatFunc& g) const;

  // Exact square root in Q(t) if one exists.
  std::optional<RatFunc> sqrt_exact() const;

  std::string str() const;
  static RatFunc parse(const std::string& text);

 private:
  void reduce();
  UniPoly num_, den_;
};

// A closed point of P^1 over Q: a monic irreducible polynomial in t, or the
// point at infinity.
struct Place {
  bool finite = true;
  UniPoly poly;  // monic irreducible; meaningful iff finite

  static Place at_infinity() { return Place{false, UniPoly()}; }
  static Place finite_place(UniPoly p) { return Place{true, std::move(p)}; }
  static Place rational_point(const Rational& r) {
    return finite_place(UniPoly({-r, Rational(1)}));
  }

  int degree() const { return finite ? poly.degree() : 1; }
  bool is_rational() const { return !finite || poly.degree() == 1; }
  // For degree-1 finite places: the rational t-value.
  Rational rational_value() const { return -poly.coeff(0); }

  int valuation(const UniPoly& f) const;
  int valuation(const RatFunc& f) const;

  friend bool operator==(const Place& l, const Place& r) {
    if (l.finite != r.finite) return false;
    return !l.finite || l.poly == r.poly;
  }

  // Deterministic order: finite places by (degree, term order), infinity last.
  static bool less(const Place& l, const Place& r);

  std::string str() const;
};

// Arithmetic in the residue field Q[t]/(pi).
class ResidueField {
 public:
  explicit ResidueField(UniPoly pi) : pi_(std::move(pi)) {}
  const UniPoly& modulus() const { return pi_; }

  UniPoly reduce(const UniPoly& f) const { return UniPoly::divrem(f, pi_).second; }
  UniPoly add(const UniPoly& x, const UniPoly& y) const { return reduce(x + y); }
  UniPoly sub(const UniPoly& x, const UniPoly& y) const { return reduce(x - y); }
  UniPoly mul(const UniPoly& x, const UniPoly& y) const { return reduce(x * y); }
  UniPoly inv(const UniPoly& x) const;
  UniPoly div(const UniPoly& x, const UniPoly& y) const { return mul(x, inv(y)); }
  bool is_zero(const UniPoly& x) const { return reduce(x).is_zero(); }
  // Image of f in the residue field; nullopt if the denominator vanishes.
  std::optional<UniPoly> reduce(const RatFunc& f) const;

 private:
  UniPoly pi_;
};

}  // namespace configk3
