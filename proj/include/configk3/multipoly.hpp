#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "configk3/rational.hpp"

namespace configk3 {

// The eight symbols the library ever manipulates, in the fixed global order
// u > v > a > b > c > t > x > y used by the graded-lex term order.
enum class Var : int { u = 0, v = 1, a = 2, b = 3, c = 4, t = 5, x = 6, y = 7 };

inline constexpr int kNumVars = 8;
inline constexpr const char* kVarNames[kNumVars] = {"u", "v", "a", "b",
                                                    "c", "t", "x", "y"};

std::optional<Var> var_from_name(const std::string& name);

using Exponents = std::array<uint16_t, kNumVars>;

inline int total_degree(const Exponents& e) {
  int s = 0;
  for (auto d : e) s += d;
  return s;
}

// Graded lexicographic, descending: map.begin() is the leading term.
struct TermOrderDesc {
  bool operator()(const Exponents& l, const Exponents& r) const {
    int dl = total_degree(l), dr = total_degree(r);
    if (dl != dr) return dl > dr;
    for (int i = 0; i < kNumVars; ++i)
      if (l[i] != r[i]) return l[i] > r[i];
    return false;
  }
};

// Exact multivariate polynomial over Q in (a subset of) the eight symbols.
// Invariants: no zero coefficients stored; terms kept in graded-lex order.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, TermOrderDesc>;

  MultiPoly() = default;

  static MultiPoly zero() { return MultiPoly(); }
  static MultiPoly constant(const Rational& c);
  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Exponents& e, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The constant value; only valid when is_constant().
  Rational constant_value() const;

  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  int degree(Var v) const;
  int total_deg() const;
  // Bitmask of variables with positive degree.
  uint32_t vars_present() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly l, const MultiPoly& r) { return l += r; }
  friend MultiPoly operator-(MultiPoly l, const MultiPoly& r) { return l -= r; }
  friend MultiPoly operator*(const MultiPoly& l, const MultiPoly& r);

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned n) const;

  friend bool operator==(const MultiPoly& l, const MultiPoly& r) {
    return l.terms_ == r.terms_;
  }
  friend bool operator!=(const MultiPoly& l, const MultiPoly& r) {
    return !(l == r);
  }

  // Deterministic total order on polynomials (term-by-term grlex, then
  // coefficients); used for canonical sorting of factor lists and reports.
  static int compare(const MultiPoly& l, const MultiPoly& r);

  MultiPoly derivative(Var v) const;

  // Substitutes a polynomial for one variable.
  MultiPoly substitute(Var v, const MultiPoly& value) const;
  // Substitutes rational values for a subset of variables.
  MultiPoly evaluate_partial(const std::vector<std::pair<Var, Rational>>& vals) const;
  // Full evaluation; every present variable must receive a value.
  Rational evaluate(const std::vector<std::pair<Var, Rational>>& vals) const;

  // The positive rational r with this/(sign(lc)*r) integer-coefficient and
  // primitive; zero polynomial yields 1.
  Rational content() const;
  // sign(lc) * content(): dividing by it gives the canonical normal form.
  Rational unit() const;
  // Integer-primitive form with positive leading coefficient.
  MultiPoly normalized() const;
  // True when the two polynomials agree up to a nonzero rational factor.
  bool proportional_to(const MultiPoly& o) const;

  // Exact division; nullopt when the divisor does not divide exactly.
  std::optional<MultiPoly> divided_by(const MultiPoly& d) const;
  bool divisible_by(const MultiPoly& d) const { return divided_by(d).has_value(); }

  // Multivariate GCD via primitive PRS recursion; result normalized.
  static MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

  // Degrees w.r.t. the variable groups ({u,v}, {a,b,c}); errors with the
  // offending terms when the polynomial is not bihomogeneous.
  std::pair<int, int> bidegree_uv_abc() const;
  bool is_bihomogeneous_uv_abc() const;

  // Dense univariate view; requires the polynomial to involve only `v`.
  std::vector<Rational> dense_coeffs(Var v) const;
  static MultiPoly from_dense(Var v, const std::vector<Rational>& coeffs);

  std::string str() const;
  static MultiPoly parse(const std::string& text);

 private:
  void add_term(const Exponents& e, const Rational& c);
  TermMap terms_;

  friend class MultiPolyParser;
};

inline MultiPoly operator*(const MultiPoly& p, const Rational& c) {
  return p.scaled(c);
}

// Univariate division with remainder in variable v: p = q*d + r, deg r < deg d.
// Both polynomials may have coefficients involving no other variables.
struct DivRemResult {
  MultiPoly quotient;
  MultiPoly remainder;
};
DivRemResult divrem_univariate(const MultiPoly& p, const MultiPoly& d, Var v);

}  // namespace configk3
