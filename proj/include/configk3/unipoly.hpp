#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "configk3/multipoly.hpp"
#include "configk3/rational.hpp"

namespace configk3 {

// Dense univariate polynomial over Q. The variable is anonymous here;
// conversions to MultiPoly pick the symbol.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(const Rational& r) { return UniPoly({r}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  // c0 + c1 x + ... given as initializer-style vector of longs.
  static UniPoly of(std::vector<long> coeffs);

  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero poly
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& lc() const;
  Rational coeff(int i) const {
    return (i >= 0 && i < int(c_.size())) ? c_[i] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& l, const UniPoly& r);
  friend UniPoly operator-(const UniPoly& l, const UniPoly& r);
  friend UniPoly operator*(const UniPoly& l, const UniPoly& r);
  UniPoly scaled(const Rational& r) const;
  UniPoly shifted(int k) const;  // * x^k
  UniPoly pow(unsigned n) const;

  friend bool operator==(const UniPoly& l, const UniPoly& r) {
    return l.c_ == r.c_;
  }
  friend bool operator!=(const UniPoly& l, const UniPoly& r) {
    return !(l == r);
  }

  Rational eval(const Rational& v) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  // x -> x + s
  UniPoly translated(const Rational& s) const;
  // Reversal x -> 1/x times x^degree.
  UniPoly reversed() const;
  // Substitute x -> r*x.
  UniPoly dilated(const Rational& r) const;
  UniPoly compose(const UniPoly& inner) const;

  static std::pair<UniPoly, UniPoly> divrem(const UniPoly& p, const UniPoly& d);
  static UniPoly gcd(const UniPoly& p, const UniPoly& q);  // monic
  std::optional<UniPoly> divided_by(const UniPoly& d) const;

  static Rational resultant(const UniPoly& f, const UniPoly& g);
  Rational discriminant() const;

  MultiPoly to_multi(Var v) const { return MultiPoly::from_dense(v, c_); }
  static UniPoly from_multi(const MultiPoly& p, Var v) {
    return UniPoly(p.dense_coeffs(v));
  }

  std::string str(Var v = Var::t) const { return to_multi(v).str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// ----- factorization over Q --------------------------------------------------

struct UniFactor {
  UniPoly factor;  // monic, irreducible over Q
  int multiplicity;
};

struct UniFactorization {
  Rational unit;  // input = unit * prod factor^multiplicity
  std::vector<UniFactor> factors;
};

// Monic squarefree decomposition p = unit * prod part_i ^ i (Yun).
struct SquarefreePart {
  UniPoly part;  // monic
  int multiplicity;
};
std::vector<SquarefreePart> squarefree_decomposition(const UniPoly& p,
                                                     Rational* unit);

// Complete factorization into monic irreducibles over Q.
// Squarefree decomposition, then lifting a mod-p factorization back to Z.
UniFactorization factor_univariate(const UniPoly& p);

bool is_irreducible(const UniPoly& p);

// All rational roots, each verified exactly. Roots are found modulo a prime,
// Newton-lifted p-adically past the coefficient bound and reconstructed, so
// large polynomials (division polynomials and the like) stay cheap.
std::vector<Rational> rational_roots(const UniPoly& p);

// ----- real root machinery ----------------------------------------------------

// Isolating interval for one real root: lo <= root <= hi with rational
// endpoints; exact iff lo == hi.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
};

// Number of distinct real roots in (a, b]; unbounded ends via the flags.
int sturm_root_count(const UniPoly& f, const Rational& a, const Rational& b,
                     bool a_is_neg_inf = false, bool b_is_pos_inf = false);

// Distinct real roots of f, sorted increasingly, as disjoint isolating
// intervals. Rational roots come out exact.
std::vector<RootInterval> isolate_real_roots(const UniPoly& f);

// Shrinks the interval by bisection until hi - lo <= width (no-op on exact).
RootInterval refine_root(const UniPoly& f, RootInterval iv, const Rational& width);

}  // namespace configk3
