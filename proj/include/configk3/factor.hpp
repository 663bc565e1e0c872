#pragma once

#include <vector>

#include "configk3/multipoly.hpp"
#include "configk3/unipoly.hpp"

namespace configk3 {

struct MultiFactor {
  MultiPoly factor;  // normalized (integer-primitive, positive leading coeff)
  int multiplicity;
};

struct MultiFactorization {
  Rational unit;  // input = unit * prod factor^multiplicity
  std::vector<MultiFactor> factors;

  MultiPoly expand() const {
    MultiPoly p = MultiPoly::constant(unit);
    for (const auto& f : factors) p *= f.factor.pow(unsigned(f.multiplicity));
    return p;
  }
};

// Bivariate polynomial in (x, y) over Q into irreducibles.
// Univariate factorization at a good fiber, then (y-y0)-adic Hensel lifting
// and subset recombination, certified by exact trial division.
MultiFactorization factor_bivariate(const MultiPoly& f, Var x, Var y);

// Homogeneous binary form in (x, y).
MultiFactorization factor_binary_form(const MultiPoly& f, Var x, Var y);

// Homogeneous ternary form in (a, b, c) of any degree reachable here (<= 3
// after content removal in practice).
MultiFactorization factor_ternary_form(const MultiPoly& f);

// Bihomogeneous polynomial in ([u:v],[a:b:c]) of bidegree up to (2,3):
// numeric unit, monomial content, contents over Q[u,v] and Q[a,b,c], then
// linear-in-(a,b,c) factors found by specialization/interpolation and
// certified by exact division. Throws if neither a certified factor nor an
// irreducible specialization can be exhibited.
MultiFactorization factor_bihomogeneous(const MultiPoly& f);

}  // namespace configk3
