#include <doctest.h>

#include <random>

#include "configk3/multipoly.hpp"
#include "configk3/ratfunc.hpp"
#include "configk3/unipoly.hpp"

using namespace configk3;

namespace {

MultiPoly P(const std::string& s) { return MultiPoly::parse(s); }

UniPoly random_unipoly(std::mt19937_64& rng, int maxdeg, long coeff_range) {
  int deg = 1 + int(rng() % unsigned(maxdeg));
  std::vector<Rational> c(size_t(deg) + 1);
  for (auto& r : c) {
    long n = long(rng() % unsigned(2 * coeff_range + 1)) - coeff_range;
    c[size_t(&r - &c[0])] = Rational(n);
  }
  if (c.back().is_zero()) c.back() = Rational(1);
  return UniPoly(c);
}

}  // namespace

TEST_CASE("rational normalization") {
  Rational a(2, -4);
  CHECK(a == Rational(-1, 2));
  CHECK(a.denominator() == 2);
  CHECK(a.numerator() == -1);
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational::parse("22/7").denominator() == 7);
  CHECK(Rational(9, 4).sqrt_exact().value() == Rational(3, 2));
  CHECK(!Rational(2).sqrt_exact().has_value());
}

TEST_CASE("poly_arith basic examples") {
  MultiPoly t = MultiPoly::variable(Var::t);
  CHECK(t * t == P("t^2"));
  CHECK((P("u*a") * MultiPoly::zero()).is_zero());

  // b(t) of the L_VIII Weierstrass model: -16 t^3 (t-1)^2.
  MultiPoly lhs = P("(t-1)^2") * P("-16*t^3");
  CHECK(lhs == P("-16*t^5+32*t^4-16*t^3"));
}

TEST_CASE("canonical form is operation-order independent") {
  MultiPoly p = P("u+v"), q = P("a-b"), r = P("c^2+1");
  CHECK((p * q) * r == p * (q * r));
  CHECK(p * (q + r) == p * q + p * r);
  CHECK((p - p).is_zero());
}

TEST_CASE("parse/print round trip") {
  std::string eq2 =
      "u^2*a^2*c - u^2*a*c^2 - u*v*a^2*c - u*v*a*b*c + u*v*a*c^2 + u*v*b^2*c + "
      "v^2*a*b^2 - v^2*b^3";
  MultiPoly f = MultiPoly::parse(eq2);
  CHECK(f.str() == eq2);
  CHECK(MultiPoly::parse(f.str()) == f);
  CHECK(P("3/4*t^2 - 1/2").str() == "3/4*t^2 - 1/2");
  CHECK(P("0").is_zero());
  CHECK(P("-t").str() == "-t");
}

TEST_CASE("bidegree") {
  auto bd = MultiPoly::parse("u*a - v*b").bidegree_uv_abc();
  CHECK(bd.first == 1);
  CHECK(bd.second == 1);
  CHECK_THROWS_AS(P("u*a + b").bidegree_uv_abc(), std::invalid_argument);
  std::string eq2 =
      "u^2*a^2*c-u*v*a^2*c-v^2*b^3+u*v*b^2*c+v^2*a*b^2-u*v*a*b*c+u*v*a*c^2-"
      "u^2*a*c^2";
  auto bd2 = MultiPoly::parse(eq2).bidegree_uv_abc();
  CHECK(bd2.first == 2);
  CHECK(bd2.second == 3);
}

TEST_CASE("poly_gcd examples") {
  MultiPoly g = MultiPoly::gcd(P("t^2*(t-1)"), P("t*(t-1)^2"));
  CHECK(g == P("t^2-t"));
  CHECK(MultiPoly::gcd(P("3*t^2-3*t"), MultiPoly::zero()) == P("t^2-t"));

  // Multivariate: content/primitive recursion.
  MultiPoly m = MultiPoly::gcd(P("u^2*a - u^2*b"), P("u*a^2 - u*b^2"));
  CHECK(m == P("u*a - u*b"));
}

TEST_CASE("gcd of Eq.(3) coefficients is 1 (rational-root oracle)") {
  // a(t) = (8t^3 - 15t^2 + 8t) / (t-1)^2.
  UniPoly num = UniPoly::of({0, 8, -15, 8});
  UniPoly den = UniPoly::of({1, -2, 1});

  // Oracle: rational roots of the numerator via the rational root theorem;
  // the quadratic cofactor has negative discriminant.
  // num = t (8t^2 - 15t + 8); disc(8t^2-15t+8) = 225 - 256 < 0.
  CHECK(num.eval(Rational(0)).is_zero());
  Rational disc = Rational(15 * 15 - 4 * 8 * 8);
  CHECK(disc.sign() < 0);
  // Denominator roots: {1}; 1 is not a root of the numerator.
  CHECK(num.eval(Rational(1)) == Rational(1));

  CHECK(UniPoly::gcd(num, den).degree() == 0);
  RatFunc a(num, den);
  CHECK(a.num().degree() == 3);
  CHECK(a.den() == den);
}

TEST_CASE("factor_univariate examples") {
  auto f1 = factor_univariate(UniPoly::of({0, 0, -1, 1}));  // t^3 - t^2
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].factor == UniPoly::of({0, 1}));
  CHECK(f1.factors[0].multiplicity == 2);
  CHECK(f1.factors[1].factor == UniPoly::of({-1, 1}));
  CHECK(f1.factors[1].multiplicity == 1);

  auto f2 = factor_univariate(UniPoly::of({16, -31, 16}));
  CHECK(f2.factors.size() == 1);
  CHECK(f2.factors[0].multiplicity == 1);
  CHECK(f2.factors[0].factor.degree() == 2);
  CHECK(is_irreducible(UniPoly::of({16, -31, 16})));

  CHECK_THROWS(factor_univariate(UniPoly::zero()));
}

TEST_CASE("minimal discriminant of the Weierstrass model (derived)") {
  // Integral model of y^2 = x^3 + a(t)x^2 + b(t)x after x -> x/(t-1)^2:
  //   a' = t(8t^2-15t+8), b' = 16t^2(t-1)^4, Delta = 16 b'^2 (a'^2 - 4 b').
  UniPoly a = UniPoly::of({0, 8, -15, 8});
  UniPoly b = UniPoly::of({0, 0, 16}) * UniPoly::of({1, -2, 1}).pow(2);
  UniPoly delta = (b * b * (a * a - b.scaled(Rational(4)))).scaled(Rational(16));
  auto f = factor_univariate(delta);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].factor == UniPoly::of({0, 1}));      // t
  CHECK(f.factors[0].multiplicity == 7);
  CHECK(f.factors[1].factor == UniPoly::of({-1, 1}));     // t-1
  CHECK(f.factors[1].multiplicity == 8);
  CHECK(f.factors[2].factor.degree() == 2);               // 16t^2-31t+16 (monic)
  CHECK(f.factors[2].multiplicity == 1);
  CHECK(f.factors[2].factor == UniPoly::of({16, -31, 16}).monic());
}

TEST_CASE("factorization soundness on random polynomials") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 40; ++iter) {
    UniPoly p = random_unipoly(rng, 12, 8);
    auto f = factor_univariate(p);
    UniPoly prod = UniPoly::constant(f.unit);
    for (const auto& fac : f.factors)
      prod = prod * fac.factor.pow(unsigned(fac.multiplicity));
    CHECK(prod == p);
    for (const auto& fac : f.factors) CHECK(is_irreducible(fac.factor));
  }
}

TEST_CASE("division round trip and gcd-divides properties") {
  std::mt19937_64 rng(999);
  for (int iter = 0; iter < 25; ++iter) {
    UniPoly p = random_unipoly(rng, 8, 9);
    UniPoly q = random_unipoly(rng, 6, 9);
    UniPoly r = random_unipoly(rng, q.degree() - 1 >= 1 ? q.degree() - 1 : 1, 9);
    if (r.degree() >= q.degree()) r = UniPoly::divrem(r, q).second;
    auto [quo, rem] = UniPoly::divrem(p * q + r, q);
    CHECK(quo == p);
    CHECK(rem == r);

    UniPoly g = UniPoly::gcd(p, q);
    CHECK(p.divided_by(g).has_value());
    CHECK(q.divided_by(g).has_value());
    // gcd * lcm = p*q up to a unit.
    UniPoly l = *(p * q).divided_by(g);
    CHECK((g * l).monic() == (p * q).monic());
  }
}

TEST_CASE("resultants and discriminants") {
  // disc(x^2 - 1) = 4; disc(x^2) = 0.
  CHECK(UniPoly::of({-1, 0, 1}).discriminant() == Rational(4));
  CHECK(UniPoly::of({0, 0, 1}).discriminant() == Rational(0));
  // res(x-2, x-3) = (2-3)... Res(f,g) = prod над roots: f = x-2, g = x-3 -> g(2) = -1.
  CHECK(UniPoly::resultant(UniPoly::of({-2, 1}), UniPoly::of({-3, 1})) ==
        Rational(-1));
}

TEST_CASE("sturm root isolation") {
  // (t-1)(t-2)(t-7/2)
  UniPoly f = UniPoly({Rational(-1), Rational(1)}) *
              UniPoly({Rational(-2), Rational(1)}) *
              UniPoly({Rational(-7, 2), Rational(1)});
  auto roots = isolate_real_roots(f);
  REQUIRE(roots.size() == 3);
  CHECK(sturm_root_count(f, Rational(0), Rational(10)) == 3);
  CHECK(sturm_root_count(f, Rational(0), Rational(3)) == 2);
  // 16t^2-31t+16 has no real roots.
  CHECK(isolate_real_roots(UniPoly::of({16, -31, 16})).empty());
  // Multiple roots count once.
  UniPoly g = UniPoly::of({-1, 1}).pow(3) * UniPoly::of({0, 1});
  CHECK(isolate_real_roots(g).size() == 2);
}

TEST_CASE("ratfunc arithmetic and normal form") {
  RatFunc t = RatFunc::t();
  RatFunc f = (t * t - RatFunc(Rational(1))) / (t - RatFunc(Rational(1)));
  CHECK(f == t + RatFunc(Rational(1)));  // reduced
  CHECK(f.den().degree() == 0);

  RatFunc g = RatFunc(UniPoly::of({0, 0, 16})) /
              RatFunc(UniPoly::of({1, -2, 1}));
  CHECK(g.den().lc().is_one());  // monic denominator
  CHECK(g.eval(Rational(2)).value() == Rational(64));
  CHECK(!g.eval(Rational(1)).has_value());

  // f(1/t) normalization.
  RatFunc h = (t * t + RatFunc(Rational(1))) / t;
  CHECK(h.at_inverse_t() == h);  // symmetric under t -> 1/t

  auto s = (g * g).sqrt_exact();
  REQUIRE(s.has_value());
  CHECK((*s == g || *s == -g));
  CHECK(!(g * t).sqrt_exact().has_value());
}

TEST_CASE("places and valuations") {
  Place p0 = Place::rational_point(Rational(0));
  Place p1 = Place::rational_point(Rational(1));
  Place pinf = Place::at_infinity();
  RatFunc f = RatFunc(UniPoly::of({0, 0, 16})) / RatFunc(UniPoly::of({1, -2, 1}));
  CHECK(p0.valuation(f) == 2);
  CHECK(p1.valuation(f) == -2);
  CHECK(pinf.valuation(f) == 0);
  CHECK(pinf.valuation(RatFunc::t()) == -1);
  CHECK(Place::finite_place(UniPoly::of({16, -31, 16}).monic()).degree() == 2);
}

TEST_CASE("residue field arithmetic") {
  ResidueField k(UniPoly::of({16, -31, 16}).monic());
  UniPoly t = UniPoly::x();
  UniPoly inv = k.inv(t);
  CHECK(k.mul(t, inv) == UniPoly::constant(Rational(1)));
  // In k, t satisfies t^2 = (31 t - 16)/16.
  CHECK(k.reduce(t * t) == UniPoly({Rational(-1), Rational(31, 16)}));
}
