#include <doctest.h>

#include <random>

#include "configk3/factor.hpp"

using namespace configk3;

namespace {
MultiPoly P(const std::string& s) { return MultiPoly::parse(s); }

const char* kEq2 =
    "u^2*a^2*c-u*v*a^2*c-v^2*b^3+u*v*b^2*c+v^2*a*b^2-u*v*a*b*c+u*v*a*c^2-"
    "u^2*a*c^2";
}  // namespace

TEST_CASE("bivariate factorization recovers known products") {
  MultiPoly f = P("(x + t)*(x - t)*(x + t + 1)");
  auto fac = factor_bivariate(f, Var::x, Var::t);
  CHECK(fac.factors.size() == 3);
  CHECK(fac.expand() == f);

  MultiPoly g = P("(x^2 + t^3 + 1)*(x + 2*t)^2");
  auto gf = factor_bivariate(g, Var::x, Var::t);
  CHECK(gf.expand() == g);
  int total = 0;
  for (const auto& ff : gf.factors) total += ff.multiplicity;
  CHECK(total == 3);

  // Irreducible stays put.
  MultiPoly h = P("x^2 - t^3 + t + 2");
  auto hf = factor_bivariate(h, Var::x, Var::t);
  CHECK(hf.factors.size() == 1);
  CHECK(hf.factors[0].multiplicity == 1);

  // Contents in both variables.
  MultiPoly k = P("t*(t-1)*x^2*(x*t + 1)");
  auto kf = factor_bivariate(k, Var::x, Var::t);
  CHECK(kf.expand() == k);
  CHECK(kf.factors.size() == 4);
}

TEST_CASE("bivariate factorization randomized soundness") {
  std::mt19937_64 rng(777);
  auto rnd_poly = [&](int dx, int dt) {
    MultiPoly p;
    for (int i = 0; i <= dx; ++i)
      for (int j = 0; j <= dt; ++j) {
        long v = long(rng() % 7) - 3;
        if (v == 0) continue;
        Exponents e{};
        e[int(Var::x)] = uint16_t(i);
        e[int(Var::t)] = uint16_t(j);
        p += MultiPoly::monomial(e, Rational(v));
      }
    return p;
  };
  int done = 0;
  while (done < 10) {
    MultiPoly a = rnd_poly(2, 1), b = rnd_poly(1, 2);
    if (a.is_zero() || b.is_zero()) continue;
    if (a.degree(Var::x) == 0 && a.degree(Var::t) == 0) continue;
    if (b.degree(Var::x) == 0 && b.degree(Var::t) == 0) continue;
    MultiPoly f = a * b;
    auto fac = factor_bivariate(f, Var::x, Var::t);
    CHECK(fac.expand() == f);
    CHECK(fac.factors.size() >= 2);
    ++done;
  }
}

TEST_CASE("binary and ternary forms") {
  auto bf = factor_binary_form(P("u^2 - v^2"), Var::u, Var::v);
  CHECK(bf.factors.size() == 2);
  CHECK(bf.expand() == P("u^2 - v^2"));

  auto bf2 = factor_binary_form(P("16*u^2 - 31*u*v + 16*v^2"), Var::u, Var::v);
  CHECK(bf2.factors.size() == 1);

  auto bf3 = factor_binary_form(P("u^3*v - u*v^3"), Var::u, Var::v);
  CHECK(bf3.expand() == P("u^3*v - u*v^3"));
  CHECK(bf3.factors.size() == 4);

  // Three concurrent lines.
  auto tf = factor_ternary_form(P("a*b*(a+b-2*c)"));
  CHECK(tf.factors.size() == 3);
  CHECK(tf.expand() == P("a*b*(a+b-2*c)"));

  // Smooth conic is irreducible.
  auto tc = factor_ternary_form(P("a^2 + b^2 - c^2"));
  CHECK(tc.factors.size() == 1);

  // Rank-2 conic splits over Q.
  auto ts = factor_ternary_form(P("a^2 - b^2"));
  CHECK(ts.factors.size() == 2);

  // Nodal cubic: irreducible.
  auto tn = factor_ternary_form(P("b^2*c - a^3 - a^2*c"));
  CHECK(tn.factors.size() == 1);
  CHECK(tn.factors[0].multiplicity == 1);
}

TEST_CASE("bihomogeneous pipeline on the Sturmfels equation") {
  MultiPoly f = P(kEq2);
  auto fac = factor_bihomogeneous(f);
  CHECK(fac.factors.size() == 1);
  CHECK(fac.factors[0].multiplicity == 1);
  CHECK(fac.expand() == f);
}

TEST_CASE("bihomogeneous pipeline on built products") {
  // (u a - v b) * (u^1... ) mixed splits, contents, and lines.
  MultiPoly f = P("(u*a - v*b)*(u*b^2 + v*a*c + v*c^2)");
  auto fac = factor_bihomogeneous(f);
  CHECK(fac.expand() == f);
  CHECK(fac.factors.size() == 2);

  MultiPoly g = P("u*(u-v)*(a+b)*(u*a - v*b)*(a*b + c^2)");
  auto gf = factor_bihomogeneous(g);
  CHECK(gf.expand() == g);
  CHECK(gf.factors.size() == 5);

  MultiPoly h = P("(u*a - v*b)^2*(a + c)");
  auto hf = factor_bihomogeneous(h);
  CHECK(hf.expand() == h);
  bool saw_square = false;
  for (const auto& ff : hf.factors)
    if (ff.multiplicity == 2) saw_square = true;
  CHECK(saw_square);

  // A (2,3) product of two mixed factors of abc-degree 1 and 2.
  MultiPoly k = P("(u*a + v*b + v*c)*((u-v)*a*b + u*c^2 + v*b^2)");
  auto kf = factor_bihomogeneous(k);
  CHECK(kf.expand() == k);
  CHECK(kf.factors.size() == 2);
}
