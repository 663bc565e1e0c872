#include "configk3/weierstrass.hpp"

#include <set>
#include <stdexcept>

#include "configk3/factor.hpp"
#include "configk3/kodaira.hpp"

namespace configk3 {

namespace {

using RF3 = std::array<RatFunc, 3>;
using Mat3 = std::array<std::array<RatFunc, 3>, 3>;

RF3 cross_rf(const RF3& a, const RF3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_triple(const RF3& a) {
  return a[0].is_zero() && a[1].is_zero() && a[2].is_zero();
}

bool proportional(const RF3& a, const RF3& b) {
  return is_zero_triple(cross_rf(a, b));
}

RatFunc det3_rf(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 invert3_rf(const Mat3& m) {
  RatFunc d = det3_rf(m);
  if (d.is_zero()) throw std::logic_error("chain: singular coordinate change");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      RatFunc cof = m[size_t(i1)][size_t(j1)] * m[size_t(i2)][size_t(j2)] -
                    m[size_t(i1)][size_t(j2)] * m[size_t(i2)][size_t(j1)];
      r[size_t(j)][size_t(i)] = cof / d;
    }
  return r;
}

// Clears denominators of a coordinate triple (projective scaling).
RF3 clear_triple(const RF3& p) {
  UniPoly l = UniPoly::constant(Rational(1));
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    // lcm of denominators via gcd.
    UniPoly g = UniPoly::gcd(l, c.den());
    l = *(l * c.den()).divided_by(g);
  }
  RF3 out;
  RatFunc scale{UniPoly(l)};
  for (int i = 0; i < 3; ++i) out[size_t(i)] = p[size_t(i)] * scale;
  return out;
}

// The generic-fiber ternary cubic as a MultiPoly in {t, a, b, c}.
MultiPoly fiber_cubic(const MultiPoly& f) {
  return f.substitute(Var::u, MultiPoly::variable(Var::t))
      .substitute(Var::v, MultiPoly::constant(Rational(1)));
}

// Substitute the linear forms of a polynomial-entry matrix into the cubic:
// G(X,Y,Z) = C(m00 X + m01 Y + m02 Z, ...).
MultiPoly compose_linear(const MultiPoly& cubic, const std::array<MultiPoly, 3>& lf) {
  // Powers of the three linear forms up to degree 3.
  std::array<std::array<MultiPoly, 4>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[size_t(i)][0] = MultiPoly::constant(Rational(1));
    for (int d = 1; d <= 3; ++d)
      pw[size_t(i)][size_t(d)] = pw[size_t(i)][size_t(d - 1)] * lf[size_t(i)];
  }
  MultiPoly out;
  for (const auto& [e, coef] : cubic.terms()) {
    Exponents rest = e;
    int ia = e[int(Var::a)], ib = e[int(Var::b)], ic = e[int(Var::c)];
    rest[int(Var::a)] = rest[int(Var::b)] = rest[int(Var::c)] = 0;
    out += MultiPoly::monomial(rest, coef) * pw[0][size_t(ia)] *
           pw[1][size_t(ib)] * pw[2][size_t(ic)];
  }
  return out;
}

// Coefficient of a^i b^j c^k as an element of Q(t).
RatFunc abc_coeff(const MultiPoly& g, int i, int j, int k) {
  MultiPoly r;
  for (const auto& [e, coef] : g.terms()) {
    if (e[int(Var::a)] != i || e[int(Var::b)] != j || e[int(Var::c)] != k)
      continue;
    Exponents rest = e;
    rest[int(Var::a)] = rest[int(Var::b)] = rest[int(Var::c)] = 0;
    r += MultiPoly::monomial(rest, coef);
  }
  if (r.is_zero()) return RatFunc();
  return RatFunc(UniPoly::from_multi(r, Var::t));
}

// Evaluate the fiber cubic at a point with Q(t) coordinates.
RatFunc eval_cubic(const MultiPoly& cubic, const RF3& p) {
  RatFunc acc;
  for (const auto& [e, coef] : cubic.terms()) {
    RatFunc term{UniPoly::from_multi(
        MultiPoly::monomial(
            [&] {
              Exponents rest = e;
              rest[int(Var::a)] = rest[int(Var::b)] = rest[int(Var::c)] = 0;
              return rest;
            }(),
            coef),
        Var::t)};
    for (int k = 0; k < e[int(Var::a)]; ++k) term *= p[0];
    for (int k = 0; k < e[int(Var::b)]; ++k) term *= p[1];
    for (int k = 0; k < e[int(Var::c)]; ++k) term *= p[2];
    acc += term;
  }
  return acc;
}

RF3 tangent_at(const MultiPoly& cubic, const RF3& p) {
  RF3 t;
  Var vars[3] = {Var::a, Var::b, Var::c};
  for (int i = 0; i < 3; ++i)
    t[size_t(i)] = eval_cubic(cubic.derivative(vars[size_t(i)]), p);
  return t;
}

// A point on the line `l` that is not projectively equal to `avoid`.
RF3 point_on_line(const RF3& l, const RF3& avoid) {
  RF3 basis[3] = {RF3{RatFunc(Rational(1)), RatFunc(), RatFunc()},
                  RF3{RatFunc(), RatFunc(Rational(1)), RatFunc()},
                  RF3{RatFunc(), RatFunc(), RatFunc(Rational(1))}};
  for (const auto& e : basis) {
    RF3 c = cross_rf(l, e);
    if (is_zero_triple(c)) continue;
    if (proportional(c, avoid)) continue;
    return clear_triple(c);
  }
  throw std::logic_error("chain: no independent point on line");
}

}  // namespace

std::array<RatFunc, 3> plane_section_constant(const std::array<Rational, 3>& p) {
  return {RatFunc(p[0]), RatFunc(p[1]), RatFunc(p[2])};
}

WeierstrassModel to_weierstrass(const CompiledEquation& eq,
                                const std::array<Rational, 3>& identity) {
  if (eq.polynomial.is_zero())
    throw std::invalid_argument("to_weierstrass: zero equation");
  auto bd = eq.polynomial.bidegree_uv_abc();
  if (bd.first != 2 || bd.second != 3)
    throw std::invalid_argument("to_weierstrass: equation is not of bidegree (2,3)");

  MultiPoly cubic = fiber_cubic(eq.polynomial);
  RF3 o = plane_section_constant(identity);
  if (!eval_cubic(cubic, o).is_zero())
    throw std::invalid_argument("to_weierstrass: identity not on the curve");

  RF3 T = tangent_at(cubic, o);
  if (is_zero_triple(T))
    throw std::invalid_argument(
        "to_weierstrass: generic fiber singular at the identity");

  // Third intersection of the tangent: restrict the cubic to the tangent.
  RF3 p1 = point_on_line(T, o);
  // phi(tau, sigma) = C(tau o + sigma p1) = sigma^2 (c2 tau + c3 sigma).
  // Compute c2, c3 by evaluating the restriction at two parameter values and
  // solving: phi(1, s)/s^2 = c2 + c3 s.
  auto restrict_at = [&](const Rational& srat) {
    RatFunc s{srat};
    RF3 pt{o[0] + s * p1[0], o[1] + s * p1[1], o[2] + s * p1[2]};
    return eval_cubic(cubic, pt);
  };
  RatFunc v1 = restrict_at(Rational(1));   // c2 + c3
  RatFunc v2 = restrict_at(Rational(2));   // 4 c2 + 8 c3
  RatFunc c3 = (v2 - RatFunc(Rational(4)) * v1) / RatFunc(Rational(4));
  RatFunc c2 = v1 - c3;

  CubicChain chain;
  Mat3 M;

  if (c2.is_zero()) {
    // Flex case: o = [0:1:0], tangent = {Z = 0}.
    chain.flex = true;
    RF3 e1 = p1;
    // Any point off the tangent completes the basis.
    RF3 e3;
    bool found = false;
    RF3 basis[3] = {RF3{RatFunc(Rational(1)), RatFunc(), RatFunc()},
                    RF3{RatFunc(), RatFunc(Rational(1)), RatFunc()},
                    RF3{RatFunc(), RatFunc(), RatFunc(Rational(1))}};
    for (const auto& e : basis) {
      RatFunc dot = T[0] * e[0] + T[1] * e[1] + T[2] * e[2];
      if (!dot.is_zero()) {
        e3 = e;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("chain: no point off the tangent");
    for (int i = 0; i < 3; ++i) {
      M[size_t(i)][0] = e1[size_t(i)];
      M[size_t(i)][1] = o[size_t(i)];
      M[size_t(i)][2] = e3[size_t(i)];
    }
  } else {
    // General case: project from the tangent's third intersection point.
    RF3 o2{c3 * o[0] - c2 * p1[0], c3 * o[1] - c2 * p1[1],
           c3 * o[2] - c2 * p1[2]};
    o2 = clear_triple(o2);
    if (!eval_cubic(cubic, o2).is_zero())
      throw std::logic_error("chain: third intersection not on the curve");
    if (proportional(o2, o))
      throw std::logic_error("chain: flex not detected");
    RF3 T2 = tangent_at(cubic, o2);
    if (is_zero_triple(T2))
      throw std::invalid_argument(
          "to_weierstrass: generic fiber singular at the auxiliary point");
    RF3 e1 = point_on_line(T2, o2);
    for (int i = 0; i < 3; ++i) {
      M[size_t(i)][0] = e1[size_t(i)];
      M[size_t(i)][1] = o2[size_t(i)];
      M[size_t(i)][2] = o[size_t(i)];
    }
  }

  chain.m = M;
  chain.minv = invert3_rf(M);

  // Compose: G(X,Y,Z) = C(M (X,Y,Z)). Clear denominators columnwise first.
  std::array<MultiPoly, 3> lf;
  {
    Mat3 Mc = M;
    for (int j = 0; j < 3; ++j) {
      RF3 col{Mc[0][size_t(j)], Mc[1][size_t(j)], Mc[2][size_t(j)]};
      col = clear_triple(col);
      for (int i = 0; i < 3; ++i) Mc[size_t(i)][size_t(j)] = col[size_t(i)];
    }
    // Column scaling is another linear change; refresh m / minv accordingly.
    chain.m = Mc;
    chain.minv = invert3_rf(Mc);
    Var abc[3] = {Var::a, Var::b, Var::c};
    for (int i = 0; i < 3; ++i) {
      MultiPoly form;
      for (int j = 0; j < 3; ++j) {
        const RatFunc& entry = chain.m[size_t(i)][size_t(j)];
        if (entry.is_zero()) continue;
        form += entry.num().to_multi(Var::t) * MultiPoly::variable(abc[size_t(j)]);
      }
      lf[size_t(i)] = form;
    }
  }
  MultiPoly G = compose_linear(cubic, lf);

  RatFunc zero;
  auto coeff = [&](int i, int j, int k) { return abc_coeff(G, i, j, k); };
  if (!coeff(0, 3, 0).is_zero())
    throw std::logic_error("chain: Y^3 coefficient should vanish");
  if (!coeff(1, 2, 0).is_zero())
    throw std::logic_error("chain: XY^2 coefficient should vanish");

  chain.ca = coeff(3, 0, 0);
  chain.cb = coeff(2, 1, 0);
  chain.q1 = coeff(2, 0, 1);
  chain.q2 = coeff(1, 1, 1);
  chain.q3 = coeff(0, 2, 1);
  chain.l1 = coeff(1, 0, 2);
  chain.l2 = coeff(0, 1, 2);
  RatFunc m3 = coeff(0, 0, 3);
  if (chain.q3.is_zero())
    throw std::invalid_argument("to_weierstrass: singular at projection point");

  RatFunc half(Rational(1, 2));
  RatFunc quarter(Rational(1, 4));
  if (chain.flex) {
    // Y2^2 = e3 x'^3 + e2 x'^2 + e1 x' + e0 after completing the square.
    RatFunc e3c = -chain.q3 * chain.ca;
    RatFunc e2 = chain.q2 * chain.q2 * quarter - chain.q3 * chain.q1;
    RatFunc e1 = chain.q2 * chain.l2 * half - chain.q3 * chain.l1;
    RatFunc e0 = chain.l2 * chain.l2 * quarter - chain.q3 * m3;
    if (e3c.is_zero())
      throw std::logic_error("chain: degenerate flex reduction");
    chain.e3 = e3c;
    chain.curve = WeierstrassCurve{e2, e1 * e3c, e0 * e3c * e3c};
  } else {
    if (!m3.is_zero())
      throw std::logic_error("chain: Z^3 coefficient should vanish");
    // Quartic g(lambda) = beta^2/4 - q3 gamma.
    RatFunc g4 = chain.cb * chain.cb * quarter;
    RatFunc g3 = chain.cb * chain.q2 * half - chain.q3 * chain.ca;
    RatFunc g2 =
        (chain.q2 * chain.q2 + RatFunc(Rational(2)) * chain.cb * chain.l2) *
            quarter -
        chain.q3 * chain.q1;
    RatFunc g1 = chain.q2 * chain.l2 * half - chain.q3 * chain.l1;
    RatFunc g0 = chain.l2 * chain.l2 * quarter;
    chain.h4 = g0;
    chain.h3 = g1;
    chain.h2 = g2;
    chain.h1 = g3;
    chain.h0 = g4;
    chain.A = chain.l2 * half;
    if (chain.A.is_zero()) {
      chain.ramified = true;
      if (chain.h3.is_zero())
        throw std::invalid_argument("to_weierstrass: generic fiber singular");
      chain.curve = WeierstrassCurve{chain.h2, chain.h1 * chain.h3,
                                     chain.h0 * chain.h3 * chain.h3};
    } else {
      RatFunc two(Rational(2));
      chain.p = chain.h3 / (two * chain.A);
      chain.q = (chain.h2 - chain.p * chain.p) / (two * chain.A);
      chain.r = chain.h1 - two * chain.p * chain.q;
      RatFunc s = chain.h0 - chain.q * chain.q;
      if (chain.r.is_zero() && s.is_zero())
        throw std::invalid_argument("to_weierstrass: generic fiber singular");
      RatFunc a2 = chain.p * chain.p - RatFunc(Rational(4)) * chain.A * chain.q;
      RatFunc a4 = two * chain.A * (chain.p * chain.r - two * chain.A * s);
      RatFunc a6 = chain.A * chain.A * chain.r * chain.r;
      chain.curve = WeierstrassCurve{a2, a4, a6};
    }
  }

  if (chain.curve.disc().is_zero())
    throw std::invalid_argument("to_weierstrass: generic fiber singular");

  WeierstrassModel model;
  model.chain = chain;

  // Tidy: rescale so the model is minimal at every finite place; this keeps
  // coefficient sizes small for the torsion and height machinery.
  {
    RatFunc u(Rational(1));
    std::set<std::vector<Rational>> seen;
    auto consider = [&](const UniPoly& f) {
      if (f.degree() < 1) return;
      for (const auto& g : factor_univariate(f).factors) {
        if (!seen.insert(g.factor.coeffs()).second) continue;
        Place pl = Place::finite_place(g.factor);
        LocalData d = minimal_local_data(chain.curve, pl);
        // x = u^2 x' lowers v(disc) by 12 v_pi(u); minimality needs -shift.
        if (d.shift != 0) u = u * RatFunc(UniPoly(g.factor)).pow(-d.shift);
      }
    };
    RatFunc delta = chain.curve.disc();
    consider(delta.num());
    consider(delta.den());
    for (const RatFunc& f : {chain.curve.a2, chain.curve.a4, chain.curve.a6})
      if (!f.is_zero()) consider(f.den());
    model.tidy_u = u;
  }
  model.curve = transform_curve(chain.curve, model.tidy_u, RatFunc());

  // The identity maps to the section at infinity by construction; verify.
  auto img = model.forward(o);
  if (!img || !img->infinite)
    throw std::logic_error("chain: identity does not map to infinity");
  return model;
}

std::optional<CubicChainT<Rational>> specialize_chain(const CubicChain& chain,
                                                      const Rational& t0) {
  CubicChainT<Rational> out;
  auto ev = [&](const RatFunc& f, Rational* dst) -> bool {
    auto v = f.eval(t0);
    if (!v) return false;
    *dst = *v;
    return true;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!ev(chain.m[size_t(i)][size_t(j)], &out.m[size_t(i)][size_t(j)]))
        return std::nullopt;
      if (!ev(chain.minv[size_t(i)][size_t(j)], &out.minv[size_t(i)][size_t(j)]))
        return std::nullopt;
    }
  bool ok = ev(chain.ca, &out.ca) && ev(chain.cb, &out.cb) &&
            ev(chain.q1, &out.q1) && ev(chain.q2, &out.q2) &&
            ev(chain.q3, &out.q3) && ev(chain.l1, &out.l1) &&
            ev(chain.l2, &out.l2) && ev(chain.h4, &out.h4) &&
            ev(chain.h3, &out.h3) && ev(chain.h2, &out.h2) &&
            ev(chain.h1, &out.h1) && ev(chain.h0, &out.h0);
  if (!ok) return std::nullopt;
  out.ramified = chain.ramified;
  out.flex = chain.flex;
  if (chain.flex) {
    if (!ev(chain.e3, &out.e3)) return std::nullopt;
    if (out.e3.is_zero()) return std::nullopt;
  } else if (!chain.ramified) {
    if (!(ev(chain.A, &out.A) && ev(chain.p, &out.p) && ev(chain.q, &out.q) &&
          ev(chain.r, &out.r)))
      return std::nullopt;
    if (out.A.is_zero()) return std::nullopt;
  } else {
    if (out.h3.is_zero()) return std::nullopt;
  }
  if (out.q3.is_zero()) return std::nullopt;
  bool curve_ok = ev(chain.curve.a2, &out.curve.a2) &&
                  ev(chain.curve.a4, &out.curve.a4) &&
                  ev(chain.curve.a6, &out.curve.a6);
  if (!curve_ok) return std::nullopt;
  if (out.curve.disc().is_zero()) return std::nullopt;
  // The determinant of the specialized change must stay invertible.
  Rational det = out.m[0][0] * (out.m[1][1] * out.m[2][2] - out.m[1][2] * out.m[2][1]) -
                 out.m[0][1] * (out.m[1][0] * out.m[2][2] - out.m[1][2] * out.m[2][0]) +
                 out.m[0][2] * (out.m[1][0] * out.m[2][1] - out.m[1][1] * out.m[2][0]);
  if (det.is_zero()) return std::nullopt;
  return out;
}

}  // namespace configk3
