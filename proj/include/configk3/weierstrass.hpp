#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "configk3/plan.hpp"
#include "configk3/ratfunc.hpp"

namespace configk3 {

template <typename F>
F field_one();
template <>
inline Rational field_one<Rational>() { return Rational(1); }
template <>
inline RatFunc field_one<RatFunc>() { return RatFunc(Rational(1)); }

// y^2 = x^3 + a2 x^2 + a4 x + a6 over the field F (Q or Q(t)).
template <typename F>
struct WeierstrassCurveT {
  F a2, a4, a6;

  F c4() const {
    F s16 = F(Rational(16)), s48 = F(Rational(48));
    return s16 * a2 * a2 - s48 * a4;
  }
  F c6() const {
    F s64 = F(Rational(64)), s288 = F(Rational(288)), s864 = F(Rational(864));
    return -(s64 * a2 * a2 * a2) + s288 * a2 * a4 - s864 * a6;
  }
  F disc() const {
    // 16 disc_x(x^3 + a2 x^2 + a4 x + a6)
    F d = a2 * a2 * (a4 * a4 - F(Rational(4)) * a2 * a6) -
          F(Rational(4)) * a4 * a4 * a4 - F(Rational(27)) * a6 * a6 +
          F(Rational(18)) * a2 * a4 * a6;
    return F(Rational(16)) * d;
  }
  F rhs(const F& x) const { return ((x + a2) * x + a4) * x + a6; }
  bool contains(const F& x, const F& y) const { return (y * y - rhs(x)).is_zero(); }
};

template <typename F>
struct SectionT {
  bool infinite = true;
  F x, y;

  static SectionT zero() { return SectionT{}; }
  static SectionT finite(F px, F py) { return SectionT{false, std::move(px), std::move(py)}; }

  friend bool operator==(const SectionT& a, const SectionT& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || (a.x == b.x && a.y == b.y);
  }
};

template <typename F>
SectionT<F> sec_neg(const SectionT<F>& p) {
  if (p.infinite) return p;
  return SectionT<F>::finite(p.x, -p.y);
}

template <typename F>
SectionT<F> sec_add(const WeierstrassCurveT<F>& w, const SectionT<F>& p,
                    const SectionT<F>& q) {
  if (p.infinite) return q;
  if (q.infinite) return p;
  F lambda;
  if (!(p.x == q.x)) {
    lambda = (q.y - p.y) / (q.x - p.x);
  } else {
    if ((p.y + q.y).is_zero()) return SectionT<F>::zero();
    F three(Rational(3)), two(Rational(2));
    lambda = (three * p.x * p.x + two * w.a2 * p.x + w.a4) / (two * p.y);
  }
  F x3 = lambda * lambda - w.a2 - p.x - q.x;
  F y3 = lambda * (p.x - x3) - p.y;
  return SectionT<F>::finite(x3, y3);
}

template <typename F>
SectionT<F> sec_sub(const WeierstrassCurveT<F>& w, const SectionT<F>& p,
                    const SectionT<F>& q) {
  return sec_add(w, p, sec_neg(q));
}

template <typename F>
SectionT<F> sec_mul(const WeierstrassCurveT<F>& w, long k, SectionT<F> p) {
  if (k < 0) {
    p = sec_neg(p);
    k = -k;
  }
  SectionT<F> acc = SectionT<F>::zero();
  while (k > 0) {
    if (k & 1) acc = sec_add(w, acc, p);
    p = sec_add(w, p, p);
    k >>= 1;
  }
  return acc;
}

using WeierstrassCurve = WeierstrassCurveT<RatFunc>;
using Section = SectionT<RatFunc>;
using QCurve = WeierstrassCurveT<Rational>;
using QPoint = SectionT<Rational>;

// Substitution x = u^2 x' + r, y = u^3 y': the curve in primed coordinates
// and the two directions on points.
template <typename F>
WeierstrassCurveT<F> transform_curve(const WeierstrassCurveT<F>& w, const F& u,
                                     const F& r) {
  F u2 = u * u, u4 = u2 * u2, u6 = u4 * u2;
  F three(Rational(3)), two(Rational(2));
  F a2 = (w.a2 + three * r) / u2;
  F a4 = (w.a4 + two * w.a2 * r + three * r * r) / u4;
  F a6 = (w.a6 + w.a4 * r + w.a2 * r * r + r * r * r) / u6;
  return {a2, a4, a6};
}

template <typename F>
SectionT<F> transform_section(const SectionT<F>& p, const F& u, const F& r) {
  if (p.infinite) return p;
  F u2 = u * u, u3 = u2 * u;
  return SectionT<F>::finite((p.x - r) / u2, p.y / u3);
}

template <typename F>
SectionT<F> untransform_section(const SectionT<F>& p, const F& u, const F& r) {
  if (p.infinite) return p;
  F u2 = u * u, u3 = u2 * u;
  return SectionT<F>::finite(u2 * p.x + r, u3 * p.y);
}

// ----- plane cubic -> Weierstrass reduction -----------------------------------

// The exact birational chain attached to a bidegree-(2,3) equation with a
// rational base section: a linear change moving the tangent construction to
// standard position, the pencil projection to a (possibly degenerate) quartic
// y^2 = g(lambda), an inversion centered at the base point, and the classical
// square-leading-coefficient (or ramified) reduction to y^2 = cubic.
template <typename F>
struct CubicChainT {
  // Linear change: new = minv * old; old = m * new (3x3 over F).
  std::array<std::array<F, 3>, 3> m, minv;
  // Coefficients of the cubic in new coordinates:
  //   a X^3 + b X^2 Y + Z(q1 X^2 + q2 XY + q3 Y^2) + Z^2(l1 X + l2 Y).
  F ca, cb, q1, q2, q3, l1, l2;
  // Quartic h(mu) = h4 mu^4 + ... + h0 (h4 = A^2; A = l2/2).
  F h4, h3, h2, h1, h0;
  bool ramified = false;  // A == 0
  F A, p, q, r;           // square-lead data (unused when ramified)
  bool flex = false;      // base point is a flex: direct reduction
  F e3;                   // flex case: leading coefficient of the cubic in x'
  WeierstrassCurveT<F> curve;

  F beta(const F& lam) const { return (cb * lam + q2) * lam + l2; }

  std::optional<SectionT<F>> forward(const std::array<F, 3>& pt) const;
  std::optional<std::array<F, 3>> backward(const SectionT<F>& s) const;
};

using CubicChain = CubicChainT<RatFunc>;

// Specializes every chain coefficient at t = t0 (nullopt at poles or when the
// specialized curve degenerates).
std::optional<CubicChainT<Rational>> specialize_chain(const CubicChain& chain,
                                                      const Rational& t0);

struct WeierstrassModel {
  WeierstrassCurve curve;  // tidied model (locally minimal at finite places)
  CubicChain chain;        // plane <-> raw chain curve over Q(t)
  RatFunc tidy_u;          // raw -> tidied scaling: x = u^2 x', y = u^3 y'

  // Plane point (projective triple over Q(t)) to a section of `curve`.
  std::optional<Section> forward(const std::array<RatFunc, 3>& p) const {
    auto s = chain.forward(p);
    if (!s) return std::nullopt;
    return transform_section(*s, tidy_u, RatFunc());
  }
  // Section of `curve` back to a plane point.
  std::optional<std::array<RatFunc, 3>> backward(const Section& s) const {
    return chain.backward(untransform_section(s, tidy_u, RatFunc()));
  }
};

// Weierstrass reduction of the generic fiber of an irreducible compiled
// equation, with the section [o0:o1:o2] as identity. Throws when the identity
// is not on the curve or the generic fiber is singular.
WeierstrassModel to_weierstrass(const CompiledEquation& eq,
                                const std::array<Rational, 3>& identity);

// Plane sections of the fibration (graphs over the base) as coordinate
// triples in Q(t); used to feed the chain.
std::array<RatFunc, 3> plane_section_constant(const std::array<Rational, 3>& p);

// ----- template implementation -------------------------------------------------

template <typename F>
std::optional<SectionT<F>> CubicChainT<F>::forward(
    const std::array<F, 3>& pt) const {
  std::array<F, 3> n;
  for (int i = 0; i < 3; ++i)
    n[size_t(i)] = minv[size_t(i)][0] * pt[0] + minv[size_t(i)][1] * pt[1] +
                   minv[size_t(i)][2] * pt[2];
  const F& X = n[0];
  const F& Y = n[1];
  const F& Z = n[2];
  F one = field_one<F>();
  F two = one + one;

  if (flex) {
    if (Z.is_zero()) {
      if (X.is_zero()) return SectionT<F>::zero();  // the flex itself
      return std::nullopt;
    }
    F xp = X / Z, yp = Y / Z;
    F y2 = q3 * yp + (q2 * xp + l2) / two;
    return SectionT<F>::finite(e3 * xp, e3 * y2);
  }

  F mu, W;
  if (Z.is_zero()) {
    // On the tangent line at the projection point: O2 = [0:1:0], else O3.
    mu = F();
    W = X.is_zero() ? -(cb / two) : cb / two;
  } else {
    F lam = X / Z, Yp = Y / Z;
    F w = q3 * Yp + beta(lam) / two;
    if (lam.is_zero()) {
      // The two points over lambda = 0: the base point maps to infinity.
      if (ramified || (w - A).is_zero()) return SectionT<F>::zero();
      return std::nullopt;  // conjugate branch: exceptional for this chain
    }
    mu = one / lam;
    W = w * mu * mu;
  }

  if (ramified) {
    return SectionT<F>::finite(h3 * mu, h3 * W);
  }
  F M = W + (A * mu + p) * mu + q;
  F x = two * A * M;
  F eta = two * A * M * mu + p * M + r / two;
  F y = two * A * eta;
  return SectionT<F>::finite(x, y);
}

template <typename F>
std::optional<std::array<F, 3>> CubicChainT<F>::backward(
    const SectionT<F>& s) const {
  F one = field_one<F>();
  F two = one + one;
  auto apply_m = [&](const std::array<F, 3>& n) {
    std::array<F, 3> o;
    for (int i = 0; i < 3; ++i)
      o[size_t(i)] = m[size_t(i)][0] * n[0] + m[size_t(i)][1] * n[1] +
                     m[size_t(i)][2] * n[2];
    return o;
  };
  auto from_lambda = [&](const F& lam, const F& w) -> std::array<F, 3> {
    F Yp = (w - beta(lam) / two) / q3;
    return apply_m({lam, Yp, one});
  };
  auto at_infinity_point = [&](bool is_o2) -> std::array<F, 3> {
    if (is_o2) return apply_m({F(), one, F()});
    // O3 = [cb : -ca : 0] (root of ca X + cb Y on Z = 0).
    return apply_m({cb, -ca, F()});
  };

  if (flex) {
    if (s.infinite) return apply_m({F(), one, F()});
    F xp = s.x / e3, y2 = s.y / e3;
    F yp = (y2 - (q2 * xp + l2) / two) / q3;
    return apply_m({xp, yp, one});
  }

  if (s.infinite) return apply_m({F(), F(), one});  // the base point o

  F mu, W;
  if (ramified) {
    if (h3.is_zero()) return std::nullopt;
    mu = s.x / h3;
    W = s.y / h3;
  } else {
    F M = s.x / (two * A);
    if (M.is_zero()) return std::nullopt;  // conjugate exceptional branch
    F eta = s.y / (two * A);
    F xi = eta - p * M - r / two;
    mu = xi / (two * A * M);
    W = M - ((A * mu + p) * mu + q);
  }
  if (mu.is_zero()) {
    F half_b = cb / two;
    if ((W + half_b).is_zero()) return at_infinity_point(true);
    if ((W - half_b).is_zero()) return at_infinity_point(false);
    return std::nullopt;
  }
  F lam = one / mu;
  F w = W * lam * lam;
  return from_lambda(lam, w);
}

}  // namespace configk3
