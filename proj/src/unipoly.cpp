#include "configk3/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace configk3 {

UniPoly UniPoly::of(std::vector<long> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c));
}

const Rational& UniPoly::lc() const {
  if (c_.empty()) throw std::logic_error("lc of zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> c;
  c.reserve(c_.size());
  for (const auto& r : c_) c.push_back(-r);
  return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& l, const UniPoly& r) {
  std::vector<Rational> c(std::max(l.c_.size(), r.c_.size()), Rational(0));
  for (size_t i = 0; i < l.c_.size(); ++i) c[i] += l.c_[i];
  for (size_t i = 0; i < r.c_.size(); ++i) c[i] += r.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& l, const UniPoly& r) {
  std::vector<Rational> c(std::max(l.c_.size(), r.c_.size()), Rational(0));
  for (size_t i = 0; i < l.c_.size(); ++i) c[i] += l.c_[i];
  for (size_t i = 0; i < r.c_.size(); ++i) c[i] -= r.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& l, const UniPoly& r) {
  if (l.is_zero() || r.is_zero()) return UniPoly();
  std::vector<Rational> c(l.c_.size() + r.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < l.c_.size(); ++i) {
    if (l.c_[i].is_zero()) continue;
    for (size_t j = 0; j < r.c_.size(); ++j) c[i + j] += l.c_[i] * r.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::scaled(const Rational& r) const {
  if (r.is_zero()) return UniPoly();
  std::vector<Rational> c;
  c.reserve(c_.size());
  for (const auto& v : c_) c.push_back(v * r);
  return UniPoly(std::move(c));
}

UniPoly UniPoly::shifted(int k) const {
  if (is_zero()) return UniPoly();
  std::vector<Rational> c(c_.size() + size_t(k), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) c[i + size_t(k)] = c_[i];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::pow(unsigned n) const {
  UniPoly result = constant(Rational(1));
  UniPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

Rational UniPoly::eval(const Rational& v) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(long(i));
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

UniPoly UniPoly::translated(const Rational& s) const {
  // Horner in (x + s).
  UniPoly acc;
  UniPoly shift({s, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * shift + constant(*it);
  return acc;
}

UniPoly UniPoly::reversed() const {
  std::vector<Rational> c(c_.rbegin(), c_.rend());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::dilated(const Rational& r) const {
  std::vector<Rational> c = c_;
  Rational p(1);
  for (size_t i = 1; i < c.size(); ++i) {
    p *= r;
    c[i] *= p;
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * inner + constant(*it);
  return acc;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& p, const UniPoly& d) {
  if (d.is_zero()) throw std::domain_error("UniPoly: division by zero");
  std::vector<Rational> rem = p.c_;
  int dd = d.degree();
  if (p.degree() < dd) return {UniPoly(), p};
  std::vector<Rational> quot(size_t(p.degree() - dd) + 1, Rational(0));
  Rational inv = d.lc().inverse();
  for (int k = p.degree() - dd; k >= 0; --k) {
    Rational q = rem[size_t(k + dd)] * inv;
    if (q.is_zero()) continue;
    quot[size_t(k)] = q;
    for (int i = 0; i <= dd; ++i) rem[size_t(k + i)] -= q * d.c_[size_t(i)];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

namespace {

using ZP = std::vector<Integer>;

void zp_trim(ZP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZP to_primitive_z(const UniPoly& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = configk3::lcm(den, c.denominator());
  ZP z;
  for (const auto& c : p.coeffs()) z.push_back(c.numerator() * (den / c.denominator()));
  zp_trim(z);
  if (z.empty()) return z;
  Integer content = 0;
  for (const auto& c : z) content = configk3::gcd(content, c);
  if (z.back() < 0) content = -content;
  for (auto& c : z) c /= content;
  return z;
}

UniPoly from_z_monic(const ZP& z) {
  std::vector<Rational> c;
  c.reserve(z.size());
  for (const auto& v : z) c.emplace_back(Rational(v));
  return UniPoly(std::move(c)).monic();
}

// Pseudo-remainder lc(d)^(deg a - deg d + 1) * a mod d over Z.
ZP zp_prem(ZP a, const ZP& d) {
  int dd = int(d.size()) - 1;
  const Integer& lc = d.back();
  int needed = int(a.size()) - 1 - dd + 1;
  int applied = 0;
  while (int(a.size()) - 1 >= dd) {
    Integer top = a.back();
    for (auto& c : a) c *= lc;
    ++applied;
    size_t off = a.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) a[off + i] -= top * d[i];
    zp_trim(a);
    if (a.empty()) break;
  }
  for (; applied < needed; ++applied)
    for (auto& c : a) c *= lc;
  return a;
}

uint64_t mod_of(const Integer& c, uint64_t p) {
  Integer r = c % long(p);
  if (r < 0) r += long(p);
  return r.get_ui();
}

// Degree of gcd mod p, or -1 when p is unusable.
int modp_gcd_degree(const ZP& f, const ZP& g, uint64_t p) {
  if (mod_of(f.back(), p) == 0 || mod_of(g.back(), p) == 0) return -1;
  auto reduce = [&](const ZP& z) {
    std::vector<uint64_t> r;
    for (const auto& c : z) r.push_back(mod_of(c, p));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  auto mulmod = [&](uint64_t a, uint64_t b) {
    return uint64_t((__uint128_t)a * b % p);
  };
  auto powmod = [&](uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::vector<uint64_t> a = reduce(f), b = reduce(g);
  while (!b.empty()) {
    // a mod b
    uint64_t inv = powmod(b.back(), p - 2);
    while (a.size() >= b.size()) {
      uint64_t c = mulmod(a.back(), inv);
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t sub = mulmod(c, b[i]);
        a[off + i] = a[off + i] >= sub ? a[off + i] - sub : a[off + i] + p - sub;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return int(a.size()) - 1;
}

}  // namespace

UniPoly UniPoly::gcd(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero()) return q.is_zero() ? q : q.monic();
  if (q.is_zero()) return p.monic();
  if (p.degree() == 0 || q.degree() == 0)
    return UniPoly::constant(Rational(1));

  ZP a = to_primitive_z(p), b = to_primitive_z(q);
  if (a.size() < b.size()) std::swap(a, b);

  // Fast path: coprime modulo a usable prime implies coprime over Q.
  for (uint64_t prime : {1000000007ULL, 998244353ULL, 2147483647ULL}) {
    int d = modp_gcd_degree(a, b, prime);
    if (d == 0) return UniPoly::constant(Rational(1));
    if (d >= 0) break;
  }

  // Subresultant polynomial remainder sequence over Z.
  Integer g = 1, h = 1;
  while (true) {
    int delta = int(a.size()) - int(b.size());
    ZP r = zp_prem(a, b);
    if (r.empty()) {
      ZP prim = b;
      Integer content = 0;
      for (const auto& c : prim) content = configk3::gcd(content, c);
      for (auto& c : prim) c /= content;
      return from_z_monic(prim);
    }
    a = b;
    Integer divisor = g;
    for (int i = 0; i < delta; ++i) divisor *= h;
    b = r;
    for (auto& c : b) {
      if (c % divisor != 0) throw std::logic_error("subresultant: inexact step");
      c /= divisor;
    }
    if (int(b.size()) - 1 == 0) return UniPoly::constant(Rational(1));
    g = a.back();
    // h = h^(1-delta) g^delta
    if (delta > 0) {
      Integer gn = 1;
      for (int i = 0; i < delta; ++i) gn *= g;
      Integer hd = 1;
      for (int i = 0; i < delta - 1; ++i) hd *= h;
      if (hd == 0) throw std::logic_error("subresultant: zero h");
      h = gn / hd;
    }
  }
}

std::optional<UniPoly> UniPoly::divided_by(const UniPoly& d) const {
  auto [q, r] = divrem(*this, d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Rational UniPoly::resultant(const UniPoly& f, const UniPoly& g) {
  int df = f.degree(), dg = g.degree();
  if (df < 0 || dg < 0) return Rational(0);
  if (dg == 0) {
    Rational r(1);
    for (int i = 0; i < df; ++i) r *= g.lc();
    return r;
  }
  if (df < dg) {
    Rational sign = (df * dg) % 2 == 1 ? Rational(-1) : Rational(1);
    return sign * resultant(g, f);
  }
  auto [quot, rem] = divrem(f, g);
  if (rem.is_zero()) return Rational(0);
  int dr = rem.degree();
  Rational lead(1);
  for (int i = 0; i < df - dr; ++i) lead *= g.lc();
  Rational sign = (df * dg) % 2 == 1 ? Rational(-1) : Rational(1);
  return sign * lead * resultant(g, rem);
}

Rational UniPoly::discriminant() const {
  int n = degree();
  if (n < 1) throw std::domain_error("discriminant of constant");
  Rational r = resultant(*this, derivative());
  Rational sign = (n * (n - 1) / 2) % 2 == 1 ? Rational(-1) : Rational(1);
  return sign * r / lc();
}

// ----- squarefree decomposition (Yun) ----------------------------------------

std::vector<SquarefreePart> squarefree_decomposition(const UniPoly& p,
                                                     Rational* unit) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero");
  UniPoly f = p.monic();
  if (unit) *unit = p.lc();
  std::vector<SquarefreePart> parts;
  if (f.degree() == 0) return parts;

  UniPoly fp = f.derivative();
  UniPoly a = UniPoly::gcd(f, fp);
  UniPoly b = *f.divided_by(a);
  UniPoly c = *fp.divided_by(a);
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly g = UniPoly::gcd(b, d);
    if (g.degree() > 0) parts.push_back({g.monic(), i});
    b = *b.divided_by(g);
    c = *d.divided_by(g);
    d = c - b.derivative();
    ++i;
  }
  return parts;
}

// ----- Sturm sequences --------------------------------------------------------

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& f) {
  std::vector<UniPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto [q, r] = UniPoly::divrem(chain[chain.size() - 2], chain.back());
    chain.push_back(-r);
    if (chain.back().is_zero()) break;
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_at(const UniPoly& f, const Rational& v) { return f.eval(v).sign(); }

int sign_at_inf(const UniPoly& f, bool positive) {
  if (f.is_zero()) return 0;
  int s = f.lc().sign();
  if (!positive && f.degree() % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int count = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

int sturm_root_count(const UniPoly& f, const Rational& a, const Rational& b,
                     bool a_is_neg_inf, bool b_is_pos_inf) {
  UniPoly g = f.monic();
  // Squarefree kernel so multiple roots count once.
  UniPoly sq = UniPoly::gcd(g, g.derivative());
  if (sq.degree() > 0) g = *g.divided_by(sq);
  auto chain = sturm_chain(g);
  std::vector<int> sa, sb;
  sa.reserve(chain.size());
  sb.reserve(chain.size());
  for (const auto& p : chain) {
    sa.push_back(a_is_neg_inf ? sign_at_inf(p, false) : sign_at(p, a));
    sb.push_back(b_is_pos_inf ? sign_at_inf(p, true) : sign_at(p, b));
  }
  return variations(sa) - variations(sb);
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& f) {
  if (f.is_zero()) throw std::domain_error("root isolation of zero polynomial");
  UniPoly g = f.monic();
  UniPoly sq = UniPoly::gcd(g, g.derivative());
  if (sq.degree() > 0) g = *g.divided_by(sq);
  if (g.degree() == 0) return {};

  // Cauchy bound.
  Rational bound(1);
  for (int i = 0; i < g.degree(); ++i) {
    Rational m = g.coeff(i).abs();
    if (m > bound) bound = m;
  }
  bound += Rational(1);

  std::vector<RootInterval> out;
  struct Seg {
    Rational lo, hi;
    int count;
  };
  std::vector<Seg> stack;
  int total = sturm_root_count(g, -bound, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      // Try to pin an exact rational endpoint root.
      if (g.eval(s.hi).is_zero()) {
        out.push_back({s.hi, s.hi});
        continue;
      }
      out.push_back({s.lo, s.hi});
      continue;
    }
    Rational mid = (s.lo + s.hi) / Rational(2);
    if (g.eval(mid).is_zero()) {
      out.push_back({mid, mid});
      // Count strictly left and strictly right of mid: nudge with a margin
      // smaller than the distance between distinct roots in this segment.
      Rational eps = (s.hi - s.lo);
      int left;
      do {
        eps = eps / Rational(2);
        left = sturm_root_count(g, s.lo, mid - eps);
      } while (left + 1 + sturm_root_count(g, mid + eps, s.hi) != s.count);
      if (left > 0) stack.push_back({s.lo, mid - eps, left});
      int right = s.count - 1 - left;
      if (right > 0) stack.push_back({mid + eps, s.hi, right});
    } else {
      int left = sturm_root_count(g, s.lo, mid);
      if (left > 0) stack.push_back({s.lo, mid, left});
      if (s.count - left > 0) stack.push_back({mid, s.hi, s.count - left});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) {
              return x.lo < y.lo;
            });
  // Shrink until pairwise disjoint.
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i].hi > out[i + 1].lo || out[i].hi == out[i + 1].lo) {
      if (!out[i].exact()) out[i] = refine_root(f, out[i], (out[i].hi - out[i].lo) / Rational(4));
      if (!out[i + 1].exact())
        out[i + 1] = refine_root(f, out[i + 1], (out[i + 1].hi - out[i + 1].lo) / Rational(4));
      if (out[i].exact() && out[i + 1].exact()) break;
    }
  }
  return out;
}

RootInterval refine_root(const UniPoly& f, RootInterval iv, const Rational& width) {
  if (iv.exact()) return iv;
  UniPoly g = f.monic();
  UniPoly sq = UniPoly::gcd(g, g.derivative());
  if (sq.degree() > 0) g = *g.divided_by(sq);
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / Rational(2);
    Rational vm = g.eval(mid);
    if (vm.is_zero()) return {mid, mid};
    if (g.eval(iv.lo).sign() * vm.sign() < 0)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

}  // namespace configk3
