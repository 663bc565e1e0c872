#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "configk3/unipoly.hpp"

namespace configk3 {

namespace {

// ----- integer polynomials ----------------------------------------------------

using ZPoly = std::vector<Integer>;  // ascending, back() != 0 unless empty

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return int(p.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ztrim(c);
  return c;
}

// Reduce coefficients into the symmetric range (-m/2, m/2].
ZPoly zsym(const ZPoly& p, const Integer& m) {
  ZPoly r = p;
  Integer half = m / 2;
  for (auto& c : r) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(r);
  return r;
}

ZPoly zmod(const ZPoly& p, const Integer& m) {
  ZPoly r = p;
  for (auto& c : r) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  ztrim(c);
  return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  ztrim(c);
  return c;
}

// Division by a monic divisor, coefficients taken mod m.
void zdivrem_monic_mod(const ZPoly& p, const ZPoly& d, const Integer& m,
                       ZPoly* quot, ZPoly* rem) {
  ZPoly r = zmod(p, m);
  int dd = zdeg(d);
  ZPoly q;
  if (zdeg(r) >= dd) q.assign(size_t(zdeg(r) - dd) + 1, Integer(0));
  while (zdeg(r) >= dd) {
    int k = zdeg(r) - dd;
    Integer c = r.back();
    q[size_t(k)] = c;
    for (int i = 0; i <= dd; ++i) {
      r[size_t(k + i)] -= c * d[size_t(i)];
      r[size_t(k + i)] %= m;
    }
    ztrim(r);
  }
  if (quot) *quot = zmod(q, m);
  if (rem) *rem = zmod(r, m);
}

// ----- arithmetic mod a word prime ---------------------------------------------

using PPoly = std::vector<uint64_t>;

struct Fp {
  uint64_t p;
  uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return uint64_t((__uint128_t)a * b % p);
  }
  uint64_t pow(uint64_t a, Integer e) const {
    uint64_t r = 1;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      r = mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a, Integer(long(p - 2))); }
};

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return int(f.size()) - 1; }

PPoly pmul(const Fp& F, const PPoly& a, const PPoly& b) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    __uint128_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = uint64_t(((__uint128_t)c[i + j] + ai * b[j]) % F.p);
  }
  ptrim(c);
  return c;
}

PPoly psub(const Fp& F, const PPoly& a, const PPoly& b) {
  PPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = F.sub(c[i], b[i]);
  ptrim(c);
  return c;
}

PPoly pmonic(const Fp& F, PPoly f) {
  ptrim(f);
  if (f.empty() || f.back() == 1) return f;
  uint64_t inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, inv);
  return f;
}

void pdivrem(const Fp& F, const PPoly& a, const PPoly& d, PPoly* quot, PPoly* rem) {
  PPoly r = a;
  ptrim(r);
  int dd = pdeg(d);
  uint64_t inv = F.inv(d.back());
  PPoly q;
  if (pdeg(r) >= dd) q.assign(size_t(pdeg(r) - dd) + 1, 0);
  while (pdeg(r) >= dd) {
    int k = pdeg(r) - dd;
    uint64_t c = F.mul(r.back(), inv);
    q[size_t(k)] = c;
    for (int i = 0; i <= dd; ++i) r[size_t(k + i)] = F.sub(r[size_t(k + i)], F.mul(c, d[size_t(i)]));
    ptrim(r);
  }
  if (quot) *quot = q;
  if (rem) *rem = r;
}

PPoly pgcd(const Fp& F, PPoly a, PPoly b) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r;
    pdivrem(F, a, b, nullptr, &r);
    a = b;
    b = r;
  }
  return pmonic(F, a);
}

PPoly pderiv(const Fp& F, const PPoly& f) {
  PPoly d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(F.mul(f[i], uint64_t(i % F.p)));
  ptrim(d);
  return d;
}

PPoly ppowmod(const Fp& F, const PPoly& base, const Integer& e, const PPoly& mod) {
  PPoly r{1};
  PPoly b = base;
  PPoly tmp;
  pdivrem(F, b, mod, nullptr, &tmp);
  b = tmp;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = pmul(F, r, r);
    pdivrem(F, r, mod, nullptr, &tmp);
    r = tmp;
    if (mpz_tstbit(e.get_mpz_t(), i)) {
      r = pmul(F, r, b);
      pdivrem(F, r, mod, nullptr, &tmp);
      r = tmp;
    }
  }
  return r;
}

// Cantor-Zassenhaus: monic squarefree f over F_p into monic irreducibles.
void equal_degree_split(const Fp& F, const PPoly& f, int d,
                        std::mt19937_64& rng, std::vector<PPoly>* out) {
  if (pdeg(f) == d) {
    out->push_back(f);
    return;
  }
  Integer exp(long(F.p));
  mpz_pow_ui(exp.get_mpz_t(), exp.get_mpz_t(), unsigned(d));
  exp = (exp - 1) / 2;
  while (true) {
    PPoly r(size_t(pdeg(f)), 0);
    for (auto& c : r) c = rng() % F.p;
    ptrim(r);
    if (pdeg(r) < 1) continue;
    PPoly s = ppowmod(F, r, exp, f);
    if (s.empty()) continue;
    s[0] = F.sub(s[0], 1);
    PPoly w = pgcd(F, s, f);
    if (pdeg(w) > 0 && pdeg(w) < pdeg(f)) {
      PPoly q;
      pdivrem(F, f, w, &q, nullptr);
      equal_degree_split(F, w, d, rng, out);
      equal_degree_split(F, pmonic(F, q), d, rng, out);
      return;
    }
  }
}

std::vector<PPoly> factor_modp(const Fp& F, PPoly f, std::mt19937_64& rng) {
  std::vector<PPoly> out;
  f = pmonic(F, f);
  PPoly h{0, 1};  // x
  int i = 1;
  while (pdeg(f) >= 2 * i) {
    h = ppowmod(F, h, Integer(long(F.p)), f);
    PPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    ptrim(hx);
    PPoly g = pgcd(F, hx, f);
    if (pdeg(g) > 0) {
      equal_degree_split(F, g, i, rng, &out);
      PPoly q;
      pdivrem(F, f, g, &q, nullptr);
      f = pmonic(F, q);
    }
    ++i;
  }
  if (pdeg(f) > 0) out.push_back(f);
  return out;
}

// ----- Hensel lifting -----------------------------------------------------------

struct HenselPair {
  ZPoly g, h, s, t;  // f = g h, s g + t h = 1 (mod modulus)
};

// One quadratic step: modulus m -> m^2 (von zur Gathen & Gerhard, Alg. 15.10).
void hensel_step(const ZPoly& f, HenselPair& P, const Integer& m) {
  Integer m2 = m * m;
  ZPoly e = zmod(zsub(f, zmul(P.g, P.h)), m2);
  ZPoly q, r;
  zdivrem_monic_mod(zmul(P.s, e), P.h, m2, &q, &r);
  ZPoly gstar = zmod(zadd(P.g, zadd(zmul(P.t, e), zmul(q, P.g))), m2);
  ZPoly hstar = zmod(zadd(P.h, r), m2);
  ZPoly b = zmod(zsub(zadd(zmul(P.s, gstar), zmul(P.t, hstar)), ZPoly{1}), m2);
  ZPoly c, d;
  zdivrem_monic_mod(zmul(P.s, b), hstar, m2, &c, &d);
  ZPoly sstar = zmod(zsub(P.s, d), m2);
  ZPoly tstar = zmod(zsub(P.t, zadd(zmul(P.t, b), zmul(c, gstar))), m2);
  P = {gstar, hstar, sstar, tstar};
}

// Extended Euclid over F_p, returning s,t with s a + t b = 1.
void fp_bezout(const Fp& F, const PPoly& a, const PPoly& b, PPoly* s, PPoly* t) {
  PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    PPoly q, r;
    pdivrem(F, r0, r1, &q, &r);
    PPoly s2 = psub(F, s0, pmul(F, q, s1));
    PPoly t2 = psub(F, t0, pmul(F, q, t1));
    r0 = r1; r1 = r;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  uint64_t inv = F.inv(r0.empty() ? 1 : r0.back());
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  *s = s0;
  *t = t0;
}

ZPoly ppoly_to_z(const PPoly& f) {
  ZPoly z;
  z.reserve(f.size());
  for (auto c : f) z.emplace_back(long(c));
  ztrim(z);
  return z;
}

// Lifts the mod-p factor list of monic f to factors mod p^(2^ceil) >= target.
std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, const Fp& F,
                                    std::vector<PPoly> factors,
                                    const Integer& target) {
  if (factors.size() == 1) {
    Integer m(long(F.p));
    while (m < target) m *= m;
    return {zmod(f, m)};
  }
  size_t half = factors.size() / 2;
  PPoly g{1}, h{1};
  for (size_t i = 0; i < half; ++i) g = pmul(F, g, factors[i]);
  for (size_t i = half; i < factors.size(); ++i) h = pmul(F, h, factors[i]);
  PPoly s, t;
  fp_bezout(F, g, h, &s, &t);
  HenselPair P{ppoly_to_z(g), ppoly_to_z(h), ppoly_to_z(s), ppoly_to_z(t)};
  Integer m(long(F.p));
  while (m < target) {
    hensel_step(zmod(f, m * m), P, m);
    m *= m;
  }
  std::vector<PPoly> left(factors.begin(), factors.begin() + long(half));
  std::vector<PPoly> right(factors.begin() + long(half), factors.end());
  auto lg = hensel_lift_tree(P.g, F, std::move(left), target);
  auto rg = hensel_lift_tree(P.h, F, std::move(right), target);
  lg.insert(lg.end(), rg.begin(), rg.end());
  return lg;
}

// ----- Zassenhaus over Z ---------------------------------------------------------

UniPoly z_to_unipoly(const ZPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.size());
  for (const auto& v : f) c.emplace_back(Rational(v));
  return UniPoly(std::move(c));
}

ZPoly unipoly_to_z(const UniPoly& f) {
  ZPoly z;
  for (const auto& c : f.coeffs()) {
    if (!c.is_integer()) throw std::logic_error("expected integer coefficients");
    z.push_back(c.numerator());
  }
  ztrim(z);
  return z;
}

// Monic squarefree integer polynomial into monic irreducibles over Z.
std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly& f) {
  int n = zdeg(f);
  if (n <= 1) return {f};

  std::mt19937_64 rng(0x51a7b2c9d3e5f701ULL);

  // Pick a prime with squarefree reduction; try a few and keep the one with
  // the fewest modular factors.
  Integer p_cursor = Integer(1) << 30;
  std::vector<PPoly> best;
  Fp bestF{0};
  for (int tries = 0, good = 0; good < 3 && tries < 64; ++tries) {
    mpz_nextprime(p_cursor.get_mpz_t(), p_cursor.get_mpz_t());
    Fp F{p_cursor.get_ui()};
    PPoly fp;
    fp.reserve(f.size());
    for (const auto& c : f) {
      Integer r = c % long(F.p);
      if (r < 0) r += long(F.p);
      fp.push_back(r.get_ui());
    }
    ptrim(fp);
    if (pdeg(fp) != n) continue;  // lc vanished
    if (pdeg(pgcd(F, fp, pderiv(F, fp))) != 0) continue;  // not squarefree
    auto factors = factor_modp(F, fp, rng);
    ++good;
    if (best.empty() || factors.size() < best.size()) {
      best = std::move(factors);
      bestF = F;
    }
    if (best.size() == 1) break;
  }
  if (best.empty()) throw std::logic_error("no usable prime found");
  if (best.size() == 1) return {f};

  // Landau-Mignotte style bound for coefficients of monic factors.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer sn;
  mpz_sqrt(sn.get_mpz_t(), norm2.get_mpz_t());
  Integer B = (sn + 1) * (Integer(1) << unsigned(n + 1)) + 1;

  auto lifted = hensel_lift_tree(f, bestF, best, 2 * B + 1);
  Integer modulus(long(bestF.p));
  while (modulus < 2 * B + 1) modulus *= modulus;

  std::vector<ZPoly> result;
  std::vector<int> live(lifted.size());
  std::iota(live.begin(), live.end(), 0);
  ZPoly rest = f;

  auto try_subset = [&](const std::vector<int>& subset) -> bool {
    ZPoly cand{1};
    for (int idx : subset) cand = zmod(zmul(cand, lifted[size_t(idx)]), modulus);
    cand = zsym(cand, modulus);
    UniPoly c = z_to_unipoly(cand);
    auto quo = z_to_unipoly(rest).divided_by(c);
    if (!quo) return false;
    result.push_back(cand);
    rest = unipoly_to_z(*quo);
    std::vector<int> next;
    for (int idx : live)
      if (std::find(subset.begin(), subset.end(), idx) == subset.end())
        next.push_back(idx);
    live = next;
    return true;
  };

  size_t s = 1;
  while (2 * s <= live.size()) {
    bool found = false;
    std::vector<int> comb(s);
    std::vector<size_t> pos(s);
    // Iterate s-subsets of live in lexicographic order.
    std::function<bool(size_t, size_t)> rec = [&](size_t i, size_t from) -> bool {
      if (i == s) {
        for (size_t k = 0; k < s; ++k) comb[k] = live[pos[k]];
        return try_subset(comb);
      }
      for (size_t j = from; j + (s - i) <= live.size(); ++j) {
        pos[i] = j;
        if (rec(i + 1, j + 1)) return true;
      }
      return false;
    };
    found = rec(0, 0);
    if (!found) ++s;
    // On success re-scan the same size against the reduced factor pool.
  }
  if (zdeg(rest) > 0) result.push_back(rest);
  return result;
}

// Primitive squarefree f (any lc) into primitive irreducibles over Z.
std::vector<ZPoly> factor_primitive_squarefree_z(ZPoly f) {
  std::vector<ZPoly> out;
  ztrim(f);
  // Pull out powers of x.
  size_t shift = 0;
  while (shift < f.size() && f[shift] == 0) ++shift;
  if (shift > 0) {
    for (size_t i = 0; i < shift; ++i) out.push_back(ZPoly{0, 1});
    f.erase(f.begin(), f.begin() + long(shift));
  }
  if (zdeg(f) < 1) return out;
  if (zdeg(f) == 1) {
    out.push_back(f);
    return out;
  }
  Integer L = f.back();
  if (L == 1) {
    auto fs = factor_monic_squarefree_z(f);
    out.insert(out.end(), fs.begin(), fs.end());
    return out;
  }
  // Monicize: g(x) = L^(n-1) f(x/L).
  int n = zdeg(f);
  ZPoly g(f.size());
  Integer pw = 1;
  for (int i = n; i >= 0; --i) {
    g[size_t(i)] = f[size_t(i)] * pw;
    if (i > 0) pw *= L;
  }
  auto gs = factor_monic_squarefree_z(g);
  for (auto& h : gs) {
    // Map back: primitive part of h(L x).
    ZPoly m(h.size());
    Integer q = 1;
    for (size_t i = 0; i < h.size(); ++i) {
      m[i] = h[i] * q;
      q *= L;
    }
    Integer content = 0;
    for (const auto& c : m) content = gcd(content, c);
    if (m.back() < 0) content = -content;
    for (auto& c : m) c /= content;
    out.push_back(m);
  }
  return out;
}

}  // namespace

UniFactorization factor_univariate(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("factor_univariate: zero polynomial");
  UniFactorization out;
  out.unit = p.lc();
  if (p.degree() == 0) return out;

  Rational yun_unit;
  auto parts = squarefree_decomposition(p, &yun_unit);
  for (const auto& part : parts) {
    // Clear denominators to a primitive integer polynomial with positive lc.
    Integer den = 1;
    for (const auto& c : part.part.coeffs()) den = lcm(den, c.denominator());
    ZPoly z;
    for (const auto& c : part.part.coeffs())
      z.push_back(c.numerator() * (den / c.denominator()));
    ztrim(z);
    Integer content = 0;
    for (const auto& c : z) content = gcd(content, c);
    if (z.back() < 0) content = -content;
    for (auto& c : z) c /= content;

    for (const auto& zf : factor_primitive_squarefree_z(z))
      out.factors.push_back({z_to_unipoly(zf).monic(), part.multiplicity});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const UniFactor& a, const UniFactor& b) {
              if (a.factor.degree() != b.factor.degree())
                return a.factor.degree() < b.factor.degree();
              return MultiPoly::compare(a.factor.to_multi(Var::t),
                                        b.factor.to_multi(Var::t)) < 0;
            });
  return out;
}

bool is_irreducible(const UniPoly& p) {
  if (p.degree() < 1) return false;
  auto f = factor_univariate(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace configk3
