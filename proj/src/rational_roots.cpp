#include <algorithm>
#include <cstdint>

#include "configk3/unipoly.hpp"

namespace configk3 {

namespace {

uint64_t mod_of(const Integer& c, uint64_t p) {
  Integer r = c % long(p);
  if (r < 0) r += long(p);
  return r.get_ui();
}

struct Fp {
  uint64_t p;
  uint64_t mul(uint64_t a, uint64_t b) const {
    return uint64_t((__uint128_t)a * b % p);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
};

using PP = std::vector<uint64_t>;

void ptrim(PP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PP pmul(const Fp& F, const PP& a, const PP& b) {
  if (a.empty() || b.empty()) return {};
  PP c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = uint64_t(((__uint128_t)c[i + j] + (__uint128_t)a[i] * b[j]) % F.p);
  }
  ptrim(c);
  return c;
}

void pdivrem(const Fp& F, PP a, const PP& d, PP* rem) {
  uint64_t inv = F.inv(d.back());
  while (a.size() >= d.size()) {
    uint64_t c = F.mul(a.back(), inv);
    size_t off = a.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i)
      a[off + i] = F.sub(a[off + i], F.mul(c, d[i]));
    ptrim(a);
    if (a.empty()) break;
  }
  *rem = a;
}

PP pgcd(const Fp& F, PP a, PP b) {
  while (!b.empty()) {
    PP r;
    pdivrem(F, a, b, &r);
    a = b;
    b = r;
  }
  if (!a.empty() && a.back() != 1) {
    uint64_t inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

PP ppowmod_x(const Fp& F, uint64_t e, const PP& mod) {
  // x^e mod `mod`
  PP r{1}, b{0, 1};
  PP tmp;
  pdivrem(F, b, mod, &tmp);
  b = tmp;
  while (e) {
    if (e & 1) {
      r = pmul(F, r, b);
      pdivrem(F, r, mod, &tmp);
      r = tmp;
    }
    b = pmul(F, b, b);
    pdivrem(F, b, mod, &tmp);
    b = tmp;
    e >>= 1;
  }
  return r;
}

// Roots in F_p of a squarefree polynomial: split gcd(f, x^p - x) by the
// quadratic-character trick.
void split_linear(const Fp& F, const PP& f, uint64_t shift,
                  std::vector<uint64_t>* out) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    out->push_back(F.mul(F.sub(F.p, f[0]), F.inv(f[1])));
    return;
  }
  // f(x + shift) trick realized by gcd with (x)^((p-1)/2) - 1 after random
  // translation: iterate shifts deterministically.
  for (uint64_t s = shift;; ++s) {
    // g = gcd(f(x), (x + s)^((p-1)/2) - 1)
    PP xs{s % F.p, 1};
    PP pw{1};
    PP tmp;
    uint64_t e = (F.p - 1) / 2;
    PP base = xs;
    pdivrem(F, base, f, &tmp);
    base = tmp;
    while (e) {
      if (e & 1) {
        pw = pmul(F, pw, base);
        pdivrem(F, pw, f, &tmp);
        pw = tmp;
      }
      base = pmul(F, base, base);
      pdivrem(F, base, f, &tmp);
      base = tmp;
      e >>= 1;
    }
    if (pw.empty())
      pw = PP{F.p - 1};
    else if (pw.size() >= 1) {
      pw[0] = F.sub(pw[0], 1);
      ptrim(pw);
    }
    if (pw.empty()) continue;
    PP g = pgcd(F, f, pw);
    if (g.size() > 1 && g.size() < f.size()) {
      PP q;
      // q = f / g
      PP r;
      {
        // monic division
        PP a = f;
        uint64_t inv = F.inv(g.back());
        PP quot(a.size() - g.size() + 1, 0);
        while (a.size() >= g.size()) {
          uint64_t c = F.mul(a.back(), inv);
          quot[a.size() - g.size()] = c;
          size_t off = a.size() - g.size();
          for (size_t i = 0; i < g.size(); ++i)
            a[off + i] = F.sub(a[off + i], F.mul(c, g[i]));
          ptrim(a);
          if (a.empty()) break;
        }
        q = quot;
        ptrim(q);
        r = a;
      }
      split_linear(F, g, s + 1, out);
      split_linear(F, q, s + 1, out);
      return;
    }
  }
}

std::vector<uint64_t> roots_mod_p(const Fp& F, const PP& f) {
  // Linear-factor part: gcd(f, x^p - x).
  PP xp = ppowmod_x(F, F.p, f);
  // xp - x
  PP xpx = xp;
  if (xpx.size() < 2) xpx.resize(2, 0);
  xpx[1] = F.sub(xpx[1], 1);
  ptrim(xpx);
  std::vector<uint64_t> roots;
  if (xpx.empty()) {
    split_linear(F, f, 1, &roots);
    return roots;
  }
  PP g = pgcd(F, f, xpx);
  if (g.size() <= 1) return roots;
  split_linear(F, g, 1, &roots);
  return roots;
}

// Rational reconstruction: u/v = r (mod M) with |u| <= bn, 0 < v <= bd.
std::optional<Rational> rational_reconstruct(const Integer& r, const Integer& M,
                                             const Integer& bn, const Integer& bd) {
  Integer r0 = M, r1 = r % M;
  if (r1 < 0) r1 += M;
  Integer t0 = 0, t1 = 1;
  while (r1 > bn) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  Integer u = r1, v = t1;
  if (v < 0) {
    v = -v;
    u = -u;
  }
  if (v > bd) return std::nullopt;
  if (gcd(abs(u), v) != 1) return std::nullopt;
  return Rational(u, v);
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& p) {
  std::vector<Rational> out;
  if (p.is_zero() || p.degree() < 1) return out;

  // Squarefree kernel: every rational root becomes simple.
  UniPoly q = p.monic();
  UniPoly sq = UniPoly::gcd(q, q.derivative());
  if (sq.degree() > 0) q = *q.divided_by(sq);

  // Integer primitive form.
  Integer den = 1;
  for (const auto& c : q.coeffs()) den = lcm(den, c.denominator());
  std::vector<Integer> z;
  for (const auto& c : q.coeffs()) z.push_back(c.numerator() * (den / c.denominator()));
  while (!z.empty() && z.back() == 0) z.pop_back();
  Integer content = 0;
  for (const auto& c : z) content = gcd(content, c);
  for (auto& c : z) c /= content;

  // Strip x = 0 roots.
  size_t shift = 0;
  while (shift < z.size() && z[shift] == 0) ++shift;
  if (shift > 0) {
    out.push_back(Rational(0));
    z.erase(z.begin(), z.begin() + long(shift));
  }
  if (z.size() <= 1) return out;

  // Coefficient bounds: |num| <= |lc| + max |coeff|, den | lc.
  Integer maxc = 0;
  for (const auto& c : z) {
    Integer a = abs(c);
    if (a > maxc) maxc = a;
  }
  Integer bn = abs(z.back()) + maxc;
  Integer bd = abs(z.back());

  // Prime with squarefree reduction.
  uint64_t primes[] = {1000000007ULL, 998244353ULL, 2147483647ULL,
                       1000000009ULL, 1000000021ULL};
  for (uint64_t prime : primes) {
    Fp F{prime};
    PP fp;
    for (const auto& c : z) fp.push_back(mod_of(c, prime));
    ptrim(fp);
    if (fp.size() != z.size()) continue;  // lc vanished
    // Squarefree mod p?
    PP d;
    for (size_t i = 1; i < fp.size(); ++i)
      d.push_back(F.mul(fp[i], uint64_t(i % prime)));
    ptrim(d);
    if (d.empty()) continue;
    if (pgcd(F, fp, d).size() > 1) continue;

    auto roots = roots_mod_p(F, fp);
    if (roots.empty()) return out;

    // Target modulus beyond the reconstruction bound.
    Integer M{long(prime)};
    Integer target = 2 * bn * bd + 1;

    for (uint64_t r0 : roots) {
      // Newton lifting of the simple root.
      Integer x{long(r0)};
      Integer mod{long(prime)};
      auto eval_mod = [&](const std::vector<Integer>& poly, const Integer& at,
                          const Integer& m) {
        Integer acc = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
          acc = (acc * at + *it) % m;
        }
        if (acc < 0) acc += m;
        return acc;
      };
      std::vector<Integer> deriv;
      for (size_t i = 1; i < z.size(); ++i) deriv.push_back(z[i] * long(i));
      while (mod < target) {
        mod = mod * mod;
        Integer fx = eval_mod(z, x, mod);
        Integer fpx = eval_mod(deriv, x, mod);
        Integer g, s, tdummy;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tdummy.get_mpz_t(),
                   fpx.get_mpz_t(), mod.get_mpz_t());
        if (g != 1) break;  // not liftable (should not happen for simple roots)
        x = (x - fx * s) % mod;
        if (x < 0) x += mod;
      }
      if (mod < target) continue;
      auto cand = rational_reconstruct(x, mod, bn, bd);
      if (!cand) continue;
      if (!p.eval(*cand).is_zero()) continue;
      if (std::find(out.begin(), out.end(), *cand) == out.end())
        out.push_back(*cand);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // No usable prime: fall back to full factorization (tiny inputs only).
  auto fac = factor_univariate(p);
  for (const auto& g : fac.factors)
    if (g.factor.degree() == 1) out.push_back(-g.factor.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace configk3
