#include <algorithm>
#include <functional>
#include <stdexcept>

#include "configk3/factor.hpp"
#include "configk3/linalg.hpp"

namespace configk3 {

namespace {

MultiPoly coeff_of(const MultiPoly& p, Var v, int k) {
  int iv = static_cast<int>(v);
  MultiPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (e[iv] != k) continue;
    Exponents rest = e;
    rest[iv] = 0;
    r += MultiPoly::monomial(rest, c);
  }
  return r;
}

int min_exponent(const MultiPoly& p, Var v) {
  int iv = static_cast<int>(v);
  int m = -1;
  for (const auto& [e, c] : p.terms())
    m = (m < 0) ? e[iv] : std::min(m, int(e[iv]));
  return std::max(m, 0);
}

// Finalizes a factor list against the original polynomial: recomputes
// multiplicities by exact division and the remaining rational unit.
MultiFactorization finalize(const MultiPoly& original,
                            std::vector<MultiPoly> irreducibles) {
  // Dedupe up to normalization.
  std::vector<MultiPoly> uniq;
  for (auto& f : irreducibles) {
    MultiPoly n = f.normalized();
    bool seen = false;
    for (const auto& u : uniq)
      if (u == n) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(n);
  }
  std::sort(uniq.begin(), uniq.end(), [](const MultiPoly& a, const MultiPoly& b) {
    if (a.total_deg() != b.total_deg()) return a.total_deg() < b.total_deg();
    return MultiPoly::compare(a, b) < 0;
  });
  MultiFactorization out;
  MultiPoly rest = original;
  for (const auto& f : uniq) {
    int mult = 0;
    while (true) {
      auto q = rest.divided_by(f);
      if (!q) break;
      rest = *q;
      ++mult;
    }
    if (mult > 0) out.factors.push_back({f, mult});
  }
  if (!rest.is_constant())
    throw std::logic_error("factorization incomplete: nonconstant cofactor " +
                           rest.str());
  out.unit = rest.constant_value();
  return out;
}

MultiPoly homogenize_pair(const MultiPoly& p, Var x, Var y, int target) {
  // Inserts powers of y so every term has degree `target` in {x, y}.
  MultiPoly r;
  int ix = static_cast<int>(x), iy = static_cast<int>(y);
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    int have = e[ix] + e[iy];
    f[iy] = uint16_t(f[iy] + (target - have));
    r += MultiPoly::monomial(f, c);
  }
  return r;
}

MultiPoly homogenize_triple(const MultiPoly& p, Var x, Var y, Var z, int target) {
  MultiPoly r;
  int ix = static_cast<int>(x), iy = static_cast<int>(y), iz = static_cast<int>(z);
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    int have = e[ix] + e[iy] + e[iz];
    f[iz] = uint16_t(f[iz] + (target - have));
    r += MultiPoly::monomial(f, c);
  }
  return r;
}

// ----- (y)-adic series polynomials for the bivariate Hensel lift -----------

// Polynomial in x whose coefficients live in Q[y]/(y^K).
using SP = std::vector<UniPoly>;

UniPoly ytrunc(const UniPoly& p, int K) {
  std::vector<Rational> c;
  for (int i = 0; i < std::min(K, p.degree() + 1); ++i) c.push_back(p.coeff(i));
  return UniPoly(std::move(c));
}

void sp_trim(SP& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int sp_deg(const SP& f) { return int(f.size()) - 1; }

SP sp_mul(const SP& a, const SP& b, int K) {
  if (a.empty() || b.empty()) return {};
  SP c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = c[i + j] + ytrunc(a[i] * b[j], K);
  }
  for (auto& p : c) p = ytrunc(p, K);
  sp_trim(c);
  return c;
}

SP sp_add(const SP& a, const SP& b, int K) {
  SP c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) c[i] = c[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = c[i] + b[i];
  for (auto& p : c) p = ytrunc(p, K);
  sp_trim(c);
  return c;
}

SP sp_sub(const SP& a, const SP& b, int K) {
  SP c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) c[i] = c[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = c[i] - b[i];
  for (auto& p : c) p = ytrunc(p, K);
  sp_trim(c);
  return c;
}

// Division by a divisor whose x-leading coefficient is a unit series
// (here always the constant 1).
void sp_divrem(const SP& a, const SP& d, int K, SP* quot, SP* rem) {
  SP r = a;
  sp_trim(r);
  int dd = sp_deg(d);
  if (dd < 0) throw std::domain_error("sp_divrem: zero divisor");
  if (!(d.back() == UniPoly::constant(Rational(1))))
    throw std::logic_error("sp_divrem: divisor not monic");
  SP q;
  if (sp_deg(r) >= dd) q.assign(size_t(sp_deg(r) - dd) + 1, UniPoly());
  while (sp_deg(r) >= dd) {
    int k = sp_deg(r) - dd;
    UniPoly c = r.back();
    q[size_t(k)] = c;
    for (int i = 0; i <= dd; ++i)
      r[size_t(k + i)] = ytrunc(r[size_t(k + i)] - c * d[size_t(i)], K);
    sp_trim(r);
  }
  if (quot) *quot = q;
  if (rem) *rem = r;
}

SP sp_from_unipoly_x(const UniPoly& p) {
  SP f;
  for (const auto& c : p.coeffs()) f.push_back(UniPoly::constant(c));
  sp_trim(f);
  return f;
}

SP sp_from_multipoly(const MultiPoly& p, Var x, Var y, int K) {
  SP f(size_t(p.degree(x)) + 1);
  int ix = static_cast<int>(x), iy = static_cast<int>(y);
  for (const auto& [e, c] : p.terms()) {
    std::vector<Rational> mono(size_t(e[iy]) + 1, Rational(0));
    mono[size_t(e[iy])] = c;
    f[e[ix]] = f[e[ix]] + UniPoly(std::move(mono));
  }
  for (auto& q : f) q = ytrunc(q, K);
  sp_trim(f);
  return f;
}

MultiPoly sp_to_multipoly(const SP& f, Var x, Var y) {
  MultiPoly p;
  for (size_t i = 0; i < f.size(); ++i) {
    MultiPoly xi = MultiPoly::variable(x).pow(unsigned(i));
    p += f[i].to_multi(y) * xi;
  }
  return p;
}

struct SPPair {
  SP g, h, s, t;
};

// Quadratic Hensel step from y^j to y^(min(2j,K)).
void sp_hensel_step(const SP& f, SPPair& P, int j, int K) {
  int m2 = std::min(2 * j, K);
  SP e = sp_sub(f, sp_mul(P.g, P.h, m2), m2);
  SP q, r;
  sp_divrem(sp_mul(P.s, e, m2), P.h, m2, &q, &r);
  SP gstar = sp_add(P.g, sp_add(sp_mul(P.t, e, m2), sp_mul(q, P.g, m2), m2), m2);
  SP hstar = sp_add(P.h, r, m2);
  SP one{UniPoly::constant(Rational(1))};
  SP b = sp_sub(sp_add(sp_mul(P.s, gstar, m2), sp_mul(P.t, hstar, m2), m2), one, m2);
  SP c, d;
  sp_divrem(sp_mul(P.s, b, m2), hstar, m2, &c, &d);
  SP sstar = sp_sub(P.s, d, m2);
  SP tstar = sp_sub(P.t, sp_add(sp_mul(P.t, b, m2), sp_mul(c, gstar, m2), m2), m2);
  P = {gstar, hstar, sstar, tstar};
}

// Extended Euclid over Q for x-polynomials.
void q_bezout(const UniPoly& a, const UniPoly& b, UniPoly* s, UniPoly* t) {
  UniPoly r0 = a, r1 = b, s0 = UniPoly::constant(Rational(1)), s1,
          t0, t1 = UniPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divrem(r0, r1);
    UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  Rational inv = r0.lc().inverse();
  *s = s0.scaled(inv);
  *t = t0.scaled(inv);
}

std::vector<SP> sp_hensel_tree(const SP& f, std::vector<UniPoly> base, int K) {
  if (base.size() == 1) return {f};
  size_t half = base.size() / 2;
  UniPoly g0 = UniPoly::constant(Rational(1)), h0 = g0;
  for (size_t i = 0; i < half; ++i) g0 = g0 * base[i];
  for (size_t i = half; i < base.size(); ++i) h0 = h0 * base[i];
  UniPoly s0, t0;
  q_bezout(g0, h0, &s0, &t0);
  SPPair P{sp_from_unipoly_x(g0), sp_from_unipoly_x(h0), sp_from_unipoly_x(s0),
           sp_from_unipoly_x(t0)};
  int j = 1;
  while (j < K) {
    sp_hensel_step(f, P, j, K);
    j = std::min(2 * j, K);
  }
  std::vector<UniPoly> left(base.begin(), base.begin() + long(half));
  std::vector<UniPoly> right(base.begin() + long(half), base.end());
  auto lf = sp_hensel_tree(P.g, std::move(left), K);
  auto rf = sp_hensel_tree(P.h, std::move(right), K);
  lf.insert(lf.end(), rf.begin(), rf.end());
  return lf;
}

// Irreducible factors of a squarefree polynomial, primitive and mixed in
// x and y (no pure-x, pure-y or constant factors).
std::vector<MultiPoly> bivariate_squarefree_factors(const MultiPoly& f, Var x,
                                                    Var y) {
  int m = f.degree(x);
  // Good fiber: lc_x survives and the specialized polynomial is squarefree.
  MultiPoly lcx = coeff_of(f, x, m);
  Rational y0;
  bool found = false;
  for (int k = 0; k <= 200 && !found; ++k) {
    long cand = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
    Rational yv(cand);
    if (lcx.evaluate_partial({{y, yv}}).is_zero()) continue;
    MultiPoly sp = f.evaluate_partial({{y, yv}});
    UniPoly u = UniPoly::from_multi(sp, x);
    if (UniPoly::gcd(u, u.derivative()).degree() != 0) continue;
    y0 = yv;
    found = true;
  }
  if (!found) throw std::logic_error("bivariate factor: no good fiber found");

  MultiPoly G = f.substitute(y, MultiPoly::variable(y) + MultiPoly::constant(y0));
  MultiPoly L = coeff_of(G, x, m);  // poly in y
  // Monicize: Gm = x^m + sum_{i<m} coeff_i * L^(m-1-i) * x^i.
  MultiPoly Gm = MultiPoly::variable(x).pow(unsigned(m));
  for (int i = 0; i < m; ++i)
    Gm += coeff_of(G, x, i) * L.pow(unsigned(m - 1 - i)) *
          MultiPoly::variable(x).pow(unsigned(i));

  UniPoly u0 = UniPoly::from_multi(Gm.evaluate_partial({{y, Rational(0)}}), x);
  auto uf = factor_univariate(u0);
  std::vector<MultiPoly> result;
  if (uf.factors.size() == 1) {
    result.push_back(f.normalized());
    return result;
  }
  int K = Gm.degree(y) + 1;
  std::vector<UniPoly> base;
  for (const auto& ff : uf.factors) base.push_back(ff.factor);
  SP spf = sp_from_multipoly(Gm, x, y, K);
  auto lifted = sp_hensel_tree(spf, base, K);

  // Zassenhaus-style recombination, certified by exact division.
  std::vector<int> live(lifted.size());
  for (size_t i = 0; i < lifted.size(); ++i) live[i] = int(i);
  MultiPoly rest = Gm;
  std::vector<MultiPoly> gm_factors;

  auto try_subset = [&](const std::vector<int>& subset) -> bool {
    SP cand{UniPoly::constant(Rational(1))};
    for (int idx : subset) cand = sp_mul(cand, lifted[size_t(idx)], K);
    MultiPoly c = sp_to_multipoly(cand, x, y);
    auto q = rest.divided_by(c);
    if (!q) return false;
    gm_factors.push_back(c);
    rest = *q;
    std::vector<int> next;
    for (int idx : live)
      if (std::find(subset.begin(), subset.end(), idx) == subset.end())
        next.push_back(idx);
    live = next;
    return true;
  };

  size_t s = 1;
  while (2 * s <= live.size()) {
    std::vector<size_t> pos(s);
    std::vector<int> comb(s);
    std::function<bool(size_t, size_t)> rec = [&](size_t i, size_t from) -> bool {
      if (i == s) {
        for (size_t k2 = 0; k2 < s; ++k2) comb[k2] = live[pos[k2]];
        return try_subset(comb);
      }
      for (size_t jj = from; jj + (s - i) <= live.size(); ++jj) {
        pos[i] = jj;
        if (rec(i + 1, jj + 1)) return true;
      }
      return false;
    };
    if (!rec(0, 0)) ++s;
  }
  if (rest.degree(x) > 0) gm_factors.push_back(rest);

  // Map factors of Gm back to factors of f and undo the shift. Substituting
  // x -> L x leaves a pure-y content (a divisor of a power of L) to strip.
  for (const auto& c : gm_factors) {
    MultiPoly w = c.substitute(x, MultiPoly::variable(x) * L);
    MultiPoly cont;
    for (int i = 0; i <= w.degree(x); ++i) {
      MultiPoly ci = coeff_of(w, x, i);
      if (!ci.is_zero()) cont = cont.is_zero() ? ci : MultiPoly::gcd(cont, ci);
      if (cont.is_constant() && !cont.is_zero()) break;
    }
    if (!cont.is_constant()) w = *w.divided_by(cont);
    w = w.substitute(y, MultiPoly::variable(y) - MultiPoly::constant(y0));
    result.push_back(w.normalized());
  }
  return result;
}

}  // namespace

MultiFactorization factor_bivariate(const MultiPoly& f, Var x, Var y) {
  if (f.is_zero()) throw std::domain_error("factor_bivariate: zero polynomial");
  uint32_t allowed = (1u << static_cast<int>(x)) | (1u << static_cast<int>(y));
  if (f.vars_present() & ~allowed)
    throw std::invalid_argument("factor_bivariate: extra variables present");

  std::vector<MultiPoly> irred;
  MultiPoly g = f.normalized();

  if (g.degree(x) == 0 || g.degree(y) == 0) {
    Var only = g.degree(x) == 0 ? y : x;
    if (g.is_constant()) return finalize(f, {});
    auto uf = factor_univariate(UniPoly::from_multi(g, only));
    for (const auto& ff : uf.factors)
      irred.push_back(ff.factor.to_multi(only).normalized());
    return finalize(f, std::move(irred));
  }

  // Pure-y factors: content of the x-coefficients.
  MultiPoly ycont;
  for (int i = 0; i <= g.degree(x); ++i) {
    MultiPoly ci = coeff_of(g, x, i);
    if (!ci.is_zero()) ycont = ycont.is_zero() ? ci : MultiPoly::gcd(ycont, ci);
    if (ycont.is_constant() && !ycont.is_zero()) break;
  }
  if (ycont.degree(y) > 0) {
    auto uf = factor_univariate(UniPoly::from_multi(ycont, y));
    for (const auto& ff : uf.factors)
      irred.push_back(ff.factor.to_multi(y).normalized());
    g = *g.divided_by(ycont);
  }
  // Pure-x factors, symmetrically.
  MultiPoly xcont;
  for (int i = 0; i <= g.degree(y); ++i) {
    MultiPoly ci = coeff_of(g, y, i);
    if (!ci.is_zero()) xcont = xcont.is_zero() ? ci : MultiPoly::gcd(xcont, ci);
    if (xcont.is_constant() && !xcont.is_zero()) break;
  }
  if (xcont.degree(x) > 0) {
    auto uf = factor_univariate(UniPoly::from_multi(xcont, x));
    for (const auto& ff : uf.factors)
      irred.push_back(ff.factor.to_multi(x).normalized());
    g = *g.divided_by(xcont);
  }

  if (g.degree(x) > 0) {
    // Squarefree part w.r.t. x.
    MultiPoly sq = MultiPoly::gcd(g, g.derivative(x));
    MultiPoly gsf = sq.is_constant() ? g : *g.divided_by(sq);
    auto fs = bivariate_squarefree_factors(gsf.normalized(), x, y);
    irred.insert(irred.end(), fs.begin(), fs.end());
    if (!sq.is_constant()) {
      // Factors of the repeated part are among those of gsf; multiplicities
      // are recomputed by finalize.
      auto extra = factor_bivariate(sq, x, y);
      for (const auto& e : extra.factors) irred.push_back(e.factor);
    }
  }
  return finalize(f, std::move(irred));
}

MultiFactorization factor_binary_form(const MultiPoly& f, Var x, Var y) {
  if (f.is_zero()) throw std::domain_error("factor_binary_form: zero form");
  std::vector<MultiPoly> irred;
  MultiPoly g = f.normalized();
  int mx = min_exponent(g, x), my = min_exponent(g, y);
  if (mx > 0) {
    irred.push_back(MultiPoly::variable(x));
    g = *g.divided_by(MultiPoly::variable(x).pow(unsigned(mx)));
  }
  if (my > 0) {
    irred.push_back(MultiPoly::variable(y));
    g = *g.divided_by(MultiPoly::variable(y).pow(unsigned(my)));
  }
  if (!g.is_constant()) {
    int d = g.total_deg();
    MultiPoly dehom = g.substitute(y, MultiPoly::constant(Rational(1)));
    auto uf = factor_univariate(UniPoly::from_multi(dehom, x));
    (void)d;
    for (const auto& ff : uf.factors) {
      MultiPoly h = ff.factor.to_multi(x);
      irred.push_back(homogenize_pair(h, x, y, h.degree(x)).normalized());
    }
  }
  return finalize(f, std::move(irred));
}

MultiFactorization factor_ternary_form(const MultiPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor_ternary_form: zero form");
  const Var A = Var::a, B = Var::b, C = Var::c;
  uint32_t allowed = (1u << 2) | (1u << 3) | (1u << 4);
  if (f.vars_present() & ~allowed)
    throw std::invalid_argument("factor_ternary_form: variables outside a,b,c");

  std::vector<MultiPoly> irred;
  MultiPoly g = f.normalized();
  for (Var v : {A, B, C}) {
    int m = min_exponent(g, v);
    if (m > 0) {
      irred.push_back(MultiPoly::variable(v));
      g = *g.divided_by(MultiPoly::variable(v).pow(unsigned(m)));
    }
  }
  if (!g.is_constant()) {
    uint32_t present = g.vars_present();
    int nvars = __builtin_popcount(present);
    if (nvars == 1) {
      // Power of one variable was removed as content; remaining constant.
      throw std::logic_error("factor_ternary_form: unexpected single variable");
    }
    if (nvars == 2) {
      Var vs[2];
      int k = 0;
      for (int i = 2; i <= 4; ++i)
        if (present & (1u << i)) vs[k++] = static_cast<Var>(i);
      auto bf = factor_binary_form(g, vs[0], vs[1]);
      for (const auto& ff : bf.factors) irred.push_back(ff.factor);
    } else {
      int d = g.total_deg();
      MultiPoly dehom = g.substitute(C, MultiPoly::constant(Rational(1)));
      auto bf = factor_bivariate(dehom, A, B);
      (void)d;
      for (const auto& ff : bf.factors) {
        MultiPoly h =
            homogenize_triple(ff.factor, A, B, C, ff.factor.total_deg());
        irred.push_back(h.normalized());
      }
    }
  }
  return finalize(f, std::move(irred));
}

namespace {

// All degree-1 (in a,b,c) factors of a specialized ternary form, as
// coefficient triples.
std::vector<std::array<Rational, 3>> specialized_lines(const MultiPoly& tern) {
  std::vector<std::array<Rational, 3>> lines;
  auto tf = factor_ternary_form(tern);
  for (const auto& f : tf.factors) {
    if (f.factor.total_deg() != 1) continue;
    std::array<Rational, 3> l{Rational(0), Rational(0), Rational(0)};
    for (const auto& [e, c] : f.factor.terms()) {
      if (e[2] == 1) l[0] = c;
      if (e[3] == 1) l[1] = c;
      if (e[4] == 1) l[2] = c;
    }
    for (int rep = 0; rep < f.multiplicity; ++rep) lines.push_back(l);
  }
  return lines;
}

// Searches for a factor A(u,v)a + B(u,v)b + C(u,v)c of g by specializing
// [u:v] at rational points, collecting lines of the resulting ternary forms
// and solving the linear interpolation conditions. Certified by division.
std::optional<MultiPoly> find_linear_abc_factor(const MultiPoly& g) {
  auto bd = g.bidegree_uv_abc();
  int d = bd.first;

  struct PointData {
    Rational u0;
    std::vector<std::array<Rational, 3>> lines;
  };
  std::vector<PointData> pts;
  bool certified_linefree = false;
  for (int k = 0; int(pts.size()) < 2 * d + 3 && k < 60; ++k) {
    long cand = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
    Rational u0(cand);
    MultiPoly sp = g.evaluate_partial({{Var::u, u0}, {Var::v, Rational(1)}});
    if (sp.is_zero()) continue;
    if (sp.total_deg() != bd.second) continue;  // degenerate fiber
    auto lines = specialized_lines(sp);
    if (lines.empty()) {
      certified_linefree = true;
      break;
    }
    pts.push_back({u0, std::move(lines)});
  }
  if (certified_linefree) return std::nullopt;
  if (int(pts.size()) < 2 * d + 3)
    throw std::logic_error("find_linear_abc_factor: not enough good fibers");

  // Try every choice of one line per specialization point.
  size_t npts = pts.size();
  std::vector<size_t> choice(npts, 0);
  while (true) {
    // Conditions: (A(u_j), B(u_j), C(u_j)) parallel to the chosen line.
    RationalMatrix m;
    for (size_t j = 0; j < npts; ++j) {
      const auto& l = pts[j].lines[choice[j]];
      std::vector<Rational> upow(size_t(d) + 1);
      Rational acc(1);
      for (int i = 0; i <= d; ++i) {
        upow[size_t(i)] = acc;
        acc *= pts[j].u0;
      }
      // Unknowns: A_0..A_d, B_0..B_d, C_0..C_d.
      auto row = [&](int first, int second, const Rational& cf, const Rational& cs) {
        std::vector<Rational> r(3 * size_t(d + 1), Rational(0));
        for (int i = 0; i <= d; ++i) {
          r[size_t(first * (d + 1) + i)] = cf * upow[size_t(i)];
          r[size_t(second * (d + 1) + i)] = cs * upow[size_t(i)];
        }
        m.push_back(std::move(r));
      };
      row(0, 1, l[1], -l[0]);
      row(0, 2, l[2], -l[0]);
      row(1, 2, l[2], -l[1]);
    }
    auto kernel = matrix_kernel(m, 3 * (d + 1));
    for (const auto& v : kernel) {
      MultiPoly cand;
      for (int blk = 0; blk < 3; ++blk) {
        Var target = blk == 0 ? Var::a : (blk == 1 ? Var::b : Var::c);
        for (int i = 0; i <= d; ++i) {
          const Rational& cf = v[size_t(blk * (d + 1) + i)];
          if (cf.is_zero()) continue;
          Exponents e{};
          e[0] = uint16_t(i);          // u^i
          e[1] = uint16_t(d - i);      // v^(d-i)
          e[static_cast<int>(target)] = 1;
          cand += MultiPoly::monomial(e, cf);
        }
      }
      if (cand.is_zero()) continue;
      // The kernel contains every binary-form multiple of the true factor;
      // strip the u,v content to land on the primitive candidate.
      MultiPoly ca = coeff_of(cand, Var::a, 1), cb = coeff_of(cand, Var::b, 1),
                cc = coeff_of(cand, Var::c, 1);
      MultiPoly cont = MultiPoly::gcd(MultiPoly::gcd(ca, cb), cc);
      if (!cont.is_constant()) cand = *cand.divided_by(cont);
      cand = cand.normalized();
      if (g.divisible_by(cand)) return cand;
    }
    // Next combination.
    size_t j = 0;
    while (j < npts) {
      if (++choice[j] < pts[j].lines.size()) break;
      choice[j] = 0;
      ++j;
    }
    if (j == npts) break;
  }
  // Lines exist fiberwise but none interpolates to a global factor: for the
  // bidegrees in scope this certifies irreducibility only after enough
  // fibers, which 2d+3 points provide for a degree-d coefficient ansatz.
  return std::nullopt;
}

}  // namespace

MultiFactorization factor_bihomogeneous(const MultiPoly& f) {
  if (f.is_zero())
    throw std::domain_error("factor_bihomogeneous: zero polynomial");
  (void)f.bidegree_uv_abc();  // validates bihomogeneity

  std::vector<MultiPoly> irred;
  MultiPoly g = f.normalized();

  // Monomial content.
  for (Var v : {Var::u, Var::v, Var::a, Var::b, Var::c}) {
    int m = min_exponent(g, v);
    if (m > 0) {
      irred.push_back(MultiPoly::variable(v));
      g = *g.divided_by(MultiPoly::variable(v).pow(unsigned(m)));
    }
  }

  while (!g.is_constant()) {
    auto bd = g.bidegree_uv_abc();
    // Content over Q[u,v]: gcd of the coefficients of the abc-monomials.
    {
      std::map<std::array<uint16_t, 3>, MultiPoly> by_abc;
      for (const auto& [e, c] : g.terms()) {
        Exponents uvpart{};
        uvpart[0] = e[0];
        uvpart[1] = e[1];
        by_abc[{e[2], e[3], e[4]}] += MultiPoly::monomial(uvpart, c);
      }
      MultiPoly cont;
      for (const auto& [k, poly] : by_abc)
        cont = cont.is_zero() ? poly : MultiPoly::gcd(cont, poly);
      if (!cont.is_constant()) {
        auto bf = factor_binary_form(cont, Var::u, Var::v);
        for (const auto& ff : bf.factors) irred.push_back(ff.factor);
        g = *g.divided_by(cont);
        continue;
      }
    }
    // Content over Q[a,b,c].
    {
      std::map<std::array<uint16_t, 2>, MultiPoly> by_uv;
      for (const auto& [e, c] : g.terms()) {
        Exponents abcpart{};
        abcpart[2] = e[2];
        abcpart[3] = e[3];
        abcpart[4] = e[4];
        by_uv[{e[0], e[1]}] += MultiPoly::monomial(abcpart, c);
      }
      MultiPoly cont;
      for (const auto& [k, poly] : by_uv)
        cont = cont.is_zero() ? poly : MultiPoly::gcd(cont, poly);
      if (!cont.is_constant()) {
        auto tf = factor_ternary_form(cont);
        for (const auto& ff : tf.factors) irred.push_back(ff.factor);
        g = *g.divided_by(cont);
        continue;
      }
    }

    if (bd.second == 0) {
      // Pure u,v polynomial with trivial content: must be constant.
      if (!g.is_constant()) {
        auto bf = factor_binary_form(g, Var::u, Var::v);
        for (const auto& ff : bf.factors) irred.push_back(ff.factor);
        g = MultiPoly::constant(Rational(1));
      }
      break;
    }
    if (bd.second == 1) {
      // A a + B b + C c with coprime coefficients: irreducible.
      irred.push_back(g.normalized());
      break;
    }
    // abc-degree 2 or 3: any factorization contains a linear-in-abc factor.
    auto lin = find_linear_abc_factor(g);
    if (!lin) {
      irred.push_back(g.normalized());
      break;
    }
    irred.push_back(lin->normalized());
    g = *g.divided_by(*lin);
  }

  return finalize(f, std::move(irred));
}

}  // namespace configk3
