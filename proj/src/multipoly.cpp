#include "configk3/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace configk3 {

std::optional<Var> var_from_name(const std::string& name) {
  for (int i = 0; i < kNumVars; ++i)
    if (name == kVarNames[i]) return static_cast<Var>(i);
  return std::nullopt;
}

MultiPoly MultiPoly::constant(const Rational& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(Exponents{}, c);
  return p;
}

MultiPoly MultiPoly::variable(Var v) {
  Exponents e{};
  e[static_cast<int>(v)] = 1;
  return monomial(e, Rational(1));
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Rational& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->second;
}

int MultiPoly::degree(Var v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, int(e[static_cast<int>(v)]));
  return d;
}

int MultiPoly::total_deg() const {
  if (terms_.empty()) return 0;
  return total_degree(terms_.begin()->first);
}

uint32_t MultiPoly::vars_present() const {
  uint32_t mask = 0;
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > 0) mask |= (1u << i);
  return mask;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& l, const MultiPoly& r) {
  MultiPoly p;
  for (const auto& [el, cl] : l.terms_) {
    for (const auto& [er, cr] : r.terms_) {
      Exponents e;
      for (int i = 0; i < kNumVars; ++i) e[i] = uint16_t(el[i] + er[i]);
      p.add_term(e, cl * cr);
    }
  }
  return p;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly p;
  if (c.is_zero()) return p;
  for (const auto& [e, coef] : terms_) p.terms_.emplace(e, coef * c);
  return p;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(Rational(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

int MultiPoly::compare(const MultiPoly& l, const MultiPoly& r) {
  auto il = l.terms_.begin(), ir = r.terms_.begin();
  TermOrderDesc less;
  while (il != l.terms_.end() && ir != r.terms_.end()) {
    if (less(il->first, ir->first)) return 1;
    if (less(ir->first, il->first)) return -1;
    if (il->second != ir->second) return il->second < ir->second ? -1 : 1;
    ++il;
    ++ir;
  }
  if (il != l.terms_.end()) return 1;
  if (ir != r.terms_.end()) return -1;
  return 0;
}

MultiPoly MultiPoly::derivative(Var v) const {
  int iv = static_cast<int>(v);
  MultiPoly p;
  for (const auto& [e, c] : terms_) {
    if (e[iv] == 0) continue;
    Exponents d = e;
    d[iv] -= 1;
    p.add_term(d, c * Rational(long(e[iv])));
  }
  return p;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& value) const {
  int iv = static_cast<int>(v);
  // Group terms by the exponent of v, apply Horner on the grouped polys.
  std::map<int, MultiPoly> by_deg;
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    int d = rest[iv];
    rest[iv] = 0;
    by_deg[d].add_term(rest, c);
  }
  MultiPoly result;
  int prev = -1;
  for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
    if (prev >= 0) result *= value.pow(unsigned(prev - it->first));
    result += it->second;
    prev = it->first;
  }
  if (prev > 0) result *= value.pow(unsigned(prev));
  return result;
}

MultiPoly MultiPoly::evaluate_partial(
    const std::vector<std::pair<Var, Rational>>& vals) const {
  MultiPoly p = *this;
  for (const auto& [v, r] : vals) p = p.substitute(v, MultiPoly::constant(r));
  return p;
}

Rational MultiPoly::evaluate(
    const std::vector<std::pair<Var, Rational>>& vals) const {
  MultiPoly p = evaluate_partial(vals);
  if (!p.is_constant())
    throw std::invalid_argument("evaluate: unbound variables remain");
  return p.constant_value();
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return Rational(1);
  Integer g = 0, l = 1;
  for (const auto& [e, c] : terms_) {
    g = configk3::gcd(g, c.numerator());
    l = configk3::lcm(l, c.denominator());
  }
  if (g == 0) g = 1;
  return Rational(g, l);
}

Rational MultiPoly::unit() const {
  if (terms_.empty()) return Rational(1);
  Rational c = content();
  return leading_coefficient().sign() < 0 ? -c : c;
}

MultiPoly MultiPoly::normalized() const {
  if (terms_.empty()) return *this;
  return scaled(unit().inverse());
}

bool MultiPoly::proportional_to(const MultiPoly& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  return normalized() == o.normalized();
}

std::optional<MultiPoly> MultiPoly::divided_by(const MultiPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  MultiPoly rem = *this;
  MultiPoly quot;
  const Exponents& de = d.leading_exponents();
  const Rational& dc = d.leading_coefficient();
  while (!rem.is_zero()) {
    const Exponents& re = rem.leading_exponents();
    Exponents q;
    for (int i = 0; i < kNumVars; ++i) {
      if (re[i] < de[i]) return std::nullopt;
      q[i] = uint16_t(re[i] - de[i]);
    }
    Rational qc = rem.leading_coefficient() / dc;
    MultiPoly qmono = monomial(q, qc);
    quot += qmono;
    rem -= qmono * d;
  }
  return quot;
}

namespace {

// Pseudo-remainder of p by d in variable v: lc(d)^(dp-dd+1) * p mod d.
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

MultiPoly times_var_pow(const MultiPoly& p, Var v, int k) {
  if (k == 0) return p;
  Exponents e{};
  e[static_cast<int>(v)] = uint16_t(k);
  return p * MultiPoly::monomial(e, Rational(1));
}

MultiPoly pseudo_rem(MultiPoly p, const MultiPoly& d, Var v) {
  int dd = d.degree(v);
  MultiPoly lc_d = coeff_of(d, v, dd);
  while (!p.is_zero() && p.degree(v) >= dd) {
    int dp = p.degree(v);
    MultiPoly lc_p = coeff_of(p, v, dp);
    p = p * lc_d - times_var_pow(lc_p * d, v, dp - dd);
    // The subtraction kills the top v-coefficient.
    if (!p.is_zero() && p.degree(v) >= dp)
      throw std::logic_error("pseudo_rem: degree did not drop");
    if (dp == 0) break;
  }
  return p;
}

// Content of p viewed in R[v], R the ring in the remaining variables.
MultiPoly content_in(const MultiPoly& p, Var v) {
  MultiPoly g;  // zero
  for (int k = 0; k <= p.degree(v); ++k) {
    MultiPoly ck = coeff_of(p, v, k);
    if (!ck.is_zero()) g = MultiPoly::gcd(g, ck);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g.is_zero() ? MultiPoly::constant(Rational(1)) : g;
}

}  // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero()) return q.normalized();
  if (q.is_zero()) return p.normalized();
  uint32_t mask = p.vars_present() | q.vars_present();
  if (mask == 0) return constant(Rational(1));

  // Main variable: the highest-priority symbol present.
  Var v = Var::u;
  for (int i = 0; i < kNumVars; ++i)
    if (mask & (1u << i)) {
      v = static_cast<Var>(i);
      break;
    }

  uint32_t other = mask & ~(1u << static_cast<int>(v));
  if (other == 0) {
    // Genuinely univariate: monic Euclid over Q, then primitivize.
    MultiPoly a = p, b = q;
    while (!b.is_zero()) {
      DivRemResult dr = divrem_univariate(a, b, v);
      a = b;
      b = dr.remainder;
    }
    return a.normalized();
  }

  // Primitive PRS in R[v].
  MultiPoly cp = content_in(p, v), cq = content_in(q, v);
  MultiPoly a = *p.divided_by(cp), b = *q.divided_by(cq);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero()) {
    MultiPoly r = pseudo_rem(a, b, v);
    a = b;
    if (r.is_zero()) {
      b = r;
    } else {
      b = *r.divided_by(content_in(r, v));
    }
  }
  MultiPoly cont_gcd = gcd(cp, cq);
  return (cont_gcd * a.normalized()).normalized();
}

std::pair<int, int> MultiPoly::bidegree_uv_abc() const {
  if (is_zero()) return {0, 0};
  auto deg_uv = [](const Exponents& e) { return int(e[0]) + int(e[1]); };
  auto deg_abc = [](const Exponents& e) {
    return int(e[2]) + int(e[3]) + int(e[4]);
  };
  auto it = terms_.begin();
  int d1 = deg_uv(it->first), d2 = deg_abc(it->first);
  for (const auto& [e, c] : terms_) {
    if (deg_uv(e) != d1 || deg_abc(e) != d2) {
      throw std::invalid_argument(
          "bidegree: polynomial is not bihomogeneous; offending term exponents "
          "(" + MultiPoly::monomial(e, c).str() + ") vs leading (" +
          MultiPoly::monomial(it->first, it->second).str() + ")");
    }
  }
  return {d1, d2};
}

bool MultiPoly::is_bihomogeneous_uv_abc() const {
  try {
    bidegree_uv_abc();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::vector<Rational> MultiPoly::dense_coeffs(Var v) const {
  uint32_t extra = vars_present() & ~(1u << static_cast<int>(v));
  if (extra != 0)
    throw std::invalid_argument("dense_coeffs: polynomial is not univariate");
  std::vector<Rational> out(size_t(degree(v)) + 1, Rational(0));
  int iv = static_cast<int>(v);
  for (const auto& [e, c] : terms_) out[e[iv]] = c;
  return out;
}

MultiPoly MultiPoly::from_dense(Var v, const std::vector<Rational>& coeffs) {
  MultiPoly p;
  int iv = static_cast<int>(v);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    Exponents e{};
    e[iv] = uint16_t(i);
    p.terms_.emplace(e, coeffs[i]);
  }
  return p;
}

DivRemResult divrem_univariate(const MultiPoly& p, const MultiPoly& d, Var v) {
  if (d.is_zero()) throw std::domain_error("divrem: zero divisor");
  int dd = d.degree(v);
  MultiPoly rem = p, quot;
  int iv = static_cast<int>(v);
  while (!rem.is_zero() && rem.degree(v) >= dd) {
    int dp = rem.degree(v);
    MultiPoly lc_p = coeff_of(rem, v, dp);
    MultiPoly lc_d = coeff_of(d, v, dd);
    if (!lc_d.is_constant())
      throw std::invalid_argument("divrem: divisor leading coeff not rational");
    Exponents shift{};
    shift[iv] = uint16_t(dp - dd);
    MultiPoly qterm =
        lc_p * MultiPoly::monomial(shift, lc_d.constant_value().inverse());
    quot += qterm;
    rem -= qterm * d;
    if (!rem.is_zero() && rem.degree(v) == dp)
      throw std::logic_error("divrem: degree did not drop");
  }
  return {quot, rem};
}

// ----- printing -------------------------------------------------------------

namespace {

void append_term(std::ostringstream& out, const Exponents& e, const Rational& c,
                 bool first) {
  Rational mag = c.abs();
  if (first) {
    if (c.sign() < 0) out << "-";
  } else {
    out << (c.sign() < 0 ? " - " : " + ");
  }
  bool has_vars = total_degree(e) > 0;
  bool coef_shown = !(mag.is_one() && has_vars);
  if (coef_shown) out << mag.str();
  bool need_star = coef_shown;
  for (int i = 0; i < kNumVars; ++i) {
    if (e[i] == 0) continue;
    if (need_star) out << "*";
    out << kVarNames[i];
    if (e[i] > 1) out << "^" << e[i];
    need_star = true;
  }
}

}  // namespace

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_term(out, e, c, first);
    first = false;
  }
  return out.str();
}

// ----- parsing --------------------------------------------------------------

class MultiPolyParser {
 public:
  explicit MultiPolyParser(const std::string& s) : s_(s) {}

  MultiPoly parse() {
    MultiPoly p = expression();
    skip_ws();
    if (pos_ != s_.size())
      throw std::invalid_argument("polynomial parse error at '" +
                                  s_.substr(pos_) + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  MultiPoly expression() {
    bool neg = false;
    skip_ws();
    while (true) {
      if (eat('-')) neg = !neg;
      else if (eat('+')) continue;
      else break;
    }
    MultiPoly p = term();
    if (neg) p = -p;
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        MultiPoly q = term();
        if (c == '+') p += q; else p -= q;
      } else {
        break;
      }
    }
    return p;
  }

  MultiPoly term() {
    MultiPoly p = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p *= factor();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        // Implicit multiplication (e.g. "2t" or "u(v+1)").
        p *= factor();
      } else {
        break;
      }
    }
    return p;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      unsigned e = parse_uint();
      base = base.pow(e);
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    if (eat('(')) {
      MultiPoly p = expression();
      if (!eat(')')) throw std::invalid_argument("expected ')'");
      return p;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = parse_integer();
      if (peek() == '/') {
        size_t save = pos_;
        ++pos_;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          Integer den = parse_integer();
          return MultiPoly::constant(Rational(num, den));
        }
        pos_ = save;
      }
      return MultiPoly::constant(Rational(num, Integer(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name(1, c);
      auto v = var_from_name(name);
      if (!v) throw std::invalid_argument("unknown variable '" + name + "'");
      ++pos_;
      return MultiPoly::variable(*v);
    }
    throw std::invalid_argument("unexpected character in polynomial");
  }

  Integer parse_integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) throw std::invalid_argument("expected integer");
    return Integer(s_.substr(start, pos_ - start));
  }

  unsigned parse_uint() {
    Integer n = parse_integer();
    return unsigned(n.get_ui());
  }

  const std::string& s_;
  size_t pos_ = 0;
};

MultiPoly MultiPoly::parse(const std::string& text) {
  return MultiPolyParser(text).parse();
}

}  // namespace configk3
