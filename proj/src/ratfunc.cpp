#include "configk3/ratfunc.hpp"

#include <cctype>
#include <stdexcept>

namespace configk3 {

RatFunc::RatFunc(UniPoly n, UniPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = UniPoly::constant(Rational(1));
    return;
  }
  UniPoly g = UniPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = *num_.divided_by(g);
    den_ = *den_.divided_by(g);
  }
  Rational lc = den_.lc();
  if (!lc.is_one()) {
    Rational inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc operator+(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.den_ + r.num_ * l.den_, l.den_ * r.den_);
}

RatFunc operator-(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.den_ - r.num_ * l.den_, l.den_ * r.den_);
}

RatFunc operator*(const RatFunc& l, const RatFunc& r) {
  return RatFunc(l.num_ * r.num_, l.den_ * r.den_);
}

RatFunc operator/(const RatFunc& l, const RatFunc& r) {
  if (r.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(l.num_ * r.den_, l.den_ * r.num_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc result(Rational(1));
  RatFunc base = *this;
  unsigned e = unsigned(n);
  while (e > 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

std::optional<Rational> RatFunc::eval(const Rational& v) const {
  Rational d = den_.eval(v);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(v) / d;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(),
                 den_ * den_);
}

RatFunc RatFunc::at_inverse_t() const {
  // f(1/t) = (rev(num) * t^(dd)) / (rev(den) * t^(dn)) after clearing t powers.
  int dn = num_.degree(), dd = den_.degree();
  if (num_.is_zero()) return RatFunc();
  UniPoly n = num_.reversed();
  UniPoly d = den_.reversed();
  if (dn > dd)
    d = d.shifted(dn - dd);
  else if (dd > dn)
    n = n.shifted(dd - dn);
  return RatFunc(n, d);
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  // Horner over Q(t) for numerator and denominator separately.
  auto eval_poly = [&](const UniPoly& p) {
    RatFunc acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
      acc = acc * g + RatFunc(*it);
    return acc;
  };
  return eval_poly(num_) / eval_poly(den_);
}

std::optional<RatFunc> RatFunc::sqrt_exact() const {
  if (is_zero()) return RatFunc();
  // num and den are coprime with den monic: both must be squares up to the
  // rational unit of the numerator.
  auto sqrt_poly = [](const UniPoly& f) -> std::optional<UniPoly> {
    Rational unit;
    auto parts = squarefree_decomposition(f, &unit);
    auto su = unit.sqrt_exact();
    if (!su) return std::nullopt;
    UniPoly r = UniPoly::constant(*su);
    for (const auto& pt : parts) {
      if (pt.multiplicity % 2 != 0) return std::nullopt;
      r = r * pt.part.pow(unsigned(pt.multiplicity / 2));
    }
    return r;
  };
  auto sn = sqrt_poly(num_);
  if (!sn) return std::nullopt;
  auto sd = sqrt_poly(den_);
  if (!sd) return std::nullopt;
  return RatFunc(*sn, *sd);
}

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str(Var::t);
  return "(" + num_.str(Var::t) + ")/(" + den_.str(Var::t) + ")";
}

RatFunc RatFunc::parse(const std::string& text) {
  // Accepts "poly" or "(poly)/(poly)".
  auto depth_zero_slash = [&]() -> size_t {
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      else if (text[i] == ')') --depth;
      else if (text[i] == '/' && depth == 0) {
        // Distinguish rational literals like 3/4: a slash following a digit
        // with a digit after it and no parentheses context is a literal.
        bool digit_before = i > 0 && std::isdigit((unsigned char)text[i - 1]);
        bool digit_after =
            i + 1 < text.size() && std::isdigit((unsigned char)text[i + 1]);
        if (!(digit_before && digit_after)) return i;
      }
    }
    return std::string::npos;
  };
  size_t slash = depth_zero_slash();
  if (slash == std::string::npos) {
    MultiPoly p = MultiPoly::parse(text);
    return RatFunc(UniPoly::from_multi(p, Var::t));
  }
  MultiPoly n = MultiPoly::parse(text.substr(0, slash));
  MultiPoly d = MultiPoly::parse(text.substr(slash + 1));
  return RatFunc(UniPoly::from_multi(n, Var::t), UniPoly::from_multi(d, Var::t));
}

int Place::valuation(const UniPoly& f) const {
  if (f.is_zero()) throw std::domain_error("valuation of zero");
  if (!finite) return -f.degree();
  int v = 0;
  UniPoly g = f;
  while (true) {
    auto [q, r] = UniPoly::divrem(g, poly);
    if (!r.is_zero()) break;
    g = q;
    ++v;
  }
  return v;
}

int Place::valuation(const RatFunc& f) const {
  if (f.is_zero()) throw std::domain_error("valuation of zero");
  return valuation(f.num()) - valuation(f.den());
}

bool Place::less(const Place& l, const Place& r) {
  if (l.finite != r.finite) return l.finite;
  if (!l.finite) return false;
  if (l.poly.degree() != r.poly.degree())
    return l.poly.degree() < r.poly.degree();
  return MultiPoly::compare(l.poly.to_multi(Var::t), r.poly.to_multi(Var::t)) < 0;
}

std::string Place::str() const {
  if (!finite) return "infinity";
  // Primitive-integer rendering, e.g. "16*t^2 - 31*t + 16".
  return poly.to_multi(Var::t).normalized().str();
}

UniPoly ResidueField::inv(const UniPoly& x) const {
  UniPoly r0 = pi_, r1 = reduce(x);
  if (r1.is_zero()) throw std::domain_error("ResidueField: inverse of zero");
  UniPoly t0, t1 = UniPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divrem(r0, r1);
    UniPoly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t2;
  }
  if (r0.degree() != 0)
    throw std::domain_error("ResidueField: modulus not irreducible vs input");
  return reduce(t0.scaled(r0.coeff(0).inverse()));
}

std::optional<UniPoly> ResidueField::reduce(const RatFunc& f) const {
  UniPoly d = reduce(f.den());
  if (d.is_zero()) return std::nullopt;
  return mul(reduce(f.num()), inv(d));
}

}  // namespace configk3
