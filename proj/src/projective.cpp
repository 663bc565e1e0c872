#include "configk3/projective.hpp"

#include <stdexcept>

namespace configk3 {

ProjElement ProjElement::point(MultiPoly c0, MultiPoly c1, MultiPoly c2) {
  ProjElement e{{std::move(c0), std::move(c1), std::move(c2)}, ProjRole::point};
  if (e.coords[0].is_zero() && e.coords[1].is_zero() && e.coords[2].is_zero())
    throw std::invalid_argument("ProjElement: zero coordinate triple");
  return e;
}

ProjElement ProjElement::line(MultiPoly c0, MultiPoly c1, MultiPoly c2) {
  ProjElement e = point(std::move(c0), std::move(c1), std::move(c2));
  e.role = ProjRole::line;
  return e;
}

ProjElement ProjElement::rational_point(const Rational& c0, const Rational& c1,
                                        const Rational& c2) {
  return point(MultiPoly::constant(c0), MultiPoly::constant(c1),
               MultiPoly::constant(c2));
}

bool ProjElement::has_constant_coords() const {
  return coords[0].is_constant() && coords[1].is_constant() &&
         coords[2].is_constant();
}

std::array<Rational, 3> ProjElement::rational_coords() const {
  if (!has_constant_coords())
    throw std::logic_error("rational_coords: symbolic coordinates");
  return {coords[0].constant_value(), coords[1].constant_value(),
          coords[2].constant_value()};
}

ProjElement ProjElement::normalized() const {
  MultiPoly g = MultiPoly::gcd(MultiPoly::gcd(coords[0], coords[1]), coords[2]);
  ProjElement e = *this;
  if (!g.is_zero() && !(g.is_constant() && g.constant_value().is_one()))
    for (auto& c : e.coords) c = *c.divided_by(g);
  // Joint rational content: gcd of numerator contents over lcm of denominators.
  Integer gn = 0, ld = 1;
  for (const auto& c : e.coords) {
    if (c.is_zero()) continue;
    Rational cont = c.content();
    gn = configk3::gcd(gn, cont.numerator());
    ld = configk3::lcm(ld, cont.denominator());
  }
  if (gn != 0) {
    Rational scale(ld, gn);
    for (auto& c : e.coords) c = c.scaled(scale);
  }
  for (const auto& c : e.coords) {
    if (c.is_zero()) continue;
    if (c.leading_coefficient().sign() < 0)
      for (auto& d : e.coords) d = -d;
    break;
  }
  return e;
}

bool ProjElement::projectively_equal(const ProjElement& o) const {
  if (role != o.role) return false;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    if (coords[i] * o.coords[j] != coords[j] * o.coords[i]) return false;
  }
  return true;
}

ProjElement ProjElement::evaluated(
    const std::vector<std::pair<Var, Rational>>& vals) const {
  ProjElement e = *this;
  for (auto& c : e.coords) c = c.evaluate_partial(vals);
  return e;
}

std::string ProjElement::str() const {
  return "[" + coords[0].str() + ":" + coords[1].str() + ":" + coords[2].str() +
         "]";
}

ProjElement ProjElement::parse(const std::string& text, ProjRole role) {
  size_t open = text.find('['), close = text.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close <= open)
    throw std::invalid_argument("ProjElement: expected [p:q:r]");
  std::string inner = text.substr(open + 1, close - open - 1);
  std::vector<std::string> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ':' && depth == 0) {
      parts.push_back(inner.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(inner.substr(start));
  if (parts.size() != 3)
    throw std::invalid_argument("ProjElement: expected three coordinates");
  ProjElement e = point(MultiPoly::parse(parts[0]), MultiPoly::parse(parts[1]),
                        MultiPoly::parse(parts[2]));
  e.role = role;
  return e;
}

ProjElement join_or_meet(const ProjElement& x, const ProjElement& y) {
  if (x.role != y.role)
    throw std::invalid_argument("join_or_meet: mixed roles");
  MultiPoly c0 = x.coords[1] * y.coords[2] - x.coords[2] * y.coords[1];
  MultiPoly c1 = x.coords[2] * y.coords[0] - x.coords[0] * y.coords[2];
  MultiPoly c2 = x.coords[0] * y.coords[1] - x.coords[1] * y.coords[0];
  if (c0.is_zero() && c1.is_zero() && c2.is_zero())
    throw std::invalid_argument("join_or_meet: projectively equal inputs");
  ProjElement e{{std::move(c0), std::move(c1), std::move(c2)},
                x.role == ProjRole::point ? ProjRole::line : ProjRole::point};
  return e.normalized();
}

MultiPoly collinearity_det(const ProjElement& p, const ProjElement& q,
                           const ProjElement& r) {
  const auto& a = p.coords;
  const auto& b = q.coords;
  const auto& c = r.coords;
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

MultiPoly incidence_form(const ProjElement& p, const ProjElement& l) {
  return p.coords[0] * l.coords[0] + p.coords[1] * l.coords[1] +
         p.coords[2] * l.coords[2];
}

bool is_frame(const ProjElement& p1, const ProjElement& p2,
              const ProjElement& p3, const ProjElement& p4) {
  const ProjElement* ps[4] = {&p1, &p2, &p3, &p4};
  for (const auto* p : ps)
    if (!p->has_constant_coords())
      throw std::invalid_argument("is_frame: symbolic coordinates");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (collinearity_det(*ps[i], *ps[j], *ps[k]).is_zero()) return false;
  return true;
}

std::array<ProjElement, 4> standard_frame() {
  return {ProjElement::rational_point(1, 0, 0),
          ProjElement::rational_point(0, 1, 0),
          ProjElement::rational_point(0, 0, 1),
          ProjElement::rational_point(1, 1, 1)};
}

}  // namespace configk3
