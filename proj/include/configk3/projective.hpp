#pragma once

#include <array>
#include <string>

#include "configk3/multipoly.hpp"

namespace configk3 {

enum class ProjRole { point, line };

// Point or line of P^2 with coordinates in the polynomial ring. Comparison is
// projective: up to a nonzero polynomial scalar.
struct ProjElement {
  std::array<MultiPoly, 3> coords;
  ProjRole role = ProjRole::point;

  static ProjElement point(MultiPoly c0, MultiPoly c1, MultiPoly c2);
  static ProjElement line(MultiPoly c0, MultiPoly c1, MultiPoly c2);
  static ProjElement rational_point(const Rational& c0, const Rational& c1,
                                    const Rational& c2);

  bool is_point() const { return role == ProjRole::point; }
  bool has_constant_coords() const;
  // The coordinate triple as rationals; requires constant coordinates.
  std::array<Rational, 3> rational_coords() const;

  // Content-free coordinates, first nonzero coordinate with positive lead.
  ProjElement normalized() const;
  bool projectively_equal(const ProjElement& o) const;

  // Evaluates coordinates at rational values of (a subset of) the variables.
  ProjElement evaluated(const std::vector<std::pair<Var, Rational>>& vals) const;

  std::string str() const;
  static ProjElement parse(const std::string& text, ProjRole role = ProjRole::point);
};

// The line through two points, or the point on two lines (cross product).
// Throws std::invalid_argument on mixed roles or projectively equal inputs.
ProjElement join_or_meet(const ProjElement& x, const ProjElement& y);

// 3x3 determinant of three points' coordinates; zero iff collinear.
MultiPoly collinearity_det(const ProjElement& p, const ProjElement& q,
                           const ProjElement& r);

// Dot product of coordinate triples (incidence form).
MultiPoly incidence_form(const ProjElement& p, const ProjElement& l);

// True iff no three of the four constant points are collinear.
bool is_frame(const ProjElement& p1, const ProjElement& p2,
              const ProjElement& p3, const ProjElement& p4);

// The standard frame e1, e2, e3, [1:1:1].
std::array<ProjElement, 4> standard_frame();

}  // namespace configk3
