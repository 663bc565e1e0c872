#include "configk3/plan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace configk3 {

std::string ConstructionPlan::str() const {
  std::ostringstream out;
  out << "frame " << frame_points[0] << "," << frame_points[1] << ","
      << frame_points[2] << "," << frame_points[3] << "; on-line "
      << on_line_point << "; free " << free_point << "; steps";
  for (const auto& s : steps)
    out << " " << s.target << "=(" << s.line1[0] << s.line1[1] << ")x("
        << s.line2[0] << s.line2[1] << ")";
  return out.str();
}

namespace {

// Greedy closure: resolve the lowest unplaced point whose two configured
// lines are determined; among determined lines prefer the ones whose other
// two points were placed earliest (then lexicographic order).
bool greedy_close(const Configuration& c, ConstructionPlan& plan) {
  std::vector<int> placed_time(size_t(c.n), -1);
  int clock = 0;
  for (int p : plan.frame_points) placed_time[size_t(p)] = clock;
  placed_time[size_t(plan.on_line_point)] = clock;
  placed_time[size_t(plan.free_point)] = clock;

  std::set<std::array<int, 3>> consumed;
  {
    std::array<int, 3> base{plan.frame_points[1], plan.frame_points[2],
                            plan.on_line_point};
    std::sort(base.begin(), base.end());
    consumed.insert(base);
  }

  int placed = 6;
  while (placed < c.n) {
    bool progress = false;
    for (int p = 0; p < c.n && !progress; ++p) {
      if (placed_time[size_t(p)] >= 0) continue;
      struct Cand {
        int latest;
        std::array<int, 2> pair;
        std::array<int, 3> line;
      };
      std::vector<Cand> cands;
      for (int li : c.lines_through(p)) {
        const auto& l = c.lines[size_t(li)];
        std::array<int, 2> pair{};
        int k = 0;
        bool ok = true;
        for (int q : l) {
          if (q == p) continue;
          if (placed_time[size_t(q)] < 0) ok = false;
          else pair[size_t(k++)] = q;
        }
        if (!ok || k != 2) continue;
        cands.push_back({std::max(placed_time[size_t(pair[0])],
                                  placed_time[size_t(pair[1])]),
                         pair, l});
      }
      if (cands.size() < 2) continue;
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.latest != b.latest) return a.latest < b.latest;
        return a.pair < b.pair;
      });
      ++clock;
      placed_time[size_t(p)] = clock;
      plan.steps.push_back({p, cands[0].pair, cands[1].pair});
      consumed.insert(cands[0].line);
      consumed.insert(cands[1].line);
      ++placed;
      progress = true;
    }
    if (!progress) return false;
  }
  plan.residual_lines.clear();
  for (const auto& l : c.lines)
    if (!consumed.count(l)) plan.residual_lines.push_back(l);
  return plan.residual_lines.size() == 1;
}

bool no_three_collinear(const Configuration& c, const std::array<int, 4>& pts) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (c.has_line(pts[size_t(i)], pts[size_t(j)], pts[size_t(k)]))
          return false;
  return true;
}

std::vector<ConstructionPlan> plan_search(const Configuration& c,
                                          size_t max_count) {
  auto rep = validate_n3(c);
  if (!rep.ok || c.n != 10)
    throw std::invalid_argument("find_plan: input is not a valid 10_3 configuration");

  std::vector<ConstructionPlan> out;

  // The Sturmfels construction for the built-in labeling of L_V comes first
  // so the classical parameterization is reproduced verbatim.
  if (c == builtin_lv()) {
    ConstructionPlan pinned;
    pinned.config = c;
    pinned.frame_points = {1, 2, 3, 5};
    pinned.on_line_point = 7;
    pinned.free_point = 6;
    if (greedy_close(c, pinned)) out.push_back(pinned);
  }

  std::vector<int> subset{0, 1, 2, 3};
  // Lexicographic over 4-subsets, then slot assignments, then free points.
  std::vector<std::array<int, 4>> subsets;
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b)
      for (int d = b + 1; d < 10; ++d)
        for (int e = d + 1; e < 10; ++e) subsets.push_back({a, b, d, e});

  for (const auto& sub : subsets) {
    if (out.size() >= max_count) break;
    if (!no_three_collinear(c, sub)) continue;
    std::array<int, 4> perm = sub;
    std::sort(perm.begin(), perm.end());
    do {
      if (out.size() >= max_count) break;
      // Slots 1 and 2 (0-indexed) must share a configured line whose third
      // point is neither of the other frame slots.
      int s2 = perm[1], s3 = perm[2];
      int third = -1;
      for (const auto& l : c.lines) {
        int hits = 0;
        for (int q : l)
          if (q == s2 || q == s3) ++hits;
        if (hits == 2) {
          for (int q : l)
            if (q != s2 && q != s3) third = q;
          break;
        }
      }
      if (third < 0) continue;
      bool third_in_frame = false;
      for (int q : perm)
        if (q == third) third_in_frame = true;
      if (third_in_frame) continue;
      for (int free = 0; free < 10 && out.size() < max_count; ++free) {
        if (free == third) continue;
        bool in_frame = false;
        for (int q : perm)
          if (q == free) in_frame = true;
        if (in_frame) continue;
        ConstructionPlan plan;
        plan.config = c;
        plan.frame_points = perm;
        plan.on_line_point = third;
        plan.free_point = free;
        if (!greedy_close(c, plan)) continue;
        bool dup = false;
        for (const auto& p : out)
          if (p.frame_points == plan.frame_points &&
              p.on_line_point == plan.on_line_point &&
              p.free_point == plan.free_point)
            dup = true;
        if (!dup) out.push_back(plan);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (out.empty())
    throw std::runtime_error("find_plan: no construction sequence for " +
                             c.str());
  return out;
}

}  // namespace

ConstructionPlan find_plan(const Configuration& c) {
  return plan_search(c, 1).front();
}

std::vector<ConstructionPlan> find_plans(const Configuration& c,
                                         size_t max_count) {
  return plan_search(c, max_count);
}

ClassifiedEquation classify_with_plan_policy(const Configuration& c,
                                             size_t scan_bound) {
  auto plans = plan_search(c, scan_bound);
  std::optional<ClassifiedEquation> first;
  for (const auto& plan : plans) {
    CompiledEquation eq = derive(plan);
    if (!first) first = ClassifiedEquation{plan, eq};
    if (eq.outcome == RealizationOutcome::reducible_one)
      return {plan, eq};
    // Zero and non-realizable outcomes are plan-independent; stop early.
    if (eq.outcome == RealizationOutcome::desargues_zero ||
        eq.outcome == RealizationOutcome::non_realizable)
      return {plan, eq};
  }
  return *first;
}

std::vector<ProjElement> symbolic_arrangement(const ConstructionPlan& plan) {
  std::vector<std::optional<ProjElement>> pos(size_t(plan.config.n));
  auto frame = standard_frame();
  for (int i = 0; i < 4; ++i) pos[size_t(plan.frame_points[size_t(i)])] = frame[size_t(i)];
  pos[size_t(plan.on_line_point)] =
      ProjElement::point(MultiPoly::zero(), MultiPoly::variable(Var::u),
                         MultiPoly::variable(Var::v));
  pos[size_t(plan.free_point)] =
      ProjElement::point(MultiPoly::variable(Var::a), MultiPoly::variable(Var::b),
                         MultiPoly::variable(Var::c));

  for (const auto& step : plan.steps) {
    auto line_of = [&](const std::array<int, 2>& pr) {
      return join_or_meet(*pos[size_t(pr[0])], *pos[size_t(pr[1])]);
    };
    try {
      ProjElement l1 = line_of(step.line1);
      ProjElement l2 = line_of(step.line2);
      pos[size_t(step.target)] = join_or_meet(l1, l2);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error(
          "derive: join/meet degenerates identically at step for point " +
          std::to_string(step.target));
    }
  }
  std::vector<ProjElement> out;
  out.reserve(size_t(plan.config.n));
  for (auto& p : pos) {
    if (!p) throw std::logic_error("symbolic_arrangement: unplaced point");
    out.push_back(p->normalized());
  }
  return out;
}

CompiledEquation derive(const ConstructionPlan& plan) {
  const Configuration& c = plan.config;
  auto points = symbolic_arrangement(plan);

  if (plan.residual_lines.size() != 1)
    throw std::invalid_argument("derive: plan must have exactly one residual line");
  const auto& rl = plan.residual_lines[0];
  MultiPoly raw = collinearity_det(points[size_t(rl[0])], points[size_t(rl[1])],
                                   points[size_t(rl[2])]);

  CompiledEquation eq;
  eq.polynomial = raw.is_zero() ? raw : raw.normalized();

  // Open conditions: non-collinearity of base-point triples that are not
  // configured lines ("general position" of the frame and parameters).
  std::vector<int> base{plan.frame_points[0], plan.frame_points[1],
                        plan.frame_points[2], plan.frame_points[3],
                        plan.on_line_point, plan.free_point};
  std::sort(base.begin(), base.end());
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i + 1; j < base.size(); ++j)
      for (size_t k = j + 1; k < base.size(); ++k) {
        if (c.has_line(base[i], base[j], base[k])) continue;
        MultiPoly d = collinearity_det(points[size_t(base[i])],
                                       points[size_t(base[j])],
                                       points[size_t(base[k])]);
        if (d.is_zero())
          throw std::runtime_error("derive: base points identically collinear");
        MultiPoly n = d.normalized();
        if (n.is_constant()) continue;
        bool seen = false;
        for (const auto& o : eq.open_conditions)
          if (o == n) seen = true;
        if (!seen) eq.open_conditions.push_back(n);
      }

  if (eq.polynomial.is_zero()) {
    eq.classification = EquationClass::zero;
    eq.outcome = RealizationOutcome::desargues_zero;
    return eq;
  }

  auto fac = factor_bihomogeneous(eq.polynomial);
  eq.factor_list = fac.factors;

  // Component elimination: an irreducible component {f = 0} is excluded when
  // two configured points coincide identically on it or a non-configured
  // triple is identically collinear on it.
  auto divides_all_cross = [&](const MultiPoly& f, size_t i, size_t j) {
    const auto& x = points[i].coords;
    const auto& y = points[j].coords;
    for (int k = 0; k < 3; ++k) {
      int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
      MultiPoly cr = x[size_t(k1)] * y[size_t(k2)] - x[size_t(k2)] * y[size_t(k1)];
      if (cr.is_zero()) continue;
      if (!cr.divisible_by(f)) return false;
    }
    return true;
  };

  for (const auto& mf : fac.factors) {
    const MultiPoly& f = mf.factor;
    bool eliminated = false;
    for (size_t i = 0; i < points.size() && !eliminated; ++i)
      for (size_t j = i + 1; j < points.size() && !eliminated; ++j)
        if (divides_all_cross(f, i, j)) eliminated = true;
    for (size_t i = 0; i < points.size() && !eliminated; ++i)
      for (size_t j = i + 1; j < points.size() && !eliminated; ++j)
        for (size_t k = j + 1; k < points.size() && !eliminated; ++k) {
          if (c.has_line(int(i), int(j), int(k))) continue;
          MultiPoly d = collinearity_det(points[i], points[j], points[k]);
          if (d.is_zero() || d.divisible_by(f)) eliminated = true;
        }
    if (!eliminated) eq.surviving_factors.push_back(f);
  }

  if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1) {
    eq.classification = EquationClass::irreducible;
    eq.factor_list.clear();
  } else {
    eq.classification = EquationClass::reducible;
  }

  if (eq.surviving_factors.empty()) {
    eq.outcome = RealizationOutcome::non_realizable;
  } else if (eq.classification == EquationClass::irreducible) {
    auto bd = eq.polynomial.bidegree_uv_abc();
    eq.outcome = (bd.first == 2 && bd.second == 3)
                     ? RealizationOutcome::irreducible_surface
                     : RealizationOutcome::other;
  } else if (eq.surviving_factors.size() == 1) {
    eq.outcome = RealizationOutcome::reducible_one;
  } else {
    eq.outcome = RealizationOutcome::other;
  }
  return eq;
}

namespace {

using RPoint = std::array<Rational, 3>;

RPoint cross(const RPoint& x, const RPoint& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
          x[0] * y[1] - x[1] * y[0]};
}

bool is_zero(const RPoint& p) {
  return p[0].is_zero() && p[1].is_zero() && p[2].is_zero();
}

Rational det3r(const RPoint& a, const RPoint& b, const RPoint& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

RealizationSample sample_realization(const CompiledEquation& eq,
                                     const Configuration& c, const Rational& t0,
                                     const std::array<Rational, 3>& fiber_point) {
  std::vector<std::pair<Var, Rational>> vals{{Var::u, t0},
                                             {Var::v, Rational(1)},
                                             {Var::a, fiber_point[0]},
                                             {Var::b, fiber_point[1]},
                                             {Var::c, fiber_point[2]}};
  if (!eq.polynomial.is_zero() && !eq.polynomial.evaluate(vals).is_zero())
    throw std::invalid_argument(
        "sample_realization: point does not satisfy the equation");

  RealizationSample out;
  for (const auto& cond : eq.open_conditions) {
    if (cond.evaluate(vals).is_zero()) {
      out.rejection = "open condition " + cond.str() + " vanishes";
      return out;
    }
  }

  ConstructionPlan plan = find_plan(c);
  std::vector<std::optional<RPoint>> pos(size_t(c.n));
  pos[size_t(plan.frame_points[0])] = RPoint{1, 0, 0};
  pos[size_t(plan.frame_points[1])] = RPoint{0, 1, 0};
  pos[size_t(plan.frame_points[2])] = RPoint{0, 0, 1};
  pos[size_t(plan.frame_points[3])] = RPoint{1, 1, 1};
  pos[size_t(plan.on_line_point)] = RPoint{Rational(0), t0, Rational(1)};
  pos[size_t(plan.free_point)] = fiber_point;
  if (is_zero(*pos[size_t(plan.free_point)])) {
    out.rejection = "fiber point is the zero triple";
    return out;
  }

  for (const auto& step : plan.steps) {
    RPoint l1 = cross(*pos[size_t(step.line1[0])], *pos[size_t(step.line1[1])]);
    RPoint l2 = cross(*pos[size_t(step.line2[0])], *pos[size_t(step.line2[1])]);
    if (is_zero(l1) || is_zero(l2)) {
      out.rejection =
          "degenerate join at step for point " + std::to_string(step.target);
      return out;
    }
    RPoint p = cross(l1, l2);
    if (is_zero(p)) {
      out.rejection =
          "degenerate meet at step for point " + std::to_string(step.target);
      return out;
    }
    pos[size_t(step.target)] = p;
  }

  // Exact incidence audit: configured triples collinear, all others not,
  // and the ten points pairwise distinct.
  for (int i = 0; i < c.n; ++i)
    for (int j = i + 1; j < c.n; ++j)
      if (is_zero(cross(*pos[size_t(i)], *pos[size_t(j)]))) {
        out.rejection = "points " + std::to_string(i) + " and " +
                        std::to_string(j) + " coincide";
        return out;
      }
  for (int i = 0; i < c.n; ++i)
    for (int j = i + 1; j < c.n; ++j)
      for (int k = j + 1; k < c.n; ++k) {
        bool want = c.has_line(i, j, k);
        bool got = det3r(*pos[size_t(i)], *pos[size_t(j)], *pos[size_t(k)])
                       .is_zero();
        if (want && !got) {
          out.rejection = "configured line {" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) +
                          "} fails";
          return out;
        }
        if (!want && got) {
          out.rejection = "extra collinearity {" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + "}";
          return out;
        }
      }

  out.accepted = true;
  out.points.reserve(size_t(c.n));
  for (auto& p : pos) out.points.push_back(*p);
  return out;
}

}  // namespace configk3
