#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "configk3/configuration.hpp"
#include "configk3/factor.hpp"
#include "configk3/projective.hpp"

namespace configk3 {

// One construction step: `target` is the meet of the lines through the two
// already-placed point pairs.
struct ConstructionStep {
  int target;
  std::array<int, 2> line1;
  std::array<int, 2> line2;
};

// A frame choice plus the join/meet sequence that determines every point of a
// 10_3 configuration from ([u:v],[a:b:c]).
struct ConstructionPlan {
  Configuration config;
  // frame_points[0..3] are fixed to [1:0:0],[0:1:0],[0:0:1],[1:1:1];
  // on_line_point sits at [0:u:v] on the configured line through
  // frame_points[1] and frame_points[2].
  std::array<int, 4> frame_points;
  int on_line_point;
  int free_point;
  std::vector<ConstructionStep> steps;
  std::vector<std::array<int, 3>> residual_lines;

  std::string str() const;
};

enum class EquationClass { zero, irreducible, reducible };

// Outcome of classification + component elimination, used by the pipeline.
enum class RealizationOutcome {
  desargues_zero,      // F identically zero
  irreducible_surface, // one irreducible surviving component of bidegree (2,3)
  reducible_one,       // reducible, exactly one surviving component
  non_realizable,      // every component excluded by the open conditions
  other
};

struct CompiledEquation {
  MultiPoly polynomial;  // normalized; zero for the Desargues class
  EquationClass classification = EquationClass::zero;
  std::vector<MultiFactor> factor_list;       // empty unless reducible
  std::vector<MultiPoly> open_conditions;     // nonvanishing requirements
  std::vector<MultiPoly> surviving_factors;   // components not excluded
  RealizationOutcome outcome = RealizationOutcome::other;
};

// First successful plan in a fixed deterministic search order. The Sturmfels
// L_V construction is pinned for the built-in labeling.
ConstructionPlan find_plan(const Configuration& c);

// Up to `max_count` distinct plans, in search order.
std::vector<ConstructionPlan> find_plans(const Configuration& c,
                                         size_t max_count);

// Plan selection for classification: the paper's constructions exhibit the
// realization space of the non-K3 realizable classes as one component of a
// reducible equation, while a K3 class yields an irreducible equation for
// every plan (a proper component would be rational of lower bidegree).
// Scans plans in search order and stops at the first reducible-one outcome;
// otherwise the first plan stands.
struct ClassifiedEquation {
  ConstructionPlan plan;
  CompiledEquation eq;
};
ClassifiedEquation classify_with_plan_policy(const Configuration& c,
                                             size_t scan_bound = 60);

// Symbolic point positions for a plan, indexed by point label.
std::vector<ProjElement> symbolic_arrangement(const ConstructionPlan& plan);

// Symbolic execution of the plan: residual determinant, bidegree check,
// factorization, open conditions, and component elimination.
CompiledEquation derive(const ConstructionPlan& plan);

struct RealizationSample {
  bool accepted = false;
  std::vector<std::array<Rational, 3>> points;  // by label, when accepted
  std::string rejection;                        // names the violated condition
};

// Executes the plan numerically at ([t0:1], fiber_point) and verifies that
// exactly the configured collinearities hold.
RealizationSample sample_realization(const CompiledEquation& eq,
                                     const Configuration& c, const Rational& t0,
                                     const std::array<Rational, 3>& fiber_point);

}  // namespace configk3
