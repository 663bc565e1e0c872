#pragma once

#include <optional>
#include <string>
#include <vector>

#include "configk3/kodaira.hpp"
#include "configk3/weierstrass.hpp"

namespace configk3 {

// ----- torsion -----------------------------------------------------------------

struct TorsionGroup {
  std::vector<Section> points;      // the full group, identity included
  std::vector<Section> generators;  // at most two
  // Invariant factors (d1, d2), d1 | d2; trivial group is (1, 1),
  // cyclic Z/n is (1, n).
  std::array<int, 2> invariants{1, 1};

  int order() const { return invariants[0] * invariants[1]; }
  std::string str() const;
};

// Torsion sections over Q(t): 2-torsion from the cubic's rational roots,
// higher torsion by exact halving; completeness certified by comparing with
// the exact torsion of specializations at good rational points.
TorsionGroup torsion_subgroup(const WeierstrassCurve& w);

// Exact torsion of a curve over Q: division-polynomial roots up to the Mazur
// bound; every point passes the integral Nagell-Lutz criterion.
TorsionGroup torsion_over_q(const QCurve& e);
std::vector<QPoint> torsion_points_over_q(const QCurve& e);

// Order of a point if <= bound, else 0.
int point_order(const QCurve& e, const QPoint& p, int bound = 12);
int section_order(const WeierstrassCurve& w, const Section& p, int bound = 12);

// ----- heights -------------------------------------------------------------------

// Shioda height: h(P) = 2*chi + 2 (P.O) - sum_v deg(v) contr_v(P).
Rational section_height(const WeierstrassCurve& w,
                        const std::vector<KodairaFiber>& fibers,
                        const Section& p);

// Bilinear pairing via polarization of the height.
Rational height_pairing(const WeierstrassCurve& w,
                        const std::vector<KodairaFiber>& fibers,
                        const Section& p, const Section& q);

// Local correction term at one bad fiber (weighted by place degree in the
// height formula, not here).
Rational local_contribution(const WeierstrassCurve& w, const KodairaFiber& f,
                            const Section& p);

// ----- rank / discriminant --------------------------------------------------------

struct RankCertificate {
  int rank = 0;
  int picard = 0;
  bool certified = false;
  std::string basis;  // what the certification rests on
};

// Shioda-Tate + the K3 bound: when euler = 24, sum(m_F - 1) = 17 and a
// positive-height section exists, rank = 1 and rho = 20.
RankCertificate certify_rank_and_picard(const WeierstrassCurve& w,
                                        const std::vector<KodairaFiber>& fibers,
                                        const Section& s);

struct CoxZuckerResult {
  int d;                 // the (negative) discriminant
  Rational naive_value;  // height * prod n_F / |tors|^2 before descent
  bool descent_unique;   // k = n = 1 was forced by integrality + congruence
};

// |d| = R prod n_F / |tors|^2 with the paper's k = n = 1 descent: any larger
// k*n would break integrality or d = 0,1 (mod 4).
CoxZuckerResult discriminant_cox_zucker(const Rational& generator_height,
                                        int torsion_order,
                                        const std::vector<KodairaFiber>& fibers);

// ----- isomorphism ----------------------------------------------------------------

struct CurveIso {
  RatFunc u, r;  // x = u^2 x' + r, y = u^3 y'
};

// Isomorphism over Q(t) between two y^2 = cubic models, if one exists;
// verified by exact coefficient transformation.
std::optional<CurveIso> curves_isomorphic(const WeierstrassCurve& w1,
                                          const WeierstrassCurve& w2);

// ----- section search ----------------------------------------------------------------

// Plane sections of the fibration: constant points of P^2(Q) on every fiber,
// then pencil sections through pairs of known points (roots of the restricted
// cubic over Q(t)). Returned as plane coordinate triples.
std::vector<std::array<RatFunc, 3>> plane_sections_search(const CompiledEquation& eq);

// Non-torsion generator candidate: searched sections mapped to the
// Weierstrass model, halved while possible, minimal positive height first.
struct GeneratorSearch {
  Section generator;
  Rational height;
  std::vector<Section> mapped_sections;  // all mapped candidates
};
std::optional<GeneratorSearch> find_generator(const CompiledEquation& eq,
                                              const WeierstrassModel& model,
                                              const std::vector<KodairaFiber>& fibers,
                                              const TorsionGroup& torsion);

// Rational solutions x of x(2P) = target on w, as candidate halves.
std::vector<Section> halve_section(const WeierstrassCurve& w, const Section& target);

}  // namespace configk3
