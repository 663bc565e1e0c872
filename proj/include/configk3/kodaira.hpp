#pragma once

#include <string>
#include <vector>

#include "configk3/weierstrass.hpp"

namespace configk3 {

enum class KodairaType {
  In,      // multiplicative, n >= 1
  I0star,
  Instar,  // n >= 1
  II,
  III,
  IV,
  IVstar,
  IIIstar,
  IIstar,
};

struct KodairaFiber {
  Place place;
  KodairaType type;
  int n = 0;        // index for In / In*
  int components;   // m
  int simple_components;  // n1: multiplicity-one components
  int euler;
  int minimal_shift;  // local scaling exponent k: x -> x / pi^(2k)

  std::string type_str() const;
};

// Local valuation data of the minimal model at one place.
struct LocalData {
  int v_c4, v_c6, v_disc;  // after minimalization (INT_MAX/2 for zero polys)
  int shift;               // the k above
};
LocalData minimal_local_data(const WeierstrassCurve& w, const Place& place);

// All bad fibers of the minimal model: one entry per closed point of P^1
// (conjugate geometric fibers share one entry; euler totals weight by place
// degree). The OpenMP kernel classifies places in parallel.
std::vector<KodairaFiber> kodaira_fibers(const WeierstrassCurve& w);
std::vector<KodairaFiber> kodaira_fibers_serial(const WeierstrassCurve& w);

// Sum of Euler numbers weighted by place degree.
int euler_characteristic(const std::vector<KodairaFiber>& fibers);

// Sum of (components - 1) weighted by place degree (Shioda-Tate ingredient).
int sum_components_minus_one(const std::vector<KodairaFiber>& fibers);

// Expanded multiset of fiber type strings counting conjugates separately,
// sorted; e.g. {"I1","I1","I1*","I1*","I8"}.
std::vector<std::string> fiber_multiset(const std::vector<KodairaFiber>& fibers);

}  // namespace configk3
