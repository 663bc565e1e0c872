#include "configk3/kodaira.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>

#include "configk3/factor.hpp"
#include "configk3/parallel.hpp"

namespace configk3 {

namespace {

constexpr int kInf = INT_MAX / 2;

int val_or_inf(const RatFunc& f, const Place& p) {
  return f.is_zero() ? kInf : p.valuation(f);
}

void fill_counts(KodairaFiber& f) {
  switch (f.type) {
    case KodairaType::In:
      f.components = f.n;
      f.simple_components = f.n;
      f.euler = f.n;
      break;
    case KodairaType::I0star:
      f.components = 5;
      f.simple_components = 4;
      f.euler = 6;
      break;
    case KodairaType::Instar:
      f.components = f.n + 5;
      f.simple_components = 4;
      f.euler = f.n + 6;
      break;
    case KodairaType::II:
      f.components = 1;
      f.simple_components = 1;
      f.euler = 2;
      break;
    case KodairaType::III:
      f.components = 2;
      f.simple_components = 2;
      f.euler = 3;
      break;
    case KodairaType::IV:
      f.components = 3;
      f.simple_components = 3;
      f.euler = 4;
      break;
    case KodairaType::IVstar:
      f.components = 7;
      f.simple_components = 3;
      f.euler = 8;
      break;
    case KodairaType::IIIstar:
      f.components = 8;
      f.simple_components = 2;
      f.euler = 9;
      break;
    case KodairaType::IIstar:
      f.components = 9;
      f.simple_components = 1;
      f.euler = 10;
      break;
  }
}

}  // namespace

std::string KodairaFiber::type_str() const {
  switch (type) {
    case KodairaType::In: return "I" + std::to_string(n);
    case KodairaType::I0star: return "I0*";
    case KodairaType::Instar: return "I" + std::to_string(n) + "*";
    case KodairaType::II: return "II";
    case KodairaType::III: return "III";
    case KodairaType::IV: return "IV";
    case KodairaType::IVstar: return "IV*";
    case KodairaType::IIIstar: return "III*";
    case KodairaType::IIstar: return "II*";
  }
  return "?";
}

LocalData minimal_local_data(const WeierstrassCurve& w, const Place& place) {
  int v4 = val_or_inf(w.c4(), place);
  int v6 = val_or_inf(w.c6(), place);
  int vd = place.valuation(w.disc());
  // Admissible shifts move (v4, v6, vd) by k*(4, 6, 12); minimality demands
  // nonnegative valuations that cannot all be reduced by one more step.
  auto ceil_div = [](int a, int b) { return a >= 0 ? 0 : (-a + b - 1) / b; };
  int k = 0;
  if (v4 < kInf) k = std::max(k, ceil_div(v4, 4));
  if (v6 < kInf) k = std::max(k, ceil_div(v6, 6));
  k = std::max(k, ceil_div(vd, 12));
  v4 = v4 < kInf ? v4 + 4 * k : kInf;
  v6 = v6 < kInf ? v6 + 6 * k : kInf;
  vd = vd + 12 * k;
  while (v4 >= 4 && v6 >= 6 && vd >= 12) {
    v4 = v4 < kInf ? v4 - 4 : kInf;
    v6 = v6 < kInf ? v6 - 6 : kInf;
    vd -= 12;
    --k;
  }
  return {v4, v6, vd, k};
}

namespace {

std::optional<KodairaFiber> classify_place(const WeierstrassCurve& w,
                                           const Place& place) {
  LocalData d = minimal_local_data(w, place);
  if (d.v_disc == 0) return std::nullopt;  // good reduction
  KodairaFiber f;
  f.place = place;
  f.minimal_shift = d.shift;
  if (d.v_c4 == 0) {
    f.type = KodairaType::In;
    f.n = d.v_disc;
  } else {
    switch (d.v_disc) {
      case 2: f.type = KodairaType::II; break;
      case 3: f.type = KodairaType::III; break;
      case 4: f.type = KodairaType::IV; break;
      case 6: f.type = KodairaType::I0star; break;
      case 8:
        f.type = d.v_c4 == 2 ? KodairaType::Instar : KodairaType::IVstar;
        if (d.v_c4 == 2) f.n = 2;
        break;
      case 9:
        f.type = d.v_c4 == 2 ? KodairaType::Instar : KodairaType::IIIstar;
        if (d.v_c4 == 2) f.n = 3;
        break;
      case 10:
        f.type = d.v_c4 == 2 ? KodairaType::Instar : KodairaType::IIstar;
        if (d.v_c4 == 2) f.n = 4;
        break;
      default:
        if (d.v_disc >= 7 && d.v_c4 == 2) {
          f.type = KodairaType::Instar;
          f.n = d.v_disc - 6;
        } else {
          throw std::logic_error("kodaira: inconsistent valuation triple at " +
                                 place.str());
        }
    }
  }
  fill_counts(f);
  return f;
}

std::vector<Place> candidate_places(const WeierstrassCurve& w) {
  std::set<std::vector<Rational>> seen;
  std::vector<Place> places;
  auto add_poly_factors = [&](const UniPoly& f) {
    if (f.degree() < 1) return;
    auto fac = factor_univariate(f);
    for (const auto& g : fac.factors) {
      if (seen.insert(g.factor.coeffs()).second)
        places.push_back(Place::finite_place(g.factor));
    }
  };
  RatFunc delta = w.disc();
  add_poly_factors(delta.num());
  add_poly_factors(delta.den());
  for (const RatFunc& f : {w.c4(), w.c6(), w.a2, w.a4, w.a6}) {
    if (f.is_zero()) continue;
    add_poly_factors(f.den());
  }
  std::sort(places.begin(), places.end(), Place::less);
  places.push_back(Place::at_infinity());
  return places;
}

std::vector<KodairaFiber> fibers_impl(const WeierstrassCurve& w, bool parallel) {
  if (w.disc().is_zero())
    throw std::invalid_argument("kodaira_fibers: singular curve");
  auto places = candidate_places(w);
  std::vector<std::optional<KodairaFiber>> slots(places.size());
  auto work = [&](int i) {
    slots[size_t(i)] = classify_place(w, places[size_t(i)]);
  };
  if (parallel)
    parallel_for(int(places.size()), work);
  else
    serial_for(int(places.size()), work);
  std::vector<KodairaFiber> out;
  for (auto& s : slots)
    if (s) out.push_back(*s);
  return out;
}

}  // namespace

std::vector<KodairaFiber> kodaira_fibers(const WeierstrassCurve& w) {
  return fibers_impl(w, true);
}

std::vector<KodairaFiber> kodaira_fibers_serial(const WeierstrassCurve& w) {
  return fibers_impl(w, false);
}

int euler_characteristic(const std::vector<KodairaFiber>& fibers) {
  int e = 0;
  for (const auto& f : fibers) e += f.euler * f.place.degree();
  return e;
}

int sum_components_minus_one(const std::vector<KodairaFiber>& fibers) {
  int s = 0;
  for (const auto& f : fibers) s += (f.components - 1) * f.place.degree();
  return s;
}

std::vector<std::string> fiber_multiset(const std::vector<KodairaFiber>& fibers) {
  std::vector<std::string> out;
  for (const auto& f : fibers)
    for (int i = 0; i < f.place.degree(); ++i) out.push_back(f.type_str());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace configk3
