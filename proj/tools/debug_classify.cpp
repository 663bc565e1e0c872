#include <iostream>

#include "configk3/plan.hpp"

using namespace configk3;

int main() {
  Configuration lv = builtin_lv();
  CompiledEquation lveq = derive(find_plan(lv));
  RealizationSample s =
      sample_realization(lveq, lv, Rational(2), {Rational(1), Rational(2), Rational(2)});
  std::cout << "LV sample t=2 [1:2:2]: accepted=" << s.accepted
            << " rejection=" << s.rejection << "\n";
  for (long t = 2; t <= 6; ++t) {
    RealizationSample r = sample_realization(
        lveq, lv, Rational(t), {Rational(1), Rational(t), Rational(t)});
    std::cout << "  t=" << t << ": " << (r.accepted ? "ok" : r.rejection) << "\n";
  }

  auto classes = enumerate_n3(10);
  for (size_t i = 0; i < classes.size(); ++i) {
    CompiledEquation eq = derive(find_plan(classes[i]));
    const char* out = "?";
    switch (eq.outcome) {
      case RealizationOutcome::desargues_zero: out = "zero"; break;
      case RealizationOutcome::irreducible_surface: out = "irreducible"; break;
      case RealizationOutcome::reducible_one: out = "reducible(1)"; break;
      case RealizationOutcome::non_realizable: out = "non-realizable"; break;
      default: out = "other"; break;
    }
    std::cout << "class " << i << ": " << out
              << "  factors=" << (eq.factor_list.empty() ? 1 : int(eq.factor_list.size()))
              << " surviving=" << eq.surviving_factors.size();
    if (!eq.polynomial.is_zero()) {
      auto bd = eq.polynomial.bidegree_uv_abc();
      std::cout << " bideg=(" << bd.first << "," << bd.second << ")"
                << " terms=" << eq.polynomial.term_count();
    }
    std::cout << "  iso_LV=" << (are_isomorphic(classes[i], lv).has_value() ? "Y" : "n")
              << "\n";
    if (eq.classification == EquationClass::reducible) {
      for (const auto& f : eq.factor_list)
        std::cout << "    factor mult=" << f.multiplicity << ": " << f.factor.str() << "\n";
    }
  }
  return 0;
}
