#include <iostream>

#include "configk3/plan.hpp"

using namespace configk3;

int main(int argc, char** argv) {
  int which = argc > 1 ? std::atoi(argv[1]) : 0;
  auto classes = enumerate_n3(10);
  const Configuration& c = classes[size_t(which)];
  auto plans = find_plans(c, 60);
  std::cout << "class " << which << ": " << plans.size() << " plans probed\n";
  for (size_t i = 0; i < plans.size(); ++i) {
    CompiledEquation eq = derive(plans[i]);
    const char* out = "?";
    switch (eq.outcome) {
      case RealizationOutcome::desargues_zero: out = "zero"; break;
      case RealizationOutcome::irreducible_surface: out = "irr"; break;
      case RealizationOutcome::reducible_one: out = "red1"; break;
      case RealizationOutcome::non_realizable: out = "nonreal"; break;
      default: out = "other"; break;
    }
    std::cout << "  plan " << i << " [" << plans[i].str() << "] -> " << out;
    if (eq.classification == EquationClass::reducible)
      std::cout << " (" << eq.factor_list.size() << " factors, "
                << eq.surviving_factors.size() << " surviving)";
    std::cout << "\n";
    if (i >= 11) break;
  }
  return 0;
}
