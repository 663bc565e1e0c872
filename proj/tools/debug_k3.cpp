#include <chrono>
#include <iostream>

#include "configk3/mordell_weil.hpp"
#include "configk3/plan.hpp"

using namespace configk3;

int main(int argc, char** argv) {
  auto classes = enumerate_n3(10);
  std::vector<int> which = {0, 1, 2, 3};
  if (argc > 1) which = {std::atoi(argv[1])};
  for (int idx : which) {
    const Configuration& c = classes[size_t(idx)];
    std::cout << "=== class " << idx << " ===\n" << std::flush;
    try {
      auto ce = classify_with_plan_policy(c);
      if (ce.eq.outcome != RealizationOutcome::irreducible_surface) {
        std::cout << "  not a K3 class\n";
        continue;
      }
      // Identity candidate [1:1:1].
      MultiPoly at_o = ce.eq.polynomial.evaluate_partial(
          {{Var::a, Rational(1)}, {Var::b, Rational(1)}, {Var::c, Rational(1)}});
      std::cout << "  [1:1:1] on surface: " << (at_o.is_zero() ? "yes" : "NO")
                << "\n" << std::flush;
      WeierstrassModel model =
          to_weierstrass(ce.eq, {Rational(1), Rational(1), Rational(1)});
      std::cout << "  a2 = " << model.curve.a2.str() << "\n";
      std::cout << "  a4 = " << model.curve.a4.str() << "\n";
      std::cout << "  a6 = " << model.curve.a6.str() << "\n" << std::flush;
      auto fibers = kodaira_fibers(model.curve);
      std::cout << "  fibers:";
      for (auto& f : fibers)
        std::cout << " " << f.type_str() << "@" << f.place.str();
      std::cout << "\n  euler = " << euler_characteristic(fibers)
                << ", sum(m-1) = " << sum_components_minus_one(fibers) << "\n"
                << std::flush;
      TorsionGroup tg = torsion_subgroup(model.curve);
      std::cout << "  torsion " << tg.str() << "\n" << std::flush;
      auto gen = find_generator(ce.eq, model, fibers, tg);
      if (!gen) {
        std::cout << "  no generator found\n";
        continue;
      }
      std::cout << "  generator height = " << gen->height.str() << " (from "
                << gen->mapped_sections.size() << " mapped sections)\n"
                << std::flush;
      auto cz = discriminant_cox_zucker(gen->height, tg.order(), fibers);
      std::cout << "  d = " << cz.d << "\n" << std::flush;
    } catch (const std::exception& e) {
      std::cout << "  EXCEPTION: " << e.what() << "\n";
    }
  }
  return 0;
}
