#include <chrono>
#include <iostream>

#include "configk3/mordell_weil.hpp"
#include "configk3/plan.hpp"

using namespace configk3;
using Clock = std::chrono::steady_clock;

static double ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

int main() {
  auto t0 = Clock::now();
  CompiledEquation eq = derive(find_plan(builtin_lv()));
  auto t1 = Clock::now();
  std::cout << "derive: " << ms(t0, t1) << " ms\n";
  WeierstrassModel model = to_weierstrass(eq, {Rational(1), Rational(1), Rational(1)});
  auto t2 = Clock::now();
  std::cout << "to_weierstrass: " << ms(t1, t2) << " ms\n";
  std::cout << "a2 = " << model.curve.a2.str() << "\n";
  std::cout << "a4 = " << model.curve.a4.str() << "\n";
  std::cout << "a6 = " << model.curve.a6.str() << "\n";
  std::cout << "disc num deg " << model.curve.disc().num().degree()
            << " den deg " << model.curve.disc().den().degree() << "\n";
  auto t3 = Clock::now();
  auto fibers = kodaira_fibers(model.curve);
  auto t4 = Clock::now();
  std::cout << "kodaira: " << ms(t3, t4) << " ms; fibers:";
  for (auto& f : fibers) std::cout << " " << f.type_str() << "@" << f.place.str();
  std::cout << "\neuler=" << euler_characteristic(fibers) << "\n";
  auto s = model.forward({RatFunc::parse("1"), RatFunc::parse("t"), RatFunc::parse("t")});
  std::cout << "s mapped: " << (s ? (s->infinite ? "inf" : s->x.str()) : "none") << "\n";
  auto t5 = Clock::now();
  if (s && !s->infinite) {
    Rational h = section_height(model.curve, fibers, *s);
    std::cout << "height(s) = " << h.str() << " (" << ms(t5, Clock::now()) << " ms)\n";
  }
  auto t6 = Clock::now();
  TorsionGroup tg = torsion_subgroup(model.curve);
  std::cout << "torsion " << tg.str() << ": " << ms(t6, Clock::now()) << " ms\n";
  return 0;
}
