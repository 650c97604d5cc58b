// Factors the 5x5 system with diagonal 5 and band/corners 2, prints the
// factor data, solves one system and prints the first row of the inverse.

#include <iostream>

#include "circkr/circkr.hpp"

int main() {
  const circkr::SystemSpec<double> spec(5, 5.0, 2.0);
  const auto fct = circkr::decompose(spec);
  std::cout.precision(10);

  std::cout << "f:";
  for (const double v : fct.f.values) std::cout << ' ' << v;
  std::cout << "\nr:";
  for (const double v : fct.r.values) std::cout << ' ' << v;
  std::cout << "\ng = " << fct.g->value << " (scaled by a: " << fct.g->value * spec.a() << ")\n";

  const auto x = circkr::solve(fct, std::vector<double>{19, 18, 27, 36, 35});
  std::cout << "x:";
  for (const double v : x) std::cout << ' ' << v;

  std::cout << "\nfirst row of inverse:";
  for (const double v : circkr::inverse_first_row(fct)) std::cout << ' ' << v;
  std::cout << '\n';
}
