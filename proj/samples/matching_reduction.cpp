// Reduces the support of the identity matching of U_{e0} with U_{e1} and
// prints each step.
#include <iostream>

#include "fmlab/action.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/verify/fixtures.hpp"

int main(int argc, char** argv) {
  const fmlab::Prime p(argc > 1 ? static_cast<std::uint32_t>(std::stoul(argv[1])) : 3);
  const auto f = fmlab::fixtures::matching(p);
  std::cout << "x = " << fmlab::to_string(f.input.x) << "\n";

  const auto result = fmlab::find_small_support(f.input, f.extra);
  for (const auto& step : result.trace) {
    if (step.shortcut) continue;
    std::cout << "h = " << fmlab::to_string(*step.h) << ", m = " << *step.m << ", n = " << *step.n
              << ", b = " << fmlab::to_string(*step.b) << "\n";
  }
  for (const auto& w : result.support) std::cout << "support: " << fmlab::display(w) << "\n";
}
