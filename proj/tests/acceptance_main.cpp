#include <chrono>
#include <iostream>

#include "fairprice/acceptance.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = fairprice::run_acceptance();
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return fairprice::print_acceptance(std::cout, results, ms) ? 0 : 1;
}
