#include <iostream>

#include "twistvn/selftest.hpp"

int main() {
  const auto results = twistvn::selftest::run_acceptance(&std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED\n");
  return failures == 0 ? 0 : 1;
}
