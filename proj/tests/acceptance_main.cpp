// Acceptance runner: executes every criterion at full strength and prints
// one PASS/FAIL line each. Nonzero exit when any criterion fails.

#include <cstring>
#include <iostream>

#include "mellip/verify.hpp"

int main(int argc, char** argv) {
  mellip::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) options.quick = true;
  }
  const auto results = mellip::run_acceptance(options, &std::cout);
  const bool ok = mellip::all_passed(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
