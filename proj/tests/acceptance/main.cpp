// Prints one line per acceptance criterion; exits nonzero if any fails.
#include <cstdio>
#include <iostream>

#include "sgas_tools/suite.hpp"

int main() {
  using namespace sgas::tools;
  int failed = 0;
  run_suite({}, [&](const CheckResult& r) {
    std::cout << format_result(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << (suite_size() - failed) << "/" << suite_size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
