/** @file suite.hpp
 *  The fourteen acceptance checks, shared by `sgas validate` and the
 *  acceptance test binary. Tolerances are fixed here and nowhere else.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sgas::tools {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

int suite_size();
CheckResult run_check(int id);
/// Runs the listed checks (all when empty), reporting each as it finishes.
std::vector<CheckResult> run_suite(const std::vector<int>& only = {},
                                   const std::function<void(const CheckResult&)>& on_result = {});
std::string format_result(const CheckResult& r);

}  // namespace sgas::tools
