// Acceptance run: one PASS/FAIL line per criterion, its gates indented below.
// Tolerances live with the gates in checks.cpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "uppe/checks.hpp"

using namespace uppe;

namespace {

struct Criterion {
  int number;
  const char* title;
  std::function<std::vector<OracleReport>(const CheckOptions&)> run;
};

std::string describe(const OracleReport& r) {
  char buf[256];
  if (r.timing)
    std::snprintf(buf, sizeof buf, "%.3g s (limit %.3g s)", r.residual, r.tolerance);
  else if (r.bound == Bound::within)
    std::snprintf(buf, sizeof buf, "%.6g in [%.6g, %.6g]", r.residual, r.lower, r.tolerance);
  else
    std::snprintf(buf, sizeof buf, "%.6g %s %.6g", r.residual,
                  r.bound == Bound::at_most ? "<=" : r.bound == Bound::less_than ? "<" : ">", r.tolerance);
  return buf;
}

}  // namespace

int main() {
  CheckOptions o;
  o.acceptance_only = true;
  const std::vector<Criterion> criteria = {
      {1, "UPPE Green's function identity on 16^3 x 32", check_theorem1},
      {2, "paraxial identity per mode and by the physical route", check_theorem2},
      {3, "projector algebra", check_projector_algebra},
      {4, "non-causality of the UPPE Green's function", check_non_causality},
      {5, "projection commutes with forward propagation", check_forward_preservation},
      {6, "march vs convolution", check_two_route},
      {7, "independent oracles", check_oracles},
      {8, "backward k_z content of the forward-gated field", check_remark1},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<OracleReport> reports;
    std::string error;
    try {
      reports = c.run(o);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = error.empty() && !reports.empty();
    for (const auto& r : reports) pass = pass && r.passed;
    all = all && pass;
    std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", c.number, c.title, secs);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (const auto& r : reports)
      std::printf("    %-4s %-48s %s\n", r.passed ? "ok" : "FAIL", r.name.c_str(), describe(r).c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED");
  return all ? 0 : 1;
}
