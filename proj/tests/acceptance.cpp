// One line per acceptance criterion; exit status is nonzero if any fails.
#include <cstdio>
#include <string>
#include <vector>

#include "circlens/verify.hpp"

using circlens::run_suite;

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::vector<std::string> groups;
  };
  const std::vector<Criterion> criteria = {
      {1, "spectral function oracles", {"ORACLE-XI"}},
      {2, "kernel and density oracles", {"ORACLE-K", "ORACLE-RHO"}},
      {3, "finite -> lattice -> continuum limits", {"LIMIT-CONSISTENCY"}},
      {4, "small-z series kernel", {"SERIES-KERNEL"}},
      {5, "low-temperature sine limit", {"FERMION-SINE"}},
      {6, "compressibility sum rule", {"SUMRULE"}},
      {7, "large-gap asymptote", {"GAP-ASYMPTOTE"}},
      {8, "integrable kernel equivalence", {"IIK-EQUIV"}},
      {9, "sigma-form residuals", {"SIGMA-ODE"}},
      {10, "Cauchy determinant", {"CAUCHY-DET"}},
      {11, "Gaudin support and asymptotics", {"GAUDIN-SUPPORT"}},
      {12, "d-dimensional pressure", {"DDIM-PRESSURE"}},
      {13, "sampler marginals", {"SAMPLER-MARGINALS"}},
  };

  circlens::SuiteOptions options;
  options.seed = 42;
  int failed = 0;
  for (const auto& c : criteria) {
    const auto report = run_suite(c.groups, options);
    std::string detail;
    for (const auto& e : report.entries) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s%s=%.3g/%.3g", e.pass ? "" : "!", e.id.c_str(), e.error, e.tol);
      detail += buf;
    }
    std::printf("criterion %2d %s: %s |%s\n", c.number, report.pass ? "PASS" : "FAIL", c.title, detail.c_str());
    std::fflush(stdout);
    if (!report.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
