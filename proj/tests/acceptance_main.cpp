// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//   acceptance               all eight
//   acceptance --criterion 3 --criterion 7

#include <CLI11.hpp>
#include <iostream>
#include <vector>

#include "bloch/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  int J = bloch::QuadratureSpec{}.boundary_depth;
  app.add_option("--criterion,-c", ids, "criterion number")->check(CLI::Range(1, bloch::kCriterionCount));
  app.add_option("--J", J, "boundary depth")->check(CLI::Range(4, 30));
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = bloch::suite_criteria("all");

  bloch::QuadratureSpec spec;
  spec.boundary_depth = J;
  int failed = 0;
  for (int id : ids) {
    const bloch::CriterionReport r = bloch::run_criterion(id, spec);
    std::cout << bloch::format_report(r) << std::endl;
    if (!r.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
