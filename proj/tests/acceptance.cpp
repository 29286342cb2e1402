#include <cstdlib>
#include <iostream>
#include <string>

#include "csg/verify.hpp"

// Usage: acceptance [suite] [jobs]. Prints one line per criterion.
int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "all";
  csg::VerifyOptions options;
  options.jobs = argc > 2 ? std::atoi(argv[2]) : 1;
  int failed = 0;
  for (const csg::Criterion* c : csg::suite(name)) {
    const csg::CheckReport report = csg::run_criterion(*c, options);
    std::cout << csg::report_line(report) << "\n";
    for (const auto& m : report.mismatches)
      std::cout << "    - " << m << "\n";
    std::cout.flush();
    failed += report.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
