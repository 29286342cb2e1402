#pragma once

#include <functional>
#include <string>
#include <vector>

namespace csg {

struct CheckReport {
  int id = 0;
  std::string name;
  std::string summary;
  bool passed = true;
  long checks = 0;
  std::vector<std::string> mismatches;
  double seconds = 0;
};

struct VerifyOptions {
  int jobs = 1;
};

struct Criterion {
  int id;
  std::string name;
  std::string summary;
  bool slow;
  std::function<CheckReport(const VerifyOptions&)> run;
};

/// The acceptance criteria (ids 1..13) followed by the slow extras (ids 101..).
const std::vector<Criterion>& acceptance_criteria();

/// "all" (the 13 criteria), "slow", "everything", or a criterion name.
std::vector<const Criterion*> suite(const std::string& name);
std::vector<std::string> suite_names();

CheckReport run_criterion(const Criterion& criterion, const VerifyOptions& options);

/// "PASS  7 max_rows: <summary> (22 checks, 0 mismatches, 0.00 s)"
std::string report_line(const CheckReport& report);

}  // namespace csg
