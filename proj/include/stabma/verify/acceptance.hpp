#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace stabma::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct AcceptanceOptions {
  /// Detail lines (per case) go here when set.
  std::ostream* log = nullptr;
};

int criterion_count();
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const AcceptanceOptions& options = {});

/// "PASS  3  name  detail  (1.23 s)"
std::string format_result(const CriterionResult& r);

}  // namespace stabma::verify
