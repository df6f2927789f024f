// The eight end-to-end criteria, shared by nsvtool and the acceptance test.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nsv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit = 0;  // seconds
  std::vector<std::string> details;
  std::string error;  // set when a check threw
};

struct AcceptanceOptions {
  bool quick = true;  // false enlarges orders and bounds beyond the required ones
  long prec = 256;
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace nsv
