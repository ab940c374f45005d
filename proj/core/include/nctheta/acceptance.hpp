#ifndef NCTHETA_ACCEPTANCE_HPP
#define NCTHETA_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace nctheta {

struct NamedResidual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<NamedResidual> residuals;
  std::string details;
  double elapsed_ms = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;       // reduced sample counts, same criteria
  unsigned long seed = 0;   // randomized property batches
};

// Runs the full verification battery and reports one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace nctheta

#endif
