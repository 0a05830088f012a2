#ifndef HAARISO_VERIFY_HPP
#define HAARISO_VERIFY_HPP

#include <optional>
#include <string>

#include "haariso/config.hpp"

namespace haariso {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The property suites; ids 1..8.
CriterionResult run_criterion(int id, const Config& cfg = {});
int criterion_count();

// CLI suite names -> criterion ids: normalizer, iso-sufficiency, abci-zp,
// stability, pipeline.
std::optional<int> suite_criterion(const std::string& suite);

} // namespace haariso

#endif
