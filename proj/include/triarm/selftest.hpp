#pragma once

#include <string>
#include <vector>

namespace triarm {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast exact-algebra battery: quaternion relations, interference closure
/// identities, homodyne model reduction, and the variance closed forms.
/// Runs in well under a second; suitable for a smoke check on any host.
std::vector<SelftestResult> run_selftest();

}  // namespace triarm
