// Verification harness: differential interpreter-vs-IR runs over the
// bundled programs, the Booth identity grids, and the multiplier
// end-to-end.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace masc {

struct VerifyCheck {
  std::string name;
  bool ok = false;
  std::string detail;  // counts on success, first counterexample on failure
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool allOk() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool quick = false;  // smaller sample sizes
};

VerifyReport runVerification(const VerifyOptions& opts);

// Fixed-width pass/fail table.
std::string renderReport(const VerifyReport& r);

}  // namespace masc
