#pragma once
#include <string>
#include <vector>

namespace defring::checks {

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void fail(const std::string& s) {
    passed = false;
    lines.push_back("FAIL: " + s);
  }
};

// counts, regularity, pfaffian, projection, desugar, realify, guided,
// partition, parity, serialization.
std::vector<std::string> suite_names();
CheckReport run_suite(const std::string& name, uint64_t seed);

// Directory holding the pinned emit outputs (DEFRING_GOLDEN_DIR overrides;
// defaults to "tests/golden" relative to the working directory).
std::string golden_dir();

}  // namespace defring::checks
