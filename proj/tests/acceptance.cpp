// Acceptance harness: one pass/fail line per criterion.
#include <cstdio>
#include <string>
#include <vector>

#include "defring/checks.hpp"

int main() {
  using defring::checks::CheckReport;
  using defring::checks::run_suite;

  struct Criterion {
    const char* label;
    std::vector<const char*> suites;
  };
  const std::vector<Criterion> criteria{
      {"1 linear-space counts", {"counts"}},
      {"2 regularity equivalence", {"regularity"}},
      {"3 pfaffian suite", {"pfaffian"}},
      {"4 projection suite", {"projection"}},
      {"5 pass equivalence (desugar, realify)", {"desugar", "realify"}},
      {"6 guided = naive", {"guided"}},
      {"7 partition", {"partition"}},
      {"8 even-parity oracle", {"parity"}},
      {"9 serialization", {"serialization"}},
  };

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    bool pass = true;
    std::string detail;
    for (const char* suite : c.suites) {
      CheckReport rep;
      try {
        rep = run_suite(suite, 1);
      } catch (const std::exception& e) {
        rep.name = suite;
        rep.fail(std::string("exception: ") + e.what());
      }
      pass = pass && rep.passed;
      for (const std::string& line : rep.lines) detail += "    " + line + "\n";
    }
    all_pass = all_pass && pass;
    std::printf("criterion %s: %s\n", c.label, pass ? "PASS" : "FAIL");
    std::fputs(detail.c_str(), stdout);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
