// One line per criterion; nonzero exit if any fails.
#include <cstdio>

#include "nsv/acceptance.hpp"

int main() {
  int failed = 0;
  nsv::run_acceptance({}, [&](const nsv::CriterionResult& r) {
    std::printf("[%s] %d %s (%.2f s, limit %.0f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.limit);
    if (!r.pass) {
      ++failed;
      for (auto& d : r.details)
        if (d.rfind("FAILED", 0) == 0) std::printf("    %s\n", d.c_str());
      if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    }
    std::fflush(stdout);
  });
  return failed ? 1 : 0;
}
