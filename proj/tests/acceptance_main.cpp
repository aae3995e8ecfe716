// Acceptance suite: runs every verification criterion at the quick scale
// and prints one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cstdio>
#include <string>

#include "prufer/verify.hpp"

int main(int argc, char** argv) {
  prufer::verify::Profile profile;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--full") profile.full = true;

  bool all_pass = true;
  for (const auto& r : prufer::verify::run_all(profile)) {
    std::printf("[%s] %d. %s — %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.empty() ? "violated" : r.detail.c_str(), r.seconds);
    all_pass = all_pass && r.pass;
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria passed"
                               : "acceptance: CRITERIA FAILED");
  return all_pass ? 0 : 1;
}
