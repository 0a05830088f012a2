// Acceptance suite: runs the property criteria and prints one line each.
// Usage: acceptance [id]   (no argument runs all)
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "haariso/verify.hpp"

int main(int argc, char** argv) {
  using namespace haariso;
  Config cfg = Config::from_env();
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  bool all_pass = true;
  for (int id = 1; id <= criterion_count(); ++id) {
    if (only != 0 && id != only) continue;
    auto r = run_criterion(id, cfg);
    std::printf("criterion %d (%s): %s [%.1fs] %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    std::fflush(stdout);
    all_pass &= r.pass;
  }
  return all_pass ? 0 : 1;
}
