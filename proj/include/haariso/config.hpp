#ifndef HAARISO_CONFIG_HPP
#define HAARISO_CONFIG_HPP

#include <cstdint>

namespace haariso {

// Global budgets. Flags override environment (HAARISO_*), environment
// overrides these defaults.
struct Config {
  int group_bound = 64;                  // max |G| for exhaustive group scans
  long long aut_element_cap = 2'000'000; // max stored elements of a permutation group
  long long backtrack_budget = 10'000'000; // max nodes for graph search kernels
  int subset_enum_bound = 16;            // max |G| for 2^|G| connection-set sweeps
  std::uint64_t seed = 0;                // RNG seed for sampled universes

  static Config from_env();
};

} // namespace haariso

#endif
