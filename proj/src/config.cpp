#include "haariso/config.hpp"

#include <cstdlib>
#include <string>

namespace haariso {

namespace {

long long env_ll(const char* name, long long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoll(v);
  } catch (...) {
    return fallback;
  }
}

} // namespace

Config Config::from_env() {
  Config c;
  c.group_bound = static_cast<int>(env_ll("HAARISO_GROUP_BOUND", c.group_bound));
  c.backtrack_budget = env_ll("HAARISO_BUDGET", c.backtrack_budget);
  c.seed = static_cast<std::uint64_t>(env_ll("HAARISO_SEED", static_cast<long long>(c.seed)));
  return c;
}

} // namespace haariso
