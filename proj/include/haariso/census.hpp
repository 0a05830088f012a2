#ifndef HAARISO_CENSUS_HPP
#define HAARISO_CENSUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "haariso/config.hpp"
#include "haariso/graph.hpp"
#include "haariso/group.hpp"
#include "haariso/serialize.hpp"

namespace haariso {

// One row per Iso(G)-orbit of connection sets, keyed by the least member.
struct CensusRow {
  ConnSet rep = 0;
  long long orbit_size = 0;
  std::string case_label; // disconnected / wreath-reducible / stable /
                          // exceptional / degenerate
  std::optional<int> stable_a;
  bool abci = false;
  std::optional<ConnSet> witness_t;
  long long aut_haar = 0;
  long long aut_cayley = 0;
};

// Deterministic: rows ascend by representative mask; pure function of
// (group, config).
std::vector<CensusRow> census(const FiniteGroup& g, const Config& cfg = {});

Json census_row_to_json(const FiniteGroup& g, const CensusRow& row);

} // namespace haariso

#endif
