#include "haariso/census.hpp"

#include <atomic>
#include <future>
#include <thread>

#include "haariso/bci.hpp"
#include "haariso/error.hpp"
#include "haariso/reduction.hpp"

namespace haariso {

namespace {

CensusRow one_row(const FiniteGroup& g, ConnSet rep, long long orbit_size, const Config& cfg) {
  CensusRow row;
  row.rep = rep;
  row.orbit_size = orbit_size;
  row.aut_haar = automorphism_count(haar(g, rep), cfg.backtrack_budget);
  row.aut_cayley = automorphism_count(cayley(g, rep), cfg.backtrack_budget);
  auto label = classify(g, rep, cfg);
  if (label.kind == CaseKind::Exceptional && !label.note.empty()) {
    row.case_label = "degenerate";
    row.abci = true; // the edgeless graph is isomorphic only to itself
    return row;
  }
  row.case_label = case_name(label.kind);
  if (label.kind == CaseKind::Stable) row.stable_a = label.a;
  auto rep_report = is_abci_graph(g, rep, cfg);
  row.abci = rep_report.verdict;
  row.witness_t = rep_report.witness_t;
  return row;
}

} // namespace

std::vector<CensusRow> census(const FiniteGroup& g, const Config& cfg) {
  if (g.order > cfg.subset_enum_bound)
    throw Error::budget_exhausted("census: |G| exceeds the subset enumeration bound");
  auto iso = iso_set(g, cfg.group_bound);

  std::vector<std::pair<ConnSet, long long>> reps;
  for (ConnSet s = 0; s < (1ULL << g.order); ++s) {
    auto orbit = iso_orbit_of(g, iso, s);
    if (orbit.front() == s) reps.push_back({s, static_cast<long long>(orbit.size())});
  }

  // worker pool over representatives; rows land in slot order so output is
  // canonical regardless of completion order
  std::vector<CensusRow> rows(reps.size());
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  std::vector<std::future<void>> futs;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&] {
      for (size_t i = next.fetch_add(1); i < reps.size(); i = next.fetch_add(1))
        rows[i] = one_row(g, reps[i].first, reps[i].second, cfg);
    }));
  for (auto& f : futs) f.get();
  return rows;
}

Json census_row_to_json(const FiniteGroup& g, const CensusRow& row) {
  Json j;
  j["set"] = conn_to_json(g, row.rep);
  j["set_mask"] = row.rep;
  j["orbit_size"] = row.orbit_size;
  j["case"] = row.case_label;
  if (row.stable_a) j["stable_a"] = *row.stable_a;
  j["abci"] = row.abci;
  if (row.witness_t) j["witness_t"] = conn_to_json(g, *row.witness_t);
  j["aut_haar"] = row.aut_haar;
  j["aut_cayley"] = row.aut_cayley;
  return j;
}

} // namespace haariso
