#ifndef HAARISO_REDUCTION_HPP
#define HAARISO_REDUCTION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "haariso/bci.hpp"
#include "haariso/config.hpp"
#include "haariso/graph.hpp"
#include "haariso/group.hpp"
#include "haariso/perm.hpp"

namespace haariso {

enum class CaseKind { Disconnected, WreathReducible, Stable, Exceptional };
const char* case_name(CaseKind k);

struct CaseLabel {
  CaseKind kind = CaseKind::Exceptional;
  int a = -1;       // translation witness for Stable
  std::string note; // set for degenerate inputs
};

// Vertex re-coordinatization induced by a semiregular two-orbit subgroup via
// the Sabidussi connection-set formula.
struct Relabeling {
  FiniteGroup target_group;
  ConnSet target_set = 0;
  Permutation map; // graph vertices -> Z_2 x target coding
  std::pair<int, int> base_vertices{0, 0};
};

struct ReductionStep {
  CaseKind kind = CaseKind::Exceptional;
  int depth = 0;
  std::optional<int> a;
  std::optional<std::vector<int>> subgroup; // H (disconnected) or C (wreath) members
  std::optional<std::vector<int>> quotient_factors; // invariant factors of D
  std::optional<ConnSet> quotient_set;              // U over D
  std::vector<Relabeling> relabelings;
  std::string detail;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::optional<SolvingSet> terminal;
  bool exceptional = false;
  std::string note;
};

CaseLabel classify(const FiniteGroup& a, ConnSet s, const Config& cfg = {});

// a with (1,-a) in the component of (0,0), and H = <(a+S)-(a+S)>; verifies
// that the components of haar(A, a+S) are the cosets of Z_2 x H.
std::pair<int, Subgroup> align_disconnected(const FiniteGroup& a, ConnSet s);

// Maximal C with S a union of C-cosets, the quotient D = A/C, and U = S/C;
// verifies the wreath reconstruction and that the quotient is twin-free.
struct TwinQuotient {
  Subgroup c;
  FiniteGroup d;
  std::vector<int> projection;
  ConnSet u = 0;
};
TwinQuotient twin_quotient(const FiniteGroup& a, ConnSet s);

// Sabidussi relabeling of a bipartite graph by a semiregular two-orbit
// subgroup whose orbits are the bipartition.
Relabeling relabel_semitransitive(const Digraph& gr, const std::vector<Permutation>& copy_elems);

ReductionTrace full_pipeline(const FiniteGroup& a, ConnSet s, const Config& cfg = {});

// The three per-case constructions, each returning the ABCI-extension maps
// for (A, S) plus the steps they generated (full_pipeline stitches them).
struct StepResult {
  std::vector<Permutation> extension;
  std::vector<ReductionStep> steps;
  bool exceptional = false;
  std::string note;
};
StepResult reduce_disconnected(const FiniteGroup& a, ConnSet s, const Config& cfg, int depth);
StepResult reduce_wreath(const FiniteGroup& a, ConnSet s, const Config& cfg, int depth);
StepResult reduce_stable(const FiniteGroup& a, ConnSet s, int witness_a, const Config& cfg,
                         int depth);

// The realized Z_2 x| Aut(Cay(A,S)) on Z_2 x A: lifts sigma_hat plus the
// part-swapping tau.iota coset.
long long stable_group_order(const FiniteGroup& a, ConnSet s, const Config& cfg);

} // namespace haariso

#endif
