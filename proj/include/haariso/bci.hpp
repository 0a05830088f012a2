#ifndef HAARISO_BCI_HPP
#define HAARISO_BCI_HPP

#include <optional>
#include <string>
#include <vector>

#include "haariso/config.hpp"
#include "haariso/graph.hpp"
#include "haariso/group.hpp"
#include "haariso/haar_maps.hpp"
#include "haariso/perm.hpp"

namespace haariso {

enum class MapProvenance { IsoElement, Extension, RelabelingComposite };
const char* provenance_name(MapProvenance p);

// A set of maps on Z_2 x G meant to realize every isomorphism from
// haar(G, S) to other Haar graphs of G.  Valid sets contain all of Iso(G)
// and obey the (0,1_G) pinning condition; solving_set_check enforces both.
struct SolvingSet {
  int degree = 0;
  std::vector<Permutation> maps;
  std::vector<MapProvenance> provenance;

  void add(Permutation p, MapProvenance src);
  void dedup();
};

struct AbciReport {
  bool verdict = false;
  std::optional<ConnSet> witness_s;   // failing S (group-level reports)
  std::optional<ConnSet> witness_t;   // isomorphic T unreachable through Iso(G)
  std::optional<Permutation> witness_iso; // a backtracking isomorphism S-graph -> T-graph
};

// All T with haar(G,T) isomorphic to haar(G,S) (full 2^|G| sweep, pruned by
// |T| = |S|).
std::vector<ConnSet> isomorphic_universe(const FiniteGroup& g, ConnSet s, const Config& cfg);

// Universe for solving-set checks: exhaustive through |G| <= 9, seeded
// sampling above (always containing the Iso(G)-orbit of S).
std::vector<ConnSet> check_universe(const FiniteGroup& g, ConnSet s, const Config& cfg);

// Orbit of S under the Iso(G) action on connection sets.
std::vector<ConnSet> iso_orbit_of(const FiniteGroup& g, const std::vector<IsoElement>& iso,
                                  ConnSet s);

// Image of S under one Iso(G) element (closed form for abelian groups,
// edge transport otherwise).
ConnSet iso_apply(const FiniteGroup& g, const IsoElement& m, ConnSet s);

std::optional<IsoElement> iso_by_iso_set(const FiniteGroup& g, ConnSet s, ConnSet t,
                                         const Config& cfg = {});

AbciReport is_abci_graph(const FiniteGroup& g, ConnSet s, const Config& cfg = {});
AbciReport is_abci_group(const FiniteGroup& g, const Config& cfg = {});

// Babai-type criterion: every semiregular subgroup of Aut(haar(G,S))
// isomorphic to G with two orbits of size |G| is Aut-conjugate to Ghat_L.
bool babai_criterion_haar(const FiniteGroup& g, ConnSet s, const Config& cfg = {});

// Definition check for a candidate solving set against a universe of
// isomorphic connection sets.
bool solving_set_check(const FiniteGroup& g, ConnSet s, const SolvingSet& candidate,
                       const std::vector<ConnSet>& universe);

// Connection sets reachable from S by members of the candidate set.
std::vector<ConnSet> reached_sets(const FiniteGroup& g, ConnSet s, const SolvingSet& candidate);

// Representatives of the classes s1 == s2 iff s1 = s2 . nu (nu in Iso(G)),
// the identity representing the Iso(G) class.
std::vector<Permutation> abci_extension_from_solving_set(const FiniteGroup& g,
                                                         const SolvingSet& ss);

// The extension pruned to representatives whose classes contribute coverage;
// equals {identity} exactly when haar(G,S) is an ABCI-graph.
std::vector<Permutation> minimal_abci_extension(const FiniteGroup& g, ConnSet s,
                                                const SolvingSet& ss,
                                                const std::vector<ConnSet>& universe);

// Post-compose with a left translation so a map landing in B_0 fixes
// (0, 1_G); graph images are unchanged since Ghat_L is an automorphism of
// every Haar graph.
Permutation pin_base(const FiniteGroup& g, Permutation m);

// Recombine an extension with Iso(G) into a solving set: {t . nu}, each
// member pinned at the base point.
SolvingSet recombine_extension(const FiniteGroup& g, const std::vector<Permutation>& extension);

// CI side: regular copies of G in Aut(cayley(G,S)).
bool ci_check_cayley(const FiniteGroup& g, ConnSet s, const Config& cfg = {});

// Identity-fixing representatives, one per Aut-conjugacy class of regular
// copies of G; {identity} for CI-digraphs.
std::vector<Permutation> ci_extension_cayley(const FiniteGroup& g, ConnSet s,
                                             const Config& cfg = {});

// Abstract multiplication table of a closed permutation set; the product is
// standard composition (right factor acts first).
FiniteGroup copy_as_group(const std::vector<Permutation>& sorted_elems);

// One isomorphism G -> H as an index map, or nullopt.
std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& g, const FiniteGroup& h);

// Reindex a copy by group element via some isomorphism G -> copy.
std::optional<std::vector<Permutation>> index_copy(const FiniteGroup& g,
                                                   const std::vector<Permutation>& copy);

// Enumerate semiregular copies of G in an element-listed group: subgroups
// isomorphic to G in which every non-identity element is fixed-point-free and
// whose orbits all have size |G|.  Each copy is a sorted element list.
std::vector<std::vector<Permutation>> semiregular_copies(const FiniteGroup& g,
                                                         const PermGroup& ambient,
                                                         int expected_orbits);

// Whether a semiregular copy (with regular orbits) is conjugate to the
// reference copy inside Aut(x); returns a conjugating automorphism.
std::optional<Permutation> conjugate_copy_in_aut(const Digraph& x, const FiniteGroup& g,
                                                 const std::vector<Permutation>& reference,
                                                 const std::vector<Permutation>& copy);

} // namespace haariso

#endif
