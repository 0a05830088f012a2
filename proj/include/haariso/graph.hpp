#ifndef HAARISO_GRAPH_HPP
#define HAARISO_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "haariso/group.hpp"
#include "haariso/perm.hpp"

namespace haariso {

// Connection sets are bitmasks over element indices (|G| <= 64 throughout).
using ConnSet = std::uint64_t;

ConnSet conn_from_list(const std::vector<int>& elems);
std::vector<int> conn_to_list(ConnSet s);
ConnSet conn_negate(const FiniteGroup& g, ConnSet s);        // {-s}
ConnSet conn_translate(const FiniteGroup& g, ConnSet s, int a); // {a + s}
ConnSet conn_apply_aut(const Automorphism& alpha, ConnSet s);

// Digraphs on up to 64 vertices, adjacency as bitmask rows.  An edge is a
// symmetric arc pair; Haar constructions always produce edges.
struct Digraph {
  int n = 0;
  std::vector<std::uint64_t> outm, inm;
  std::optional<std::array<std::uint64_t, 2>> bipartition; // B0, B1 masks

  bool has_arc(int u, int v) const { return (outm[u] >> v) & 1; }
  void add_arc(int u, int v);
  void add_edge(int u, int v);
  int out_degree(int v) const;
  int in_degree(int v) const;
  long long arc_count() const;
  bool is_graph() const; // arc-symmetric

  friend bool operator==(const Digraph& a, const Digraph& b);
};

Digraph make_digraph(int n);

// Vertex coding for Haar graphs: (i, g) <-> i*|G| + g.
inline int haar_encode(int order, int i, int g) { return i * order + g; }
inline std::pair<int, int> haar_decode(int order, int v) { return {v / order, v % order}; }

Digraph cayley(const FiniteGroup& g, ConnSet s);
Digraph haar(const FiniteGroup& g, ConnSet s);

std::vector<std::vector<int>> components(const Digraph& g);

// Equivalence classes of equal open in- and out-neighborhoods.
std::vector<std::vector<int>> twin_classes(const Digraph& g);

Digraph block_quotient(const Digraph& g, const std::vector<std::vector<int>>& parts);
Digraph wreath(const Digraph& g1, const Digraph& g2);
Digraph double_cover(const Digraph& g);

// Image of the graph under a vertex bijection.
Digraph apply_permutation(const Digraph& g, const Permutation& p);
bool is_automorphism_of(const Digraph& g, const Permutation& p);

// Exact automorphism group order by orbit-stabilizer recursion over the
// refinement tree; no element list is materialized.
long long automorphism_count(const Digraph& g, long long budget = 10'000'000);

// Full automorphism group as an element list (refinement-pruned backtracking).
PermGroup automorphisms(const Digraph& g, long long budget = 10'000'000);

// A generating set (stabilizer-chain transversals) without expanding the
// element list; usable when the group is too large to enumerate.
std::vector<Permutation> automorphism_generators(const Digraph& g, long long budget = 10'000'000);

std::optional<Permutation> isomorphism(const Digraph& g1, const Digraph& g2,
                                       long long budget = 10'000'000);

// With some vertex images forced.
std::optional<Permutation> isomorphism_pinned(const Digraph& g1, const Digraph& g2,
                                              const std::vector<std::pair<int, int>>& pins,
                                              long long budget = 10'000'000);

// Isomorphism-invariant canonical encoding: equal strings iff isomorphic.
std::string canonical_form(const Digraph& g, long long budget = 10'000'000);

std::string to_dot(const Digraph& g);

} // namespace haariso

#endif
