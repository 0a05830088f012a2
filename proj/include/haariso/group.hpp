#ifndef HAARISO_GROUP_HPP
#define HAARISO_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace haariso {

struct Subgroup;

// A finite group as an explicit multiplication table.  Elements are dense
// indices 0..order-1; abelian groups built by make_abelian() carry their
// invariant-factor decomposition and use mixed-radix element encoding.
struct FiniteGroup {
  int order = 1;
  std::vector<std::vector<int>> table; // table[x][y] = x*y
  int identity = 0;
  std::vector<std::string> labels;
  std::optional<std::vector<int>> abelian_factors; // d1 | d2 | ... (invariant factors)

  int mul(int x, int y) const { return table[x][y]; }
  int inv(int x) const;
  int element_order(int x) const;
  bool is_abelian() const;
  bool contains_subgroup(const std::vector<int>& members) const;
};

struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> members; // sorted element indices

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int x) const;
};

struct Automorphism {
  std::vector<int> images;
};

enum class SylowShape { Cyclic, Elementary, Homocyclic, Other, Trivial };
const char* sylow_shape_name(SylowShape s);

// Direct product Z_{d1} x ... x Z_{dk}; abelian_factors normalized to
// invariant-factor form, element labels lexicographic over the given factors.
FiniteGroup make_abelian(const std::vector<int>& factors);

// All table-preserving bijections fixing the identity, by backtracking on
// generator images.  |G| must be within `bound`.
std::vector<Automorphism> automorphism_group(const FiniteGroup& g, int bound = 64);

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& seed);

// Quotient group on coset representatives plus the projection map
// (element -> quotient element index).  H must be normal.
std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& g, const Subgroup& h);

// All subgroups of order m, each reported once (sorted member sets).
std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, int m, int bound = 64);

// Shape of the Sylow p-subgroup read off the invariant factors (abelian only).
SylowShape sylow_shape(const FiniteGroup& g, int p);

bool every_sylow_elementary_or_cyclic(const FiniteGroup& g);
bool every_sylow_homocyclic(const FiniteGroup& g);

// The subgroup as a standalone group (indices 0..|H|-1 in member order),
// with invariant factors recomputed when the parent is abelian.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

// Invariant factors of an abelian group given by its table, via the
// p^i-torsion profile.
std::vector<int> invariant_factors_of(const FiniteGroup& g);

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& images);
bool check_group_axioms(const FiniteGroup& g);

std::vector<int> minimal_generating_sequence(const FiniteGroup& g);

} // namespace haariso

#endif
