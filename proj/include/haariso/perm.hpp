#ifndef HAARISO_PERM_HPP
#define HAARISO_PERM_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace haariso {

// A permutation of [0, n).  Products compose left-to-right: (p.then(q))(x)
// means "apply p, then q".  This order matches the right-translation
// convention used by the Haar map formulas; it is asserted by the
// tilde = tau^-1 * bar * tau identity test.
struct Permutation {
  std::vector<int> images;

  Permutation() = default;
  explicit Permutation(std::vector<int> img) : images(std::move(img)) {}

  int degree() const { return static_cast<int>(images.size()); }
  int operator()(int x) const { return images[x]; }

  static Permutation identity(int n);
  static Permutation from_cycle(int n, const std::vector<int>& cycle);

  bool is_identity() const;
  Permutation inverse() const;
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;
};

// p conjugated by m: apply m^-1, then p, then m (relabels p's points by m).
Permutation conjugate(const Permutation& p, const Permutation& m);

struct PermGroup {
  int degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::vector<Permutation>> elements; // sorted when present
  std::optional<long long> order;

  bool has_elements() const { return elements.has_value(); }
  bool contains(const Permutation& p) const; // requires elements
};

struct BlockSystem {
  int degree = 0;
  std::vector<int> block_of;           // point -> block id
  std::vector<std::vector<int>> blocks; // sorted points per block

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  static BlockSystem from_block_of(std::vector<int> block_of);
  static BlockSystem from_blocks(int degree, const std::vector<std::vector<int>>& blocks);
};

// Closes the generated group; elements/order left unset if the group grows
// past `cap` (the budget-exhausted outcome — the group is still returned).
PermGroup closure(const std::vector<Permutation>& generators, long long cap = 2'000'000);

std::vector<std::vector<int>> orbits(const PermGroup& g);
std::vector<std::vector<int>> orbits_of(int degree, const std::vector<Permutation>& gens);

bool is_transitive(const PermGroup& g);

// Finest block system in which the seed pair shares a block (union-find
// refinement over generator images).  G must be transitive.
BlockSystem minimal_blocks(const PermGroup& g, std::pair<int, int> seed_pair);

// All block systems of a transitive group: minimal systems through every
// (0, x) plus closure under joins.
std::vector<BlockSystem> all_block_systems(const PermGroup& g);

bool is_invariant_partition(const PermGroup& g, const BlockSystem& b);

// Subgroup fixing every block setwise; requires elements.
PermGroup fix_subgroup(const PermGroup& g, const BlockSystem& b);

// Induced action on block ids; the partition must be G-invariant.
PermGroup quotient_action(const PermGroup& g, const BlockSystem& b);

bool is_semiregular(const PermGroup& g);

// Some a in A with a^-1 H a = K, scanning A's elements with early pruning on
// generator images; absent if no conjugator exists.
std::optional<Permutation> are_conjugate_subgroups(const PermGroup& a, const PermGroup& h,
                                                   const PermGroup& k,
                                                   long long budget = 2'000'000);

// A bijection lambda: O1 -> O2 intertwining the two constituent actions of F,
// or absent.  Returned as a degree-length image array (-1 off O1).
std::optional<std::vector<int>> equivalent_representations(const PermGroup& f,
                                                           const std::vector<int>& o1,
                                                           const std::vector<int>& o2);

std::vector<Permutation> sorted_unique(std::vector<Permutation> v);

} // namespace haariso

#endif
