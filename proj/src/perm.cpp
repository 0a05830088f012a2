#include "haariso/perm.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "haariso/error.hpp"

namespace haariso {

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycle(int n, const std::vector<int>& cycle) {
  auto p = identity(n);
  for (size_t i = 0; i < cycle.size(); ++i)
    p.images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images.size());
  for (int i = 0; i < degree(); ++i) img[images[i]] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::then(const Permutation& next) const {
  std::vector<int> img(images.size());
  for (int i = 0; i < degree(); ++i) img[i] = next.images[images[i]];
  return Permutation(std::move(img));
}

Permutation conjugate(const Permutation& p, const Permutation& m) {
  // x -> m(p(m^-1(x)))
  std::vector<int> img(p.images.size());
  for (int x = 0; x < p.degree(); ++x) img[m.images[x]] = m.images[p.images[x]];
  return Permutation(std::move(img));
}

bool PermGroup::contains(const Permutation& p) const {
  if (!elements) throw Error::budget_exhausted("contains: element list unavailable");
  return std::binary_search(elements->begin(), elements->end(), p);
}

std::vector<Permutation> sorted_unique(std::vector<Permutation> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

PermGroup closure(const std::vector<Permutation>& generators, long long cap) {
  PermGroup g;
  if (generators.empty()) throw Error::invalid_specification("closure: no generators");
  g.degree = generators[0].degree();
  for (const auto& p : generators)
    if (p.degree() != g.degree) throw Error::invalid_specification("closure: degree mismatch");
  g.generators = generators;

  std::set<std::vector<int>> seen;
  std::vector<Permutation> frontier;
  auto id = Permutation::identity(g.degree);
  seen.insert(id.images);
  frontier.push_back(id);
  bool capped = false;
  while (!frontier.empty() && !capped) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& s : generators) {
        auto y = x.then(s);
        if (seen.insert(y.images).second) {
          next.push_back(y);
          if (static_cast<long long>(seen.size()) > cap) { capped = true; break; }
        }
      }
      if (capped) break;
    }
    frontier.swap(next);
  }
  if (capped) return g; // budget-exhausted: no element list

  std::vector<Permutation> elems;
  elems.reserve(seen.size());
  for (const auto& img : seen) elems.emplace_back(img);
  g.order = static_cast<long long>(elems.size());
  g.elements = std::move(elems);
  return g;
}

std::vector<std::vector<int>> orbits_of(int degree, const std::vector<Permutation>& gens) {
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : gens)
    for (int x = 0; x < degree; ++x) {
      int a = find(x), b = find(p(x));
      if (a != b) parent[a] = b;
    }
  std::vector<std::vector<int>> by_root(degree);
  for (int x = 0; x < degree; ++x) by_root[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& v : by_root)
    if (!v.empty()) out.push_back(std::move(v));
  // orbits ordered by least member, members ascending
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return out;
}

std::vector<std::vector<int>> orbits(const PermGroup& g) {
  return orbits_of(g.degree, g.generators);
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

BlockSystem BlockSystem::from_block_of(std::vector<int> block_of) {
  BlockSystem b;
  b.degree = static_cast<int>(block_of.size());
  int nb = 0;
  for (int v : block_of) nb = std::max(nb, v + 1);
  b.blocks.assign(nb, {});
  for (int x = 0; x < b.degree; ++x) b.blocks[block_of[x]].push_back(x);
  b.block_of = std::move(block_of);
  return b;
}

BlockSystem BlockSystem::from_blocks(int degree, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(degree, -1);
  for (size_t i = 0; i < blocks.size(); ++i)
    for (int x : blocks[i]) {
      if (x < 0 || x >= degree || block_of[x] != -1)
        throw Error::not_a_block_system("blocks do not partition the point set");
      block_of[x] = static_cast<int>(i);
    }
  for (int v : block_of)
    if (v == -1) throw Error::not_a_block_system("blocks do not cover the point set");
  return from_block_of(std::move(block_of));
}

namespace {

// Canonicalize block ids by order of first appearance.
std::vector<int> normalize_block_of(const std::vector<int>& raw) {
  std::vector<int> remap(raw.size(), -1), out(raw.size());
  int next = 0;
  for (size_t x = 0; x < raw.size(); ++x) {
    if (remap[raw[x]] == -1) remap[raw[x]] = next++;
    out[x] = remap[raw[x]];
  }
  return out;
}

} // namespace

BlockSystem minimal_blocks(const PermGroup& g, std::pair<int, int> seed_pair) {
  if (!is_transitive(g)) throw Error::not_transitive("minimal_blocks: group is not transitive");
  const int n = g.degree;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> queue = {seed_pair};
  auto unite = [&](int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  };
  unite(seed_pair.first, seed_pair.second);
  while (!queue.empty()) {
    auto [a, b] = queue.back();
    queue.pop_back();
    for (const auto& p : g.generators) {
      int pa = p(a), pb = p(b);
      if (unite(pa, pb)) queue.push_back({pa, pb});
    }
  }
  std::vector<int> raw(n);
  for (int x = 0; x < n; ++x) raw[x] = find(x);
  return BlockSystem::from_block_of(normalize_block_of(raw));
}

bool is_invariant_partition(const PermGroup& g, const BlockSystem& b) {
  for (const auto& p : g.generators)
    for (const auto& blk : b.blocks) {
      int target = b.block_of[p(blk[0])];
      for (int x : blk)
        if (b.block_of[p(x)] != target) return false;
    }
  return true;
}

std::vector<BlockSystem> all_block_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw Error::not_transitive("all_block_systems: group is not transitive");
  const int n = g.degree;
  std::set<std::vector<int>> seen;
  std::vector<BlockSystem> out;
  auto push = [&](const BlockSystem& b) {
    if (seen.insert(b.block_of).second) out.push_back(b);
  };
  // Minimal systems through every (0, x), then closure under joins.
  std::vector<BlockSystem> minimal;
  for (int x = 1; x < n; ++x) {
    auto b = minimal_blocks(g, {0, x});
    push(b);
    minimal.push_back(b);
  }
  size_t head = 0;
  std::vector<BlockSystem> pool = out;
  while (head < pool.size()) {
    auto cur = pool[head++];
    for (const auto& m : minimal) {
      // Join: union-find merging cur with m.
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int y) {
        while (parent[y] != y) y = parent[y] = parent[parent[y]];
        return y;
      };
      auto unite = [&](int a, int bb) { parent[find(a)] = find(bb); };
      for (const auto& blk : cur.blocks)
        for (size_t i = 1; i < blk.size(); ++i) unite(blk[0], blk[i]);
      for (const auto& blk : m.blocks)
        for (size_t i = 1; i < blk.size(); ++i) unite(blk[0], blk[i]);
      std::vector<int> raw(n);
      for (int y = 0; y < n; ++y) raw[y] = find(y);
      auto joined = BlockSystem::from_block_of(normalize_block_of(raw));
      if (!seen.count(joined.block_of)) {
        seen.insert(joined.block_of);
        out.push_back(joined);
        pool.push_back(joined);
      }
    }
  }
  // Include the trivial systems.
  std::vector<int> singletons(n);
  std::iota(singletons.begin(), singletons.end(), 0);
  push(BlockSystem::from_block_of(singletons));
  push(BlockSystem::from_block_of(std::vector<int>(n, 0)));
  return out;
}

PermGroup fix_subgroup(const PermGroup& g, const BlockSystem& b) {
  if (!g.elements) throw Error::budget_exhausted("fix_subgroup: element list unavailable");
  std::vector<Permutation> fixed;
  for (const auto& p : *g.elements) {
    bool ok = true;
    for (int x = 0; x < g.degree && ok; ++x)
      if (b.block_of[p(x)] != b.block_of[x]) ok = false;
    if (ok) fixed.push_back(p);
  }
  PermGroup out;
  out.degree = g.degree;
  out.generators = fixed.empty() ? std::vector<Permutation>{Permutation::identity(g.degree)} : fixed;
  out.elements = sorted_unique(fixed);
  out.order = static_cast<long long>(out.elements->size());
  return out;
}

PermGroup quotient_action(const PermGroup& g, const BlockSystem& b) {
  if (!is_invariant_partition(g, b))
    throw Error::not_a_block_system("quotient_action: partition is not G-invariant");
  auto project = [&](const Permutation& p) {
    std::vector<int> img(b.num_blocks());
    for (int i = 0; i < b.num_blocks(); ++i) img[i] = b.block_of[p(b.blocks[i][0])];
    return Permutation(std::move(img));
  };
  PermGroup out;
  out.degree = b.num_blocks();
  for (const auto& p : g.generators) out.generators.push_back(project(p));
  if (out.generators.empty()) out.generators.push_back(Permutation::identity(out.degree));
  if (g.elements) {
    std::vector<Permutation> elems;
    elems.reserve(g.elements->size());
    for (const auto& p : *g.elements) elems.push_back(project(p));
    out.elements = sorted_unique(std::move(elems));
    out.order = static_cast<long long>(out.elements->size());
  }
  return out;
}

bool is_semiregular(const PermGroup& g) {
  if (!g.elements) throw Error::budget_exhausted("is_semiregular: element list unavailable");
  for (const auto& p : *g.elements) {
    if (p.is_identity()) continue;
    for (int x = 0; x < g.degree; ++x)
      if (p(x) == x) return false;
  }
  return true;
}

std::optional<Permutation> are_conjugate_subgroups(const PermGroup& a, const PermGroup& h,
                                                   const PermGroup& k, long long budget) {
  if (!a.elements || !h.elements || !k.elements)
    throw Error::budget_exhausted("are_conjugate_subgroups: element lists unavailable");
  if (h.elements->size() != k.elements->size()) return std::nullopt;

  const auto& kelems = *k.elements;
  auto k_contains = [&](const Permutation& p) {
    return std::binary_search(kelems.begin(), kelems.end(), p);
  };

  long long tried = 0;
  for (const auto& cand : *a.elements) {
    if (++tried > budget) throw Error::budget_exhausted("are_conjugate_subgroups: scan budget");
    bool ok = true;
    for (const auto& gen : h.generators) {
      if (!k_contains(conjugate(gen, cand))) { ok = false; break; }
    }
    if (!ok) continue;
    // Generators land in K and |H| = |K|, so conjugation maps H onto K.
    return cand;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> equivalent_representations(const PermGroup& f,
                                                           const std::vector<int>& o1,
                                                           const std::vector<int>& o2) {
  if (!f.elements) throw Error::budget_exhausted("equivalent_representations: element list unavailable");
  if (o1.size() != o2.size()) return std::nullopt;
  const auto& elems = *f.elements;

  std::vector<char> in1(f.degree, 0), in2(f.degree, 0);
  for (int x : o1) in1[x] = 1;
  for (int x : o2) in2[x] = 1;
  for (const auto& p : elems)
    for (int x = 0; x < f.degree; ++x) {
      if (in1[x] && !in1[p(x)]) throw Error::invalid_specification("O1 not F-invariant");
      if (in2[x] && !in2[p(x)]) throw Error::invalid_specification("O2 not F-invariant");
    }

  // F-orbits inside O1, in index order.
  auto suborbits = [&](const std::vector<int>& pts, const std::vector<char>& inside) {
    std::vector<std::vector<int>> orbs;
    std::vector<char> used(f.degree, 0);
    for (int x : pts) {
      if (used[x]) continue;
      std::vector<int> orb;
      for (const auto& p : elems)
        if (!used[p(x)]) { used[p(x)] = 1; orb.push_back(p(x)); }
      std::sort(orb.begin(), orb.end());
      orbs.push_back(orb);
    }
    (void)inside;
    return orbs;
  };
  auto orbs1 = suborbits(o1, in1);

  std::vector<int> lambda(f.degree, -1);
  std::vector<char> taken(f.degree, 0);

  std::function<bool(size_t)> solve = [&](size_t oi) -> bool {
    if (oi == orbs1.size()) return true;
    int base = orbs1[oi][0];
    for (int y0 : o2) {
      if (taken[y0]) continue;
      // lambda(g(base)) := g(y0) must be well-defined and injective.
      std::vector<std::pair<int, int>> placed;
      bool ok = true;
      for (const auto& p : elems) {
        int x = p(base), y = p(y0);
        if (lambda[x] == -1 && !taken[y]) {
          lambda[x] = y;
          taken[y] = 1;
          placed.push_back({x, y});
        } else if (lambda[x] != y) {
          ok = false;
          break;
        }
      }
      if (ok && solve(oi + 1)) return true;
      for (auto [x, y] : placed) {
        lambda[x] = -1;
        taken[y] = 0;
      }
    }
    return false;
  };

  if (!solve(0)) return std::nullopt;
  // The intertwining equation holds by construction; re-check exactly.
  for (const auto& p : elems)
    for (int x : o1)
      if (lambda[p(x)] != p(lambda[x])) throw Error::internal("equivalent_representations: intertwining broken");
  return lambda;
}

} // namespace haariso
