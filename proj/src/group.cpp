#include "haariso/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "haariso/error.hpp"

namespace haariso {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidSpecification: return "invalid-specification";
    case Err::BudgetExhausted: return "budget-exhausted";
    case Err::NotNormal: return "not-normal";
    case Err::Unsupported: return "unsupported";
    case Err::NotTransitive: return "not-transitive";
    case Err::NotABlockSystem: return "not-a-block-system";
    case Err::NotAGraph: return "not-a-graph";
    case Err::InvalidMap: return "invalid-map";
    case Err::InvalidAction: return "invalid-action";
    case Err::WrongCase: return "wrong-case";
    case Err::DegenerateInput: return "degenerate-input";
    case Err::Internal: return "internal";
  }
  return "unknown";
}

const char* sylow_shape_name(SylowShape s) {
  switch (s) {
    case SylowShape::Cyclic: return "cyclic";
    case SylowShape::Elementary: return "elementary";
    case SylowShape::Homocyclic: return "homocyclic";
    case SylowShape::Other: return "other";
    case SylowShape::Trivial: return "trivial";
  }
  return "unknown";
}

int FiniteGroup::inv(int x) const {
  for (int y = 0; y < order; ++y)
    if (table[x][y] == identity) return y;
  throw Error::internal("element without inverse");
}

int FiniteGroup::element_order(int x) const {
  int ord = 1, acc = x;
  while (acc != identity) {
    acc = table[acc][x];
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  if (abelian_factors) return true;
  for (int x = 0; x < order; ++x)
    for (int y = x + 1; y < order; ++y)
      if (table[x][y] != table[y][x]) return false;
  return true;
}

bool FiniteGroup::contains_subgroup(const std::vector<int>& members) const {
  for (int x : members)
    if (x < 0 || x >= order) return false;
  std::set<int> s(members.begin(), members.end());
  if (!s.count(identity)) return false;
  for (int x : members)
    for (int y : members)
      if (!s.count(table[x][y])) return false;
  return true;
}

bool Subgroup::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

namespace {

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.push_back({p, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// Assemble invariant factors d1 | d2 | ... from per-prime exponent partitions.
std::vector<int> assemble_invariant_factors(std::map<int, std::vector<int>>& prime_parts) {
  size_t k = 0;
  for (auto& [p, parts] : prime_parts) {
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    k = std::max(k, parts.size());
  }
  std::vector<long long> ds(k, 1);
  for (auto& [p, parts] : prime_parts) {
    for (size_t i = 0; i < parts.size(); ++i) {
      long long pe = 1;
      for (int j = 0; j < parts[i]; ++j) pe *= p;
      ds[i] *= pe;
    }
  }
  // ds is sorted by divisibility with the largest first; reverse for d1 | d2 | ...
  std::vector<int> out;
  for (auto it = ds.rbegin(); it != ds.rend(); ++it)
    if (*it > 1) out.push_back(static_cast<int>(*it));
  if (out.empty()) out.push_back(1);
  return out;
}

} // namespace

FiniteGroup make_abelian(const std::vector<int>& factors) {
  if (factors.empty()) throw Error::invalid_specification("empty factor list");
  for (int d : factors)
    if (d < 2) throw Error::invalid_specification("factor < 2");
  long long n = 1;
  for (int d : factors) {
    n *= d;
    if (n > 4096) throw Error::invalid_specification("group order too large");
  }

  FiniteGroup g;
  g.order = static_cast<int>(n);
  const int k = static_cast<int>(factors.size());

  auto decode = [&](int x) {
    std::vector<int> digits(k);
    for (int i = k - 1; i >= 0; --i) {
      digits[i] = x % factors[i];
      x /= factors[i];
    }
    return digits;
  };
  auto encode = [&](const std::vector<int>& digits) {
    int x = 0;
    for (int i = 0; i < k; ++i) x = x * factors[i] + digits[i];
    return x;
  };

  g.table.assign(g.order, std::vector<int>(g.order));
  for (int x = 0; x < g.order; ++x) {
    auto dx = decode(x);
    for (int y = 0; y < g.order; ++y) {
      auto dy = decode(y);
      std::vector<int> dz(k);
      for (int i = 0; i < k; ++i) dz[i] = (dx[i] + dy[i]) % factors[i];
      g.table[x][y] = encode(dz);
    }
  }
  g.identity = 0;

  g.labels.resize(g.order);
  for (int x = 0; x < g.order; ++x) {
    auto dx = decode(x);
    std::string lab;
    if (k == 1) {
      lab = std::to_string(dx[0]);
    } else {
      lab = "(";
      for (int i = 0; i < k; ++i) {
        if (i) lab += ",";
        lab += std::to_string(dx[i]);
      }
      lab += ")";
    }
    g.labels[x] = lab;
  }

  std::map<int, std::vector<int>> prime_parts;
  for (int d : factors)
    for (auto [p, e] : factorize(d)) prime_parts[p].push_back(e);
  g.abelian_factors = assemble_invariant_factors(prime_parts);
  return g;
}

bool check_group_axioms(const FiniteGroup& g) {
  const int n = g.order;
  if (static_cast<int>(g.table.size()) != n) return false;
  for (const auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) return false;
    for (int v : row)
      if (v < 0 || v >= n) return false;
  }
  for (int x = 0; x < n; ++x)
    if (g.table[g.identity][x] != x || g.table[x][g.identity] != x) return false;
  for (int x = 0; x < n; ++x) {
    bool has_inv = false;
    for (int y = 0; y < n; ++y)
      if (g.table[x][y] == g.identity && g.table[y][x] == g.identity) has_inv = true;
    if (!has_inv) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.table[g.table[x][y]][z] != g.table[x][g.table[y][z]]) return false;
  return true;
}

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& images) {
  const int n = g.order;
  if (static_cast<int>(images.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  if (images[g.identity] != g.identity) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (images[g.table[x][y]] != g.table[images[x]][images[y]]) return false;
  return true;
}

std::vector<int> minimal_generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  Subgroup cur = generated_subgroup(g, {});
  while (cur.order() < g.order) {
    int next = -1;
    for (int x = 0; x < g.order; ++x)
      if (!cur.contains(x)) { next = x; break; }
    gens.push_back(next);
    auto seed = cur.members;
    seed.push_back(next);
    cur = generated_subgroup(g, seed);
  }
  return gens;
}

namespace {

// Extend partial generator images to a full endomorphism via closure; returns
// empty if inconsistent.
std::vector<int> extend_hom(const FiniteGroup& g, const std::vector<int>& gens,
                            const std::vector<int>& gen_images) {
  std::vector<int> img(g.order, -1);
  img[g.identity] = g.identity;
  std::vector<int> frontier = {g.identity};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (size_t i = 0; i < gens.size(); ++i) {
        int y = g.table[x][gens[i]];
        int iy = g.table[img[x]][gen_images[i]];
        if (img[y] == -1) {
          img[y] = iy;
          next.push_back(y);
        } else if (img[y] != iy) {
          return {};
        }
      }
    }
    frontier.swap(next);
  }
  for (int v : img)
    if (v == -1) return {};
  return img;
}

void aut_backtrack(const FiniteGroup& g, const std::vector<int>& gens, size_t pos,
                   std::vector<int>& gen_images, std::vector<Automorphism>& out) {
  if (pos == gens.size()) {
    auto img = extend_hom(g, gens, gen_images);
    if (!img.empty() && is_automorphism(g, img)) out.push_back({std::move(img)});
    return;
  }
  const int want_order = g.element_order(gens[pos]);
  for (int cand = 0; cand < g.order; ++cand) {
    if (g.element_order(cand) != want_order) continue;
    gen_images[pos] = cand;
    aut_backtrack(g, gens, pos + 1, gen_images, out);
  }
}

} // namespace

std::vector<Automorphism> automorphism_group(const FiniteGroup& g, int bound) {
  if (g.order > bound) throw Error::budget_exhausted("automorphism_group: order exceeds bound");
  auto gens = minimal_generating_sequence(g);
  if (gens.empty()) return {Automorphism{{0}}}; // trivial group
  std::vector<int> gen_images(gens.size(), 0);
  std::vector<Automorphism> out;
  aut_backtrack(g, gens, 0, gen_images, out);
  std::sort(out.begin(), out.end(),
            [](const Automorphism& a, const Automorphism& b) { return a.images < b.images; });
  return out;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& seed) {
  std::set<int> members = {g.identity};
  std::vector<int> frontier = {g.identity};
  std::vector<int> gens;
  for (int s : seed) {
    gens.push_back(s);
    gens.push_back(g.inv(s));
  }
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        int y = g.table[x][s];
        if (members.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  Subgroup h;
  h.parent = &g;
  h.members.assign(members.begin(), members.end());
  return h;
}

namespace {

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  if (g.abelian_factors) return true;
  std::set<int> s(h.members.begin(), h.members.end());
  for (int x = 0; x < g.order; ++x) {
    int xi = g.inv(x);
    for (int m : h.members)
      if (!s.count(g.table[g.table[xi][m]][x])) return false;
  }
  return true;
}

} // namespace

std::pair<FiniteGroup, std::vector<int>> quotient_group(const FiniteGroup& g, const Subgroup& h) {
  if (!is_normal(g, h)) throw Error::not_normal("quotient: subgroup is not normal");

  // Coset representative = least element of the coset.
  std::vector<int> coset_rep(g.order, -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order; ++x) {
    if (coset_rep[x] != -1) continue;
    for (int m : h.members) coset_rep[g.table[x][m]] = x;
    reps.push_back(x);
  }
  std::vector<int> rep_index(g.order, -1);
  for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);

  FiniteGroup q;
  q.order = static_cast<int>(reps.size());
  q.table.assign(q.order, std::vector<int>(q.order));
  for (int i = 0; i < q.order; ++i)
    for (int j = 0; j < q.order; ++j)
      q.table[i][j] = rep_index[coset_rep[g.table[reps[i]][reps[j]]]];
  q.identity = rep_index[coset_rep[g.identity]];
  q.labels.resize(q.order);
  for (int i = 0; i < q.order; ++i) q.labels[i] = g.labels.empty() ? std::to_string(reps[i]) : g.labels[reps[i]] + "H";
  if (g.abelian_factors) q.abelian_factors = invariant_factors_of(q);

  std::vector<int> projection(g.order);
  for (int x = 0; x < g.order; ++x) projection[x] = rep_index[coset_rep[x]];
  return {q, projection};
}

std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, int m, int bound) {
  if (g.order > bound) throw Error::budget_exhausted("subgroups_of_order: order exceeds bound");
  if (m < 1 || g.order % m != 0)
    throw Error::invalid_specification("subgroups_of_order: m does not divide |G|");

  // BFS over the subgroup lattice: close the trivial group under adding one
  // generator at a time.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  auto trivial = generated_subgroup(g, {});
  seen.insert(trivial.members);
  frontier.push_back(trivial.members);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& mem : frontier) {
      if (static_cast<int>(mem.size()) >= g.order) continue;
      std::set<int> in(mem.begin(), mem.end());
      for (int x = 0; x < g.order; ++x) {
        if (in.count(x)) continue;
        auto seed = mem;
        seed.push_back(x);
        auto h = generated_subgroup(g, seed);
        if (seen.insert(h.members).second) next.push_back(h.members);
      }
    }
    frontier.swap(next);
  }

  std::vector<Subgroup> out;
  for (const auto& mem : seen)
    if (static_cast<int>(mem.size()) == m) out.push_back(Subgroup{&g, mem});
  return out;
}

std::vector<int> invariant_factors_of(const FiniteGroup& g) {
  if (!g.is_abelian()) throw Error::unsupported("invariant factors of a nonabelian group");
  std::map<int, std::vector<int>> prime_parts;
  for (auto [p, e] : factorize(g.order)) {
    // |{x : p^i * x = 0}| = p^(sum_j min(lambda_j, i)); the conjugate partition
    // falls out of successive quotients of torsion counts.
    std::vector<long long> torsion = {1};
    for (int i = 1; i <= e; ++i) {
      long long pe = 1;
      for (int j = 0; j < i; ++j) pe *= p;
      long long cnt = 0;
      for (int x = 0; x < g.order; ++x) {
        long long ee = pe % g.element_order(x);
        int base = x, r = g.identity;
        while (ee > 0) {
          if (ee & 1) r = g.table[r][base];
          base = g.table[base][base];
          ee >>= 1;
        }
        if (r == g.identity) ++cnt;
      }
      torsion.push_back(cnt);
    }
    std::vector<int> conj;
    for (int i = 1; i <= e; ++i) {
      long long ratio = torsion[i] / torsion[i - 1];
      int cnt = 0;
      long long v = 1;
      while (v < ratio) { v *= p; ++cnt; }
      conj.push_back(cnt); // number of parts >= i
    }
    std::vector<int> parts;
    for (int j = 0; j < (conj.empty() ? 0 : conj[0]); ++j) {
      int lam = 0;
      for (int i = 0; i < static_cast<int>(conj.size()); ++i)
        if (conj[i] > j) lam = i + 1;
      parts.push_back(lam);
    }
    prime_parts[p] = parts;
  }
  return assemble_invariant_factors(prime_parts);
}

SylowShape sylow_shape(const FiniteGroup& g, int p) {
  if (!g.is_abelian()) throw Error::unsupported("sylow_shape requires an abelian group");
  std::vector<int> factors = g.abelian_factors ? *g.abelian_factors : invariant_factors_of(g);
  std::vector<int> exps;
  for (int d : factors) {
    int e = 0;
    while (d % p == 0) { d /= p; ++e; }
    if (e > 0) exps.push_back(e);
  }
  if (exps.empty()) return SylowShape::Trivial;
  if (exps.size() == 1) return SylowShape::Cyclic;
  bool all_equal = std::all_of(exps.begin(), exps.end(), [&](int e) { return e == exps[0]; });
  if (all_equal) return exps[0] == 1 ? SylowShape::Elementary : SylowShape::Homocyclic;
  return SylowShape::Other;
}

namespace {

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

} // namespace

bool every_sylow_elementary_or_cyclic(const FiniteGroup& g) {
  for (int p : prime_divisors(g.order)) {
    auto s = sylow_shape(g, p);
    if (s != SylowShape::Cyclic && s != SylowShape::Elementary && s != SylowShape::Trivial)
      return false;
  }
  return true;
}

bool every_sylow_homocyclic(const FiniteGroup& g) {
  for (int p : prime_divisors(g.order)) {
    auto s = sylow_shape(g, p);
    if (s == SylowShape::Other) return false;
  }
  return true;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> index_of(g.order, -1);
  for (size_t i = 0; i < h.members.size(); ++i) index_of[h.members[i]] = static_cast<int>(i);
  FiniteGroup s;
  s.order = h.order();
  s.table.assign(s.order, std::vector<int>(s.order));
  for (int i = 0; i < s.order; ++i)
    for (int j = 0; j < s.order; ++j) {
      int prod = g.table[h.members[i]][h.members[j]];
      if (index_of[prod] < 0) throw Error::internal("subgroup_as_group: set not closed");
      s.table[i][j] = index_of[prod];
    }
  s.identity = index_of[g.identity];
  s.labels.resize(s.order);
  for (int i = 0; i < s.order; ++i)
    s.labels[i] = g.labels.empty() ? std::to_string(h.members[i]) : g.labels[h.members[i]];
  if (g.abelian_factors) s.abelian_factors = invariant_factors_of(s);
  return s;
}

} // namespace haariso
