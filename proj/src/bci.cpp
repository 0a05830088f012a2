#include "haariso/bci.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "haariso/error.hpp"

namespace haariso {

const char* provenance_name(MapProvenance p) {
  switch (p) {
    case MapProvenance::IsoElement: return "iso-element";
    case MapProvenance::Extension: return "extension";
    case MapProvenance::RelabelingComposite: return "relabeling-composite";
  }
  return "unknown";
}

void SolvingSet::add(Permutation p, MapProvenance src) {
  maps.push_back(std::move(p));
  provenance.push_back(src);
}

void SolvingSet::dedup() {
  std::vector<size_t> idx(maps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (maps[a] != maps[b]) return maps[a] < maps[b];
    return provenance[a] < provenance[b]; // iso-element tag wins ties
  });
  std::vector<Permutation> m2;
  std::vector<MapProvenance> p2;
  for (size_t i : idx) {
    if (!m2.empty() && m2.back() == maps[i]) continue;
    m2.push_back(maps[i]);
    p2.push_back(provenance[i]);
  }
  maps = std::move(m2);
  provenance = std::move(p2);
}

ConnSet iso_apply(const FiniteGroup& g, const IsoElement& m, ConnSet s) {
  if (g.abelian_factors || g.is_abelian()) {
    // tau^i . alpha_hat . bar(g) sends S to alpha((-1)^i S) - g
    ConnSet t = (m.i == 1) ? conn_negate(g, s) : s;
    t = conn_apply_aut(m.alpha, t);
    return conn_translate(g, t, g.inv(m.g));
  }
  return transport_connection_set(g, m.realized, s);
}

std::vector<ConnSet> iso_orbit_of(const FiniteGroup& g, const std::vector<IsoElement>& iso,
                                  ConnSet s) {
  std::set<ConnSet> orbit;
  for (const auto& m : iso) orbit.insert(iso_apply(g, m, s));
  return {orbit.begin(), orbit.end()};
}

std::vector<ConnSet> isomorphic_universe(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  if (g.order > cfg.subset_enum_bound)
    throw Error::budget_exhausted("isomorphic_universe: |G| exceeds subset enumeration bound");
  auto x = haar(g, s);
  const int k = std::popcount(s);
  std::vector<ConnSet> out;
  for (ConnSet t = 0; t < (1ULL << g.order); ++t) {
    if (std::popcount(t) != k) continue; // Haar graphs are |S|-regular
    if (t == s || isomorphism(x, haar(g, t), cfg.backtrack_budget)) out.push_back(t);
  }
  return out;
}

std::vector<ConnSet> check_universe(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  if (g.order <= 9) return isomorphic_universe(g, s, cfg);
  std::set<ConnSet> out;
  auto iso = iso_set(g, cfg.group_bound);
  for (const auto& m : iso) out.insert(iso_apply(g, m, s));
  auto x = haar(g, s);
  std::mt19937_64 rng(cfg.seed);
  const int k = std::popcount(s);
  std::vector<int> pool(g.order);
  std::iota(pool.begin(), pool.end(), 0);
  for (int draws = 0; draws < 2000; ++draws) {
    std::shuffle(pool.begin(), pool.end(), rng);
    ConnSet t = 0;
    for (int i = 0; i < k; ++i) t |= (1ULL << pool[i]);
    if (out.count(t)) continue;
    if (isomorphism(x, haar(g, t), cfg.backtrack_budget)) out.insert(t);
  }
  return {out.begin(), out.end()};
}

std::optional<IsoElement> iso_by_iso_set(const FiniteGroup& g, ConnSet s, ConnSet t,
                                         const Config& cfg) {
  for (const auto& m : iso_set(g, cfg.group_bound))
    if (iso_apply(g, m, s) == t) return m;
  return std::nullopt;
}

AbciReport is_abci_graph(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  auto iso = iso_set(g, cfg.group_bound);
  std::set<ConnSet> reached;
  for (const auto& m : iso) reached.insert(iso_apply(g, m, s));

  AbciReport rep;
  rep.verdict = true;
  for (ConnSet t : isomorphic_universe(g, s, cfg)) {
    if (reached.count(t)) continue;
    rep.verdict = false;
    rep.witness_t = t;
    rep.witness_iso = isomorphism(haar(g, s), haar(g, t), cfg.backtrack_budget);
    break;
  }
  return rep;
}

AbciReport is_abci_group(const FiniteGroup& g, const Config& cfg) {
  if (g.order > cfg.subset_enum_bound)
    throw Error::budget_exhausted("is_abci_group: |G| exceeds subset enumeration bound");
  auto iso = iso_set(g, cfg.group_bound);
  AbciReport out;
  out.verdict = true;
  for (ConnSet s = 0; s < (1ULL << g.order); ++s) {
    auto orbit = iso_orbit_of(g, iso, s);
    if (orbit.front() != s) continue; // one representative per Iso(G)-orbit
    auto rep = is_abci_graph(g, s, cfg);
    if (!rep.verdict) {
      out.verdict = false;
      out.witness_s = s;
      out.witness_t = rep.witness_t;
      out.witness_iso = rep.witness_iso;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Copies of G inside automorphism groups.
// ---------------------------------------------------------------------------

namespace {

bool all_cycles_of_length(const Permutation& p, int len) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    int u = v, c = 0;
    do {
      seen[u] = 1;
      u = p(u);
      ++c;
    } while (u != v);
    if (c != len) return false;
  }
  return true;
}

std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> prof;
  for (int x = 0; x < g.order; ++x) prof.push_back(g.element_order(x));
  std::sort(prof.begin(), prof.end());
  return prof;
}

int perm_order(const Permutation& p) {
  Permutation acc = p;
  int ord = 1;
  while (!acc.is_identity()) {
    acc = acc.then(p);
    ++ord;
  }
  return ord;
}

bool semiregular_with_orbits(const std::vector<Permutation>& elems, int degree, int orbit_size,
                             int expected_orbits) {
  for (const auto& p : elems) {
    if (p.is_identity()) continue;
    for (int v = 0; v < degree; ++v)
      if (p(v) == v) return false;
  }
  auto orbs = orbits_of(degree, elems);
  if (static_cast<int>(orbs.size()) != expected_orbits) return false;
  for (const auto& o : orbs)
    if (static_cast<int>(o.size()) != orbit_size) return false;
  return true;
}

} // namespace

// Abstract multiplication table of a copy (indices into the sorted list);
// product is standard composition: (p_i p_j)(x) = p_i(p_j(x)).
FiniteGroup copy_as_group(const std::vector<Permutation>& sorted_elems) {
  const int n = static_cast<int>(sorted_elems.size());
  FiniteGroup abs;
  abs.order = n;
  abs.table.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto prod = sorted_elems[j].then(sorted_elems[i]);
      auto it = std::lower_bound(sorted_elems.begin(), sorted_elems.end(), prod);
      if (it == sorted_elems.end() || !(*it == prod))
        throw Error::internal("copy_as_group: set not closed");
      abs.table[i][j] = static_cast<int>(it - sorted_elems.begin());
    }
  for (int i = 0; i < n; ++i)
    if (sorted_elems[i].is_identity()) abs.identity = i;
  abs.labels.resize(n);
  for (int i = 0; i < n; ++i) abs.labels[i] = "p" + std::to_string(i);
  return abs;
}

// One isomorphism G -> H (as index map), or nullopt.
std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order != h.order) return std::nullopt;
  auto gens = minimal_generating_sequence(g);
  if (gens.empty()) return std::vector<int>{h.identity};
  std::vector<int> gen_images(gens.size(), 0);
  std::optional<std::vector<int>> found;
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (found) return;
    if (pos == gens.size()) {
      std::vector<int> img(g.order, -1);
      img[g.identity] = h.identity;
      std::vector<int> frontier = {g.identity};
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
          for (size_t i = 0; i < gens.size(); ++i) {
            int y = g.table[x][gens[i]];
            int iy = h.table[img[x]][gen_images[i]];
            if (img[y] == -1) {
              img[y] = iy;
              next.push_back(y);
            } else if (img[y] != iy) {
              return;
            }
          }
        frontier.swap(next);
      }
      std::vector<char> seen(h.order, 0);
      for (int v : img) {
        if (v < 0 || seen[v]) return;
        seen[v] = 1;
      }
      for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
          if (img[g.table[x][y]] != h.table[img[x]][img[y]]) return;
      found = img;
      return;
    }
    int want = g.element_order(gens[pos]);
    for (int cand = 0; cand < h.order && !found; ++cand) {
      if (h.element_order(cand) != want) continue;
      gen_images[pos] = cand;
      rec(pos + 1);
    }
  };
  rec(0);
  return found;
}

namespace {

// Conjugator search between two element-indexed copies inside Aut(x): some
// v in Aut(x) with v ref_e v^-1 = copy_theta(e) for a group automorphism
// twist.  The intertwining relation pins v once the orbit base images are
// chosen, so the search space is |Aut(G)| * degree^(orbit count).
std::optional<Permutation> conjugator_between(const Digraph& x, const FiniteGroup& g,
                                              const std::vector<Permutation>& ref_by_elem,
                                              const std::vector<Permutation>& copy_by_elem) {
  const int degree = x.n;
  auto ref_orbits = orbits_of(degree, ref_by_elem);
  std::vector<int> bases;
  for (const auto& o : ref_orbits) bases.push_back(o.front());

  for (const auto& alpha : automorphism_group(g)) {
    std::vector<int> ys(bases.size(), 0);
    std::function<std::optional<Permutation>(size_t)> rec =
        [&](size_t bi) -> std::optional<Permutation> {
      if (bi == bases.size()) {
        std::vector<int> img(degree, -1);
        for (int e = 0; e < g.order; ++e) {
          const auto& pe = copy_by_elem[alpha.images[e]];
          for (size_t i = 0; i < bases.size(); ++i) {
            int from = ref_by_elem[e](bases[i]);
            int to = pe(ys[i]);
            if (img[from] == -1)
              img[from] = to;
            else if (img[from] != to)
              return std::nullopt;
          }
        }
        std::vector<char> seen(degree, 0);
        for (int v : img) {
          if (v < 0 || seen[v]) return std::nullopt;
          seen[v] = 1;
        }
        Permutation v(img);
        if (!is_automorphism_of(x, v)) return std::nullopt;
        for (int e = 0; e < g.order; ++e)
          if (!(conjugate(ref_by_elem[e], v) == copy_by_elem[alpha.images[e]]))
            return std::nullopt;
        return v;
      }
      for (int y = 0; y < degree; ++y) {
        ys[bi] = y;
        if (auto v = rec(bi + 1)) return v;
      }
      return std::nullopt;
    };
    if (auto v = rec(0)) return v;
  }
  return std::nullopt;
}

} // namespace

std::optional<std::vector<Permutation>> index_copy(const FiniteGroup& g,
                                                   const std::vector<Permutation>& copy) {
  auto abs = copy_as_group(copy);
  auto theta = group_isomorphism(g, abs);
  if (!theta) return std::nullopt;
  std::vector<Permutation> by_elem;
  by_elem.reserve(g.order);
  for (int e = 0; e < g.order; ++e) by_elem.push_back(copy[(*theta)[e]]);
  return by_elem;
}

std::vector<std::vector<Permutation>> semiregular_copies(const FiniteGroup& g,
                                                         const PermGroup& ambient,
                                                         int expected_orbits) {
  if (!ambient.elements)
    throw Error::budget_exhausted("semiregular_copies: ambient element list unavailable");
  const int degree = ambient.degree;
  const int orbit_size = g.order;
  if (g.order == 1) {
    if (degree == expected_orbits) return {{Permutation::identity(degree)}};
    return {};
  }
  auto factors = g.abelian_factors ? *g.abelian_factors : invariant_factors_of(g);
  if (factors.size() > 2)
    throw Error::unsupported("semiregular_copies: groups needing more than 2 generators");
  auto g_profile = order_profile(g);

  const int top = factors.back();
  std::vector<Permutation> longest; // semiregular elements of order = largest factor
  for (const auto& p : *ambient.elements)
    if (!p.is_identity() && all_cycles_of_length(p, top)) longest.push_back(p);

  std::set<std::vector<Permutation>> found;
  if (factors.size() == 1) {
    for (const auto& x : longest) {
      std::vector<Permutation> elems = {Permutation::identity(degree)};
      Permutation acc = x;
      while (!acc.is_identity()) {
        elems.push_back(acc);
        acc = acc.then(x);
      }
      elems = sorted_unique(std::move(elems));
      if (semiregular_with_orbits(elems, degree, orbit_size, expected_orbits)) found.insert(elems);
    }
  } else {
    for (const auto& x : longest) {
      auto gen_x = closure({x}, g.order + 1);
      for (const auto& y : *ambient.elements) {
        if (y.is_identity()) continue;
        if (perm_order(y) != factors[0]) continue;
        if (!(x.then(y) == y.then(x))) continue; // copies of abelian G commute
        if (gen_x.contains(y)) continue;
        auto sub = closure({x, y}, g.order + 1);
        if (!sub.elements || *sub.order != g.order) continue;
        auto elems = *sub.elements;
        if (found.count(elems)) continue;
        if (!semiregular_with_orbits(elems, degree, orbit_size, expected_orbits)) continue;
        auto abs = copy_as_group(elems);
        std::vector<int> prof;
        for (int i = 0; i < abs.order; ++i) prof.push_back(abs.element_order(i));
        std::sort(prof.begin(), prof.end());
        if (prof != g_profile) continue; // abelian type is determined by the order profile
        found.insert(elems);
      }
    }
  }
  return {found.begin(), found.end()};
}

std::optional<Permutation> conjugate_copy_in_aut(const Digraph& x, const FiniteGroup& g,
                                                 const std::vector<Permutation>& reference,
                                                 const std::vector<Permutation>& copy) {
  auto by_elem = index_copy(g, copy);
  if (!by_elem) return std::nullopt;
  return conjugator_between(x, g, reference, *by_elem);
}

bool babai_criterion_haar(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  auto x = haar(g, s);
  std::vector<Permutation> reference;
  for (int e = 0; e < g.order; ++e) reference.push_back(ghat_map(g, e).realized);

  // Sound fast path: test the copies transported from every isomorphic Haar
  // graph first, so a failure shows up before any large enumeration.
  for (ConnSet t : isomorphic_universe(g, s, cfg)) {
    auto phi = isomorphism(x, haar(g, t), cfg.backtrack_budget);
    if (!phi) continue;
    auto back = phi->inverse();
    std::vector<Permutation> copy;
    for (int e = 0; e < g.order; ++e) copy.push_back(conjugate(ghat_map(g, e).realized, back));
    copy = sorted_unique(std::move(copy));
    if (!conjugate_copy_in_aut(x, g, reference, copy)) return false;
  }

  // Exhaustive confirmation over all semiregular two-orbit copies.
  auto auts = automorphisms(x, cfg.aut_element_cap);
  for (const auto& copy : semiregular_copies(g, auts, 2)) {
    auto orbs = orbits_of(auts.degree, copy);
    bool regular_orbits = orbs.size() == 2;
    for (const auto& o : orbs) regular_orbits &= (static_cast<int>(o.size()) == g.order);
    if (!regular_orbits) continue;
    if (!conjugate_copy_in_aut(x, g, reference, copy)) return false;
  }
  return true;
}

namespace {

std::vector<Permutation> left_regular_rep(const FiniteGroup& g) {
  std::vector<Permutation> out;
  out.reserve(g.order);
  for (int e = 0; e < g.order; ++e) {
    std::vector<int> img(g.order);
    for (int v = 0; v < g.order; ++v) img[v] = g.mul(e, v);
    out.push_back(Permutation(std::move(img)));
  }
  return out;
}

} // namespace

bool ci_check_cayley(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  auto x = cayley(g, s);
  auto reference = left_regular_rep(g);
  auto auts = automorphisms(x, cfg.aut_element_cap);
  for (const auto& copy : semiregular_copies(g, auts, 1))
    if (!conjugate_copy_in_aut(x, g, reference, copy)) return false;
  return true;
}

std::vector<Permutation> ci_extension_cayley(const FiniteGroup& g, ConnSet s, const Config& cfg) {
  auto x = cayley(g, s);
  auto reference = left_regular_rep(g);
  auto auts = automorphisms(x, cfg.aut_element_cap);
  auto copies = semiregular_copies(g, auts, 1);

  std::vector<Permutation> out = {Permutation::identity(g.order)};
  std::vector<std::vector<Permutation>> class_reps; // non-G_L classes seen so far
  for (const auto& copy : copies) {
    if (conjugate_copy_in_aut(x, g, reference, copy)) continue; // the G_L class
    bool seen = false;
    for (const auto& rep : class_reps) {
      auto rep_by_elem = index_copy(g, rep);
      if (rep_by_elem && conjugator_between(x, g, *rep_by_elem, *index_copy(g, copy))) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    class_reps.push_back(copy);

    // identity-fixing representative t with t^-1 G_L t = copy; this direction
    // makes t(Cay(G,S)) a Cayley digraph again, which the solving-set
    // recombination needs
    auto by_elem = index_copy(g, copy);
    if (!by_elem) throw Error::internal("ci_extension: copy not isomorphic to G");
    std::vector<int> img(g.order);
    for (int e = 0; e < g.order; ++e) img[e] = (*by_elem)[e](g.identity);
    Permutation t = Permutation(img).inverse();
    std::set<Permutation> copyset(copy.begin(), copy.end());
    auto back_conjugates = [&](const Permutation& cand) {
      for (int e = 0; e < g.order; ++e)
        if (!copyset.count(conjugate(reference[e], cand.inverse()))) return false;
      return true;
    };
    if (!back_conjugates(t)) t = t.inverse();
    if (!back_conjugates(t)) throw Error::internal("ci_extension: standardizer failed");
    if (t(g.identity) != g.identity) {
      // post-translate to fix the identity point (stays in the same class)
      std::vector<int> tr(g.order);
      for (int v = 0; v < g.order; ++v) tr[v] = g.mul(g.inv(t(g.identity)), v);
      t = t.then(Permutation(tr));
    }
    out.push_back(t);
  }
  return sorted_unique(std::move(out));
}

// ---------------------------------------------------------------------------
// Solving sets and extensions.
// ---------------------------------------------------------------------------

std::vector<ConnSet> reached_sets(const FiniteGroup& g, ConnSet s, const SolvingSet& candidate) {
  auto x = haar(g, s);
  std::set<ConnSet> out;
  for (const auto& m : candidate.maps)
    if (auto t = connection_set_of(g, apply_permutation(x, m))) out.insert(*t);
  return {out.begin(), out.end()};
}

bool solving_set_check(const FiniteGroup& g, ConnSet s, const SolvingSet& candidate,
                       const std::vector<ConnSet>& universe) {
  const int n = g.order;
  // (2) a member sending (0,1_G) into B_0 must fix it
  const int base = haar_encode(n, 0, g.identity);
  for (const auto& m : candidate.maps) {
    if (m.degree() != 2 * n) return false;
    int img = m(base);
    if (img < n && img != base) return false;
  }
  // (3) Iso(G) is contained in the candidate
  std::set<Permutation> have(candidate.maps.begin(), candidate.maps.end());
  for (const auto& m : iso_set(g))
    if (!have.count(m.realized)) return false;
  // (1) every isomorphic T is the literal image of S under some member
  auto reach = reached_sets(g, s, candidate);
  std::set<ConnSet> reached(reach.begin(), reach.end());
  for (ConnSet t : universe)
    if (!reached.count(t)) return false;
  return true;
}

std::vector<Permutation> abci_extension_from_solving_set(const FiniteGroup& g,
                                                         const SolvingSet& ss) {
  // Classes of the relation generated by s ~ s.then(nu), nu in Iso(G).  The
  // paper's relation s1 = nu s2 is not symmetric as a literal set relation
  // (Iso(G) is not inverse-closed), so we take the generated equivalence.
  std::vector<Permutation> maps = sorted_unique(ss.maps);
  auto index_of = [&](const Permutation& p) -> int {
    auto it = std::lower_bound(maps.begin(), maps.end(), p);
    if (it == maps.end() || !(*it == p)) return -1;
    return static_cast<int>(it - maps.begin());
  };
  std::vector<int> parent(maps.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto iso = iso_set(g);
  for (size_t i = 0; i < maps.size(); ++i)
    for (const auto& nu : iso) {
      int j = index_of(maps[i].then(nu.realized));
      if (j >= 0) parent[find(static_cast<int>(i))] = find(j);
    }
  std::map<int, Permutation> reps;
  for (size_t i = 0; i < maps.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto it = reps.find(r);
    if (it == reps.end() || maps[i] < it->second) reps.insert_or_assign(r, maps[i]);
  }
  if (!maps.empty()) {
    Permutation id = Permutation::identity(maps[0].degree());
    int idr = index_of(id);
    if (idr >= 0) reps.insert_or_assign(find(idr), id);
  }
  std::vector<Permutation> out;
  for (auto& [r, p] : reps) out.push_back(p);
  return sorted_unique(std::move(out));
}

Permutation pin_base(const FiniteGroup& g, Permutation m) {
  const int base = haar_encode(g.order, 0, g.identity);
  int im = m(base);
  if (im < g.order && im != base) m = m.then(ghat_map(g, g.inv(im)).realized);
  return m;
}

SolvingSet recombine_extension(const FiniteGroup& g, const std::vector<Permutation>& extension) {
  SolvingSet out;
  out.degree = 2 * g.order;
  for (const auto& t : extension)
    for (const auto& nu : iso_set(g))
      out.add(pin_base(g, t.then(nu.realized)),
              t.is_identity() ? MapProvenance::IsoElement : MapProvenance::Extension);
  out.dedup();
  return out;
}

std::vector<Permutation> minimal_abci_extension(const FiniteGroup& g, ConnSet s,
                                                const SolvingSet& ss,
                                                const std::vector<ConnSet>& universe) {
  auto reps = abci_extension_from_solving_set(g, ss);
  Permutation id = Permutation::identity(2 * g.order);
  std::set<ConnSet> want(universe.begin(), universe.end());

  std::vector<Permutation> kept = {id};
  auto covered = [&](const std::vector<Permutation>& ts) {
    auto rec = recombine_extension(g, ts);
    auto reach = reached_sets(g, s, rec);
    std::set<ConnSet> got(reach.begin(), reach.end());
    for (ConnSet t : want)
      if (!got.count(t)) return false;
    return true;
  };
  if (covered(kept)) return kept;
  for (const auto& t : reps) {
    if (t.is_identity()) continue;
    kept.push_back(t);
    if (covered(kept)) break;
  }
  return kept;
}

} // namespace haariso
