#include "haariso/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "haariso/error.hpp"

namespace haariso {

ConnSet conn_from_list(const std::vector<int>& elems) {
  ConnSet s = 0;
  for (int e : elems) s |= (1ULL << e);
  return s;
}

std::vector<int> conn_to_list(ConnSet s) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if ((s >> i) & 1) out.push_back(i);
  return out;
}

ConnSet conn_negate(const FiniteGroup& g, ConnSet s) {
  ConnSet t = 0;
  for (int x = 0; x < g.order; ++x)
    if ((s >> x) & 1) t |= (1ULL << g.inv(x));
  return t;
}

ConnSet conn_translate(const FiniteGroup& g, ConnSet s, int a) {
  ConnSet t = 0;
  for (int x = 0; x < g.order; ++x)
    if ((s >> x) & 1) t |= (1ULL << g.mul(a, x));
  return t;
}

ConnSet conn_apply_aut(const Automorphism& alpha, ConnSet s) {
  ConnSet t = 0;
  for (size_t x = 0; x < alpha.images.size(); ++x)
    if ((s >> x) & 1) t |= (1ULL << alpha.images[x]);
  return t;
}

void Digraph::add_arc(int u, int v) {
  outm[u] |= (1ULL << v);
  inm[v] |= (1ULL << u);
}

void Digraph::add_edge(int u, int v) {
  add_arc(u, v);
  add_arc(v, u);
}

int Digraph::out_degree(int v) const { return std::popcount(outm[v]); }
int Digraph::in_degree(int v) const { return std::popcount(inm[v]); }

long long Digraph::arc_count() const {
  long long c = 0;
  for (auto m : outm) c += std::popcount(m);
  return c;
}

bool Digraph::is_graph() const {
  for (int u = 0; u < n; ++u)
    if (inm[u] != outm[u]) return false;
  return true;
}

bool operator==(const Digraph& a, const Digraph& b) {
  return a.n == b.n && a.outm == b.outm;
}

Digraph make_digraph(int n) {
  if (n < 0 || n > 64) throw Error::budget_exhausted("digraph degree bound is 64 vertices");
  Digraph g;
  g.n = n;
  g.outm.assign(n, 0);
  g.inm.assign(n, 0);
  return g;
}

Digraph cayley(const FiniteGroup& g, ConnSet s) {
  Digraph d = make_digraph(g.order);
  for (int x = 0; x < g.order; ++x)
    for (int e : conn_to_list(s)) d.add_arc(x, g.mul(x, e));
  return d;
}

Digraph haar(const FiniteGroup& g, ConnSet s) {
  Digraph d = make_digraph(2 * g.order);
  for (int x = 0; x < g.order; ++x)
    for (int e : conn_to_list(s))
      d.add_edge(haar_encode(g.order, 0, x), haar_encode(g.order, 1, g.mul(x, e)));
  std::uint64_t b0 = 0, b1 = 0;
  for (int x = 0; x < g.order; ++x) {
    b0 |= (1ULL << haar_encode(g.order, 0, x));
    b1 |= (1ULL << haar_encode(g.order, 1, x));
  }
  d.bipartition = {{b0, b1}};
  return d;
}

std::vector<std::vector<int>> components(const Digraph& g) {
  std::vector<int> comp(g.n, -1);
  int nc = 0;
  for (int v = 0; v < g.n; ++v) {
    if (comp[v] != -1) continue;
    std::vector<int> stack = {v};
    comp[v] = nc;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      std::uint64_t nb = g.outm[u] | g.inm[u];
      while (nb) {
        int w = std::countr_zero(nb);
        nb &= nb - 1;
        if (comp[w] == -1) {
          comp[w] = nc;
          stack.push_back(w);
        }
      }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int v = 0; v < g.n; ++v) out[comp[v]].push_back(v);
  return out;
}

std::vector<std::vector<int>> twin_classes(const Digraph& g) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<int>> by_nbhd;
  for (int v = 0; v < g.n; ++v) {
    std::uint64_t self = 1ULL << v;
    by_nbhd[{g.outm[v] & ~self, g.inm[v] & ~self}].push_back(v);
  }
  std::vector<std::vector<int>> out;
  for (auto& [k, vs] : by_nbhd) out.push_back(vs);
  std::sort(out.begin(), out.end());
  return out;
}

Digraph block_quotient(const Digraph& g, const std::vector<std::vector<int>>& parts) {
  std::vector<int> part_of(g.n, -1);
  for (size_t i = 0; i < parts.size(); ++i)
    for (int v : parts[i]) {
      if (v < 0 || v >= g.n || part_of[v] != -1)
        throw Error::invalid_specification("block_quotient: not a partition");
      part_of[v] = static_cast<int>(i);
    }
  for (int v = 0; v < g.n; ++v)
    if (part_of[v] == -1) throw Error::invalid_specification("block_quotient: not a partition");

  Digraph q = make_digraph(static_cast<int>(parts.size()));
  for (int u = 0; u < g.n; ++u) {
    std::uint64_t nb = g.outm[u];
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      if (part_of[u] != part_of[v]) q.add_arc(part_of[u], part_of[v]);
    }
  }
  return q;
}

Digraph wreath(const Digraph& g1, const Digraph& g2) {
  const int n1 = g1.n, n2 = g2.n;
  Digraph w = make_digraph(n1 * n2);
  auto enc = [&](int u, int v) { return u * n2 + v; };
  for (int u = 0; u < n1; ++u) {
    for (int v = 0; v < n2; ++v)
      for (int v2 = 0; v2 < n2; ++v2)
        if (g2.has_arc(v, v2)) w.add_arc(enc(u, v), enc(u, v2));
    for (int u2 = 0; u2 < n1; ++u2)
      if (g1.has_arc(u, u2))
        for (int v = 0; v < n2; ++v)
          for (int v2 = 0; v2 < n2; ++v2) w.add_arc(enc(u, v), enc(u2, v2));
  }
  return w;
}

Digraph double_cover(const Digraph& g) {
  if (!g.is_graph()) throw Error::not_a_graph("double_cover: input has asymmetric arcs");
  Digraph d = make_digraph(2 * g.n);
  for (int v = 0; v < g.n; ++v) {
    std::uint64_t nb = g.outm[v];
    while (nb) {
      int w = std::countr_zero(nb);
      nb &= nb - 1;
      d.add_edge(v, g.n + w);
    }
  }
  std::uint64_t b0 = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);
  d.bipartition = {{b0, ~b0 & ((d.n == 64) ? ~0ULL : ((1ULL << d.n) - 1))}};
  return d;
}

Digraph apply_permutation(const Digraph& g, const Permutation& p) {
  if (p.degree() != g.n) throw Error::invalid_map("apply_permutation: degree mismatch");
  Digraph out = make_digraph(g.n);
  for (int u = 0; u < g.n; ++u) {
    std::uint64_t nb = g.outm[u];
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      out.add_arc(p(u), p(v));
    }
  }
  if (g.bipartition) {
    auto remap = [&](std::uint64_t m) {
      std::uint64_t r = 0;
      while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        r |= (1ULL << p(v));
      }
      return r;
    };
    out.bipartition = {{remap((*g.bipartition)[0]), remap((*g.bipartition)[1])}};
  }
  return out;
}

bool is_automorphism_of(const Digraph& g, const Permutation& p) {
  if (p.degree() != g.n) return false;
  for (int u = 0; u < g.n; ++u) {
    std::uint64_t img = 0, nb = g.outm[u];
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      img |= (1ULL << p(v));
    }
    if (img != g.outm[p(u)]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Search kernel: iterated in/out-degree colour refinement, branching on the
// smallest non-singleton cell.
// ---------------------------------------------------------------------------

namespace {

struct Budget {
  long long left;
  void spend(const char* where) {
    if (--left < 0) throw Error::budget_exhausted(where);
  }
};

using Colors = std::vector<int>;

// One refinement round over both graphs with a shared key dictionary.
// Returns false if the colour class profiles diverge.
bool refine_round(const Digraph& g1, const Digraph& g2, Colors& c1, Colors& c2, bool joint) {
  auto key_of = [](const Digraph& g, const Colors& c, int v) {
    std::vector<int> key;
    key.push_back(c[v]);
    std::vector<int> outs, ins;
    std::uint64_t nb = g.outm[v];
    while (nb) {
      int w = std::countr_zero(nb);
      nb &= nb - 1;
      outs.push_back(c[w]);
    }
    nb = g.inm[v];
    while (nb) {
      int w = std::countr_zero(nb);
      nb &= nb - 1;
      ins.push_back(c[w]);
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    key.push_back(-1);
    key.insert(key.end(), outs.begin(), outs.end());
    key.push_back(-2);
    key.insert(key.end(), ins.begin(), ins.end());
    return key;
  };

  std::map<std::vector<int>, int> dict;
  std::vector<std::vector<int>> k1(g1.n), k2;
  for (int v = 0; v < g1.n; ++v) {
    k1[v] = key_of(g1, c1, v);
    dict[k1[v]] = 0;
  }
  if (joint) {
    k2.resize(g2.n);
    for (int v = 0; v < g2.n; ++v) {
      k2[v] = key_of(g2, c2, v);
      dict[k2[v]] = 0;
    }
  }
  int next = 0;
  for (auto& [k, id] : dict) id = next++;
  for (int v = 0; v < g1.n; ++v) c1[v] = dict[k1[v]];
  if (joint)
    for (int v = 0; v < g2.n; ++v) c2[v] = dict[k2[v]];

  if (joint) {
    std::vector<int> h1(next, 0), h2(next, 0);
    for (int v : c1) h1[v]++;
    for (int v : c2) h2[v]++;
    if (h1 != h2) return false;
  }
  return true;
}

int num_colors(const Colors& c) {
  int m = -1;
  for (int v : c) m = std::max(m, v);
  return m + 1;
}

// Refine to a fixed point.  Joint mode keeps the dictionaries shared and
// reports divergence.
bool refine_fixpoint(const Digraph& g1, const Digraph& g2, Colors& c1, Colors& c2, bool joint) {
  int before = -1;
  while (true) {
    if (!refine_round(g1, g2, c1, c2, joint)) return false;
    int after = num_colors(c1);
    if (after == before) return true;
    before = after;
    if (after == g1.n) return true;
  }
}

Colors initial_colors(const Digraph& g, const std::vector<std::pair<int, int>>& pins, bool first) {
  Colors c(g.n, 0);
  int next = 1;
  for (const auto& [a, b] : pins) {
    c[first ? a : b] = next++;
  }
  return c;
}

struct CellPick {
  int color = -1;
  int size = 0;
};

CellPick pick_cell(const Colors& c) {
  int nc = num_colors(c);
  std::vector<int> hist(nc, 0);
  for (int v : c) hist[v]++;
  CellPick best;
  for (int col = 0; col < nc; ++col)
    if (hist[col] > 1 && (best.color == -1 || hist[col] < best.size)) {
      best.color = col;
      best.size = hist[col];
    }
  return best;
}

// Derive (and verify) the mapping from a discrete joint colouring.
std::optional<Permutation> mapping_from_discrete(const Digraph& g1, const Digraph& g2,
                                                 const Colors& c1, const Colors& c2) {
  std::vector<int> pos2(g2.n, -1);
  for (int v = 0; v < g2.n; ++v) pos2[c2[v]] = v;
  std::vector<int> img(g1.n);
  for (int v = 0; v < g1.n; ++v) img[v] = pos2[c1[v]];
  Permutation p(std::move(img));
  // Exact arc check both ways.
  for (int u = 0; u < g1.n; ++u) {
    std::uint64_t want = 0, nb = g1.outm[u];
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      want |= (1ULL << p(v));
    }
    if (want != g2.outm[p(u)]) return std::nullopt;
  }
  return p;
}

// Core recursive search.  `emit` returns true to stop (FindOne).
bool search(const Digraph& g1, const Digraph& g2, Colors c1, Colors c2, Budget& budget,
            const std::function<bool(const Permutation&)>& emit) {
  budget.spend("graph search budget");
  if (!refine_fixpoint(g1, g2, c1, c2, true)) return false;
  auto cell = pick_cell(c1);
  if (cell.color == -1) {
    auto m = mapping_from_discrete(g1, g2, c1, c2);
    if (m) return emit(*m);
    return false;
  }
  int v = -1;
  for (int x = 0; x < g1.n; ++x)
    if (c1[x] == cell.color) { v = x; break; }
  int fresh = num_colors(c1);
  for (int w = 0; w < g2.n; ++w) {
    if (c2[w] != cell.color) continue;
    Colors d1 = c1, d2 = c2;
    d1[v] = fresh;
    d2[w] = fresh;
    if (search(g1, g2, std::move(d1), std::move(d2), budget, emit)) return true;
  }
  return false;
}

std::optional<Permutation> find_iso(const Digraph& g1, const Digraph& g2,
                                    const std::vector<std::pair<int, int>>& pins, Budget& budget) {
  if (g1.n != g2.n || g1.arc_count() != g2.arc_count()) return std::nullopt;
  Colors c1 = initial_colors(g1, pins, true);
  Colors c2 = initial_colors(g2, pins, false);
  std::optional<Permutation> found;
  search(g1, g2, std::move(c1), std::move(c2), budget, [&](const Permutation& p) {
    found = p;
    return true;
  });
  return found;
}

// |Aut(g, pins pointwise)| by orbit-stabilizer recursion.
long long stabilizer_order(const Digraph& g, std::vector<std::pair<int, int>> pins, Budget& budget) {
  Colors c1 = initial_colors(g, pins, true);
  Colors c2 = c1;
  if (!refine_fixpoint(g, g, c1, c2, false)) throw Error::internal("self-refinement diverged");
  auto cell = pick_cell(c1);
  if (cell.color == -1) return 1; // discrete: only the identity fixes the pins
  int v = -1;
  for (int x = 0; x < g.n; ++x)
    if (c1[x] == cell.color) { v = x; break; }
  long long orbit = 1;
  for (int w = 0; w < g.n; ++w) {
    if (w == v || c1[w] != cell.color) continue;
    auto with = pins;
    with.push_back({v, w});
    if (find_iso(g, g, with, budget)) ++orbit;
  }
  pins.push_back({v, v});
  return orbit * stabilizer_order(g, std::move(pins), budget);
}

} // namespace

long long automorphism_count(const Digraph& g, long long budget) {
  if (g.n == 0) return 1;
  Budget b{budget};
  return stabilizer_order(g, {}, b);
}

namespace {

// Stabilizer chain: at each level pin a base vertex and collect one coset
// representative per reachable image; elements are the transversal products.
std::vector<std::vector<Permutation>> stabilizer_transversals(const Digraph& g, Budget& b,
                                                              long long element_cap) {
  std::vector<std::vector<Permutation>> transversals;
  std::vector<std::pair<int, int>> pins;
  long long order = 1;
  while (true) {
    Colors c1 = initial_colors(g, pins, true);
    Colors c2 = c1;
    if (!refine_fixpoint(g, g, c1, c2, false)) throw Error::internal("self-refinement diverged");
    auto cell = pick_cell(c1);
    if (cell.color == -1) break;
    int v = -1;
    for (int x = 0; x < g.n; ++x)
      if (c1[x] == cell.color) { v = x; break; }
    std::vector<Permutation> tr;
    for (int w = 0; w < g.n; ++w) {
      if (c1[w] != cell.color) continue;
      auto with = pins;
      with.push_back({v, w});
      if (auto t = find_iso(g, g, with, b)) tr.push_back(*t);
    }
    order *= static_cast<long long>(tr.size());
    if (element_cap > 0 && order > element_cap)
      throw Error::budget_exhausted("automorphisms: element cap exceeded");
    transversals.push_back(std::move(tr));
    pins.push_back({v, v});
  }
  return transversals;
}

} // namespace

std::vector<Permutation> automorphism_generators(const Digraph& g, long long budget) {
  Budget b{std::max(budget, 10'000'000LL)};
  auto transversals = stabilizer_transversals(g, b, 0);
  std::vector<Permutation> gens;
  for (const auto& tr : transversals)
    for (const auto& t : tr)
      if (!t.is_identity()) gens.push_back(t);
  if (gens.empty()) gens.push_back(Permutation::identity(g.n));
  return sorted_unique(std::move(gens));
}

PermGroup automorphisms(const Digraph& g, long long budget) {
  Budget b{budget <= 0 ? 1 : std::max(budget, 10'000'000LL)};
  auto transversals = stabilizer_transversals(g, b, budget);
  long long order = 1;
  for (const auto& tr : transversals) order *= static_cast<long long>(tr.size());

  std::vector<Permutation> elems = {Permutation::identity(g.n)};
  for (auto it = transversals.rbegin(); it != transversals.rend(); ++it) {
    std::vector<Permutation> next;
    next.reserve(elems.size() * it->size());
    for (const auto& t : *it)
      for (const auto& s : elems) next.push_back(s.then(t));
    elems.swap(next);
  }

  PermGroup out;
  out.degree = g.n;
  out.elements = sorted_unique(std::move(elems));
  out.order = static_cast<long long>(out.elements->size());
  if (*out.order != order) throw Error::internal("automorphisms: transversal product mismatch");
  // A small generating set keeps downstream conjugacy scans cheap: grow
  // greedily, re-closing whenever an element falls outside the span so far.
  std::vector<Permutation> gens;
  if (*out.order <= 200000) {
    std::vector<Permutation> span = {Permutation::identity(g.n)};
    for (const auto& p : *out.elements) {
      if (std::binary_search(span.begin(), span.end(), p)) continue;
      gens.push_back(p);
      auto closed = closure(gens, *out.order);
      if (!closed.elements) throw Error::internal("automorphisms: closure overflow");
      span = *closed.elements;
      if (static_cast<long long>(span.size()) == *out.order) break;
    }
  } else {
    gens = *out.elements;
  }
  if (gens.empty()) gens.push_back(Permutation::identity(g.n));
  out.generators = std::move(gens);
  return out;
}

std::optional<Permutation> isomorphism(const Digraph& g1, const Digraph& g2, long long budget) {
  Budget b{budget};
  return find_iso(g1, g2, {}, b);
}

std::optional<Permutation> isomorphism_pinned(const Digraph& g1, const Digraph& g2,
                                              const std::vector<std::pair<int, int>>& pins,
                                              long long budget) {
  Budget b{budget};
  return find_iso(g1, g2, pins, b);
}

// ---------------------------------------------------------------------------
// Canonical form: minimum leaf certificate with orbit pruning by discovered
// automorphisms that fix the individualized prefix.
// ---------------------------------------------------------------------------

namespace {

using Cert = std::vector<std::uint64_t>;

Cert leaf_certificate(const Digraph& g, const Colors& c, std::vector<int>& lab_out) {
  // position of v = its colour (discrete colouring).
  std::vector<int> at_pos(g.n);
  for (int v = 0; v < g.n; ++v) at_pos[c[v]] = v;
  lab_out = c;
  Cert cert(g.n);
  for (int pos = 0; pos < g.n; ++pos) {
    int v = at_pos[pos];
    std::uint64_t row = 0, nb = g.outm[v];
    while (nb) {
      int w = std::countr_zero(nb);
      nb &= nb - 1;
      row |= (1ULL << c[w]);
    }
    cert[pos] = row;
  }
  return cert;
}

struct CanonSearch {
  const Digraph& g;
  Budget& budget;
  std::optional<Cert> best;
  std::vector<int> best_lab; // vertex -> canonical position
  std::vector<Permutation> autos;

  void run(Colors c, std::vector<int> prefix) {
    budget.spend("canonical_form budget");
    Colors dummy;
    refine_fixpoint(g, g, c, dummy, false);
    auto cell = pick_cell(c);
    if (cell.color == -1) {
      std::vector<int> lab;
      auto cert = leaf_certificate(g, c, lab);
      if (!best || cert < *best) {
        best = cert;
        best_lab = lab;
      } else if (cert == *best) {
        // Two labelings with equal certificates differ by an automorphism.
        std::vector<int> inv_best(g.n);
        for (int v = 0; v < g.n; ++v) inv_best[best_lab[v]] = v;
        std::vector<int> img(g.n);
        for (int v = 0; v < g.n; ++v) img[v] = inv_best[lab[v]];
        Permutation sigma(std::move(img));
        if (!sigma.is_identity()) autos.push_back(sigma);
      }
      return;
    }
    int fresh = num_colors(c);

    std::vector<int> explored;
    for (int w = 0; w < g.n; ++w) {
      if (c[w] != cell.color) continue;
      if (pruned_by_orbit(w, explored, prefix)) continue;
      Colors d = c;
      d[w] = fresh;
      auto pre = prefix;
      pre.push_back(w);
      run(std::move(d), std::move(pre));
      explored.push_back(w);
    }
  }

  bool pruned_by_orbit(int w, const std::vector<int>& explored, const std::vector<int>& prefix) {
    if (explored.empty() || autos.empty()) return false;
    // Orbits of the subgroup generated by discovered automorphisms fixing the
    // prefix pointwise (a conservative subgroup of the true stabilizer).
    std::vector<int> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& a : autos) {
      bool fixes = true;
      for (int p : prefix)
        if (a(p) != p) { fixes = false; break; }
      if (!fixes) continue;
      for (int x = 0; x < g.n; ++x) {
        int r1 = find(x), r2 = find(a(x));
        if (r1 != r2) parent[r1] = r2;
      }
    }
    for (int e : explored)
      if (find(e) == find(w)) return true;
    return false;
  }
};

} // namespace

std::string canonical_form(const Digraph& g, long long budget) {
  Budget b{budget};
  CanonSearch cs{g, b, std::nullopt, {}, {}};
  cs.run(initial_colors(g, {}, true), {});
  if (!cs.best) throw Error::internal("canonical_form: no leaf found");
  std::string out;
  out.push_back(static_cast<char>(g.n));
  for (auto row : *cs.best)
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((row >> (8 * i)) & 0xff));
  return out;
}

std::string to_dot(const Digraph& g) {
  std::ostringstream os;
  bool graph = g.is_graph();
  os << (graph ? "graph" : "digraph") << " G {\n";
  if (g.bipartition) {
    for (int part = 0; part < 2; ++part) {
      os << "  { rank=same;";
      std::uint64_t m = (*g.bipartition)[part];
      while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        os << " v" << v << ";";
      }
      os << " }\n";
    }
  }
  for (int u = 0; u < g.n; ++u) {
    std::uint64_t nb = g.outm[u];
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      if (graph && v < u) continue;
      os << "  v" << u << (graph ? " -- v" : " -> v") << v << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace haariso
