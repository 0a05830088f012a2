#include "haariso/reduction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "haariso/error.hpp"
#include "haariso/haar_maps.hpp"

namespace haariso {

const char* case_name(CaseKind k) {
  switch (k) {
    case CaseKind::Disconnected: return "disconnected";
    case CaseKind::WreathReducible: return "wreath-reducible";
    case CaseKind::Stable: return "stable";
    case CaseKind::Exceptional: return "exceptional";
  }
  return "unknown";
}

namespace {

// Translation stabilizer {c : S + c = S}; its cosets are the twin classes.
std::vector<int> set_stabilizer(const FiniteGroup& a, ConnSet s) {
  std::vector<int> out;
  for (int c = 0; c < a.order; ++c)
    if (conn_translate(a, s, c) == s) out.push_back(c);
  return out;
}

} // namespace

long long stable_group_order(const FiniteGroup& a, ConnSet s, const Config& cfg) {
  return 2 * automorphism_count(cayley(a, s), cfg.backtrack_budget);
}

CaseLabel classify(const FiniteGroup& a, ConnSet s, const Config& cfg) {
  if (!a.is_abelian()) throw Error::unsupported("classify requires an abelian group");
  if (s == 0) return {CaseKind::Exceptional, -1, "degenerate: empty connection set"};

  auto x = haar(a, s);
  if (components(x).size() > 1) return {CaseKind::Disconnected, -1, ""};
  if (static_cast<int>(set_stabilizer(a, s).size()) > 1) return {CaseKind::WreathReducible, -1, ""};

  // Stable(a) iff Aut(haar(A, a+S)) equals the realized Z_2 x| Aut(Cay(A, a+S)).
  // The realized group always sits inside Aut, so equality is a count match.
  long long haar_order = automorphism_count(x, cfg.backtrack_budget);
  for (int cand = 0; cand < a.order; ++cand) {
    ConnSet w = conn_translate(a, s, cand);
    if (stable_group_order(a, w, cfg) == haar_order) return {CaseKind::Stable, cand, ""};
  }
  return {CaseKind::Exceptional, -1, ""};
}

std::pair<int, Subgroup> align_disconnected(const FiniteGroup& a, ConnSet s) {
  if (s == 0) throw Error::degenerate_input("align_disconnected: empty connection set");
  auto x = haar(a, s);
  auto comps = components(x);
  if (comps.size() < 2) throw Error::wrong_case("align_disconnected: graph is connected");

  const int base = haar_encode(a.order, 0, a.identity);
  std::vector<int> comp_of(x.n, -1);
  for (size_t i = 0; i < comps.size(); ++i)
    for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
  int c0 = comp_of[base];

  int witness = -1;
  for (int cand = 0; cand < a.order; ++cand) {
    if (comp_of[haar_encode(a.order, 1, a.inv(cand))] == c0) { witness = cand; break; }
  }
  if (witness < 0) throw Error::internal("align_disconnected: no B_1 vertex in the base component");

  ConnSet w = conn_translate(a, s, witness);
  std::vector<int> diffs;
  for (int p : conn_to_list(w))
    for (int q : conn_to_list(w)) diffs.push_back(a.mul(p, a.inv(q)));
  auto h = generated_subgroup(a, diffs);

  // the components of haar(A, a+S) must be the cosets of Z_2 x H
  auto aligned = haar(a, w);
  auto acomps = components(aligned);
  std::set<std::vector<int>> expect;
  std::vector<char> seen(a.order, 0);
  for (int r = 0; r < a.order; ++r) {
    if (seen[r]) continue;
    std::vector<int> coset;
    for (int m : h.members) {
      int y = a.mul(r, m);
      seen[y] = 1;
      coset.push_back(haar_encode(a.order, 0, y));
      coset.push_back(haar_encode(a.order, 1, y));
    }
    std::sort(coset.begin(), coset.end());
    expect.insert(coset);
  }
  std::set<std::vector<int>> got;
  for (auto& c : acomps) got.insert(c);
  if (expect != got)
    throw Error::internal("align_disconnected: components are not the cosets of Z_2 x H");
  return {witness, h};
}

Relabeling relabel_semitransitive(const Digraph& gr, const std::vector<Permutation>& copy_elems) {
  auto elems = sorted_unique(copy_elems);
  const int n = gr.n;
  if (2 * static_cast<int>(elems.size()) != n)
    throw Error::invalid_action("relabel: group order does not match half the vertex count");
  for (const auto& p : elems) {
    if (p.degree() != n) throw Error::invalid_action("relabel: degree mismatch");
    if (p.is_identity()) continue;
    for (int v = 0; v < n; ++v)
      if (p(v) == v) throw Error::invalid_action("relabel: action is not semiregular");
  }
  auto orbs = orbits_of(n, elems);
  if (orbs.size() != 2) throw Error::invalid_action("relabel: action does not have two orbits");

  // orbits must form a bipartition of the graph
  for (int part = 0; part < 2; ++part) {
    std::uint64_t mask = 0;
    for (int v : orbs[part]) mask |= (1ULL << v);
    for (int v : orbs[part])
      if (gr.outm[v] & mask) throw Error::invalid_action("relabel: orbits are not a bipartition");
  }

  const int u = orbs[0].front();
  const int w = orbs[1].front();
  auto target = copy_as_group(elems);
  if (target.is_abelian()) target.abelian_factors = invariant_factors_of(target);

  ConnSet t = 0;
  for (size_t k = 0; k < elems.size(); ++k)
    if (gr.has_arc(u, elems[k](w))) t |= (1ULL << k);

  std::vector<int> img(n, -1);
  const int m = target.order;
  for (size_t k = 0; k < elems.size(); ++k) {
    img[elems[k](u)] = haar_encode(m, 0, static_cast<int>(k));
    img[elems[k](w)] = haar_encode(m, 1, static_cast<int>(k));
  }
  Relabeling r;
  r.target_group = target;
  r.target_set = t;
  r.map = Permutation(img);
  r.base_vertices = {u, w};
  if (!(apply_permutation(gr, r.map) == haar(target, t)))
    throw Error::internal("relabel: image is not the expected Haar graph");
  return r;
}

TwinQuotient twin_quotient(const FiniteGroup& a, ConnSet s) {
  auto stab = set_stabilizer(a, s);
  if (stab.size() <= 1)
    throw Error::wrong_case("twin_quotient: connection set has trivial stabilizer");
  Subgroup c{&a, stab};
  auto [d, proj] = quotient_group(a, c);
  ConnSet u = 0;
  for (int e : conn_to_list(s)) u |= (1ULL << proj[e]);

  // reconstruction: haar(A,S) = wreath(haar(D,U), empty graph on |C|) under
  // the coset/fiber identification
  auto x = haar(a, s);
  auto quotient_graph = haar(d, u);
  auto fibers = make_digraph(static_cast<int>(stab.size()));
  auto w = wreath(quotient_graph, fibers);
  std::vector<int> pos_in_coset(a.order, -1);
  {
    std::map<int, int> counter;
    for (int x2 = 0; x2 < a.order; ++x2) pos_in_coset[x2] = counter[proj[x2]]++;
  }
  std::vector<int> ident(2 * a.order);
  for (int i = 0; i < 2; ++i)
    for (int x2 = 0; x2 < a.order; ++x2)
      ident[haar_encode(a.order, i, x2)] =
          haar_encode(d.order, i, proj[x2]) * fibers.n + pos_in_coset[x2];
  if (!(apply_permutation(x, Permutation(ident)) == w))
    throw Error::internal("twin_quotient: wreath reconstruction failed");

  if (d.order > 1 && twin_classes(quotient_graph).size() != static_cast<size_t>(2 * d.order))
    throw Error::internal("twin_quotient: quotient is not twin-free");

  TwinQuotient out;
  out.c = Subgroup{&a, stab};
  out.d = d;
  out.projection = proj;
  out.u = u;
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline constructions.
// ---------------------------------------------------------------------------

namespace {

std::optional<SolvingSet> solve_recursive(const FiniteGroup& g, ConnSet s, const Config& cfg,
                                          int depth, std::vector<ReductionStep>& steps,
                                          std::string& note);

// Pick a semiregular copy of `grp` in the automorphism element list whose
// orbits are exactly the graph's bipartition halves.
std::optional<std::vector<Permutation>> bipartition_copy(const FiniteGroup& grp,
                                                         const Digraph& graph,
                                                         const PermGroup& auts) {
  const int half = graph.n / 2;
  std::array<std::uint64_t, 2> parts{0, 0};
  for (int x = 0; x < half; ++x) {
    parts[0] |= (1ULL << x);
    parts[1] |= (1ULL << (half + x));
  }
  for (const auto& copy : semiregular_copies(grp, auts, 2)) {
    auto orbs = orbits_of(graph.n, copy);
    std::uint64_t m0 = 0, m1 = 0;
    for (int v : orbs[0]) m0 |= (1ULL << v);
    for (int v : orbs[1]) m1 |= (1ULL << v);
    if ((m0 == parts[0] && m1 == parts[1]) || (m0 == parts[1] && m1 == parts[0])) return copy;
  }
  return std::nullopt;
}

} // namespace

StepResult reduce_disconnected(const FiniteGroup& a, ConnSet s, const Config& cfg, int depth) {
  StepResult out;
  auto [witness_a, h] = align_disconnected(a, s);
  ConnSet w = conn_translate(a, s, witness_a);

  ReductionStep step;
  step.kind = CaseKind::Disconnected;
  step.depth = depth;
  step.a = witness_a;
  step.subgroup = h.members;
  out.steps.push_back(step);

  auto h_group = subgroup_as_group(a, h);
  std::vector<int> h_index(a.order, -1);
  for (size_t i = 0; i < h.members.size(); ++i) h_index[h.members[i]] = static_cast<int>(i);
  ConnSet w_mini = 0;
  for (int e : conn_to_list(w)) {
    if (h_index[e] < 0) throw Error::internal("reduce_disconnected: a+S not inside H");
    w_mini |= (1ULL << h_index[e]);
  }
  auto component = haar(h_group, w_mini);
  auto comp_auts = automorphisms(component, cfg.aut_element_cap);

  auto bar_minus_a = bar_map(a, a.inv(witness_a)).realized;

  // coset representatives of H in A, by least element; the 0-coset is first
  std::vector<int> hreps;
  std::vector<int> hrep_idx(a.order, -1);
  {
    std::vector<char> seen(a.order, 0);
    for (int x = 0; x < a.order; ++x) {
      if (seen[x]) continue;
      int j = static_cast<int>(hreps.size());
      hreps.push_back(x);
      for (int m : h.members) {
        int y = a.mul(x, m);
        seen[y] = 1;
        hrep_idx[y] = j;
      }
    }
  }

  bool any_k = false;
  for (const auto& k : subgroups_of_order(a, h.order(), cfg.group_bound)) {
    auto k_group = subgroup_as_group(a, k);
    auto copy = bipartition_copy(k_group, component, comp_auts);
    if (!copy) continue;
    any_k = true;

    auto relab = relabel_semitransitive(component, *copy);
    out.steps[0].relabelings.push_back(relab);

    // identify the relabeled abstract group with the subgroup K of A
    auto psi = group_isomorphism(relab.target_group, k_group);
    if (!psi) throw Error::internal("reduce_disconnected: relabeled group not isomorphic to K");

    auto sub_solving =
        solve_recursive(relab.target_group, relab.target_set, cfg, depth + 1, out.steps, out.note);
    if (!sub_solving) {
      out.exceptional = true;
      return out;
    }

    // coset representatives of K, matched to H-cosets by index
    std::vector<int> kreps;
    {
      std::vector<char> seen(a.order, 0);
      for (int x = 0; x < a.order; ++x) {
        if (seen[x]) continue;
        kreps.push_back(x);
        for (int m : k.members) seen[a.mul(x, m)] = 1;
      }
    }

    for (const auto& sp : sub_solving->maps) {
      auto mini = relab.map.then(sp); // component vertex -> Z_2 x K_abs coding
      std::vector<int> img(2 * a.order, -1);
      for (int i = 0; i < 2; ++i)
        for (int x = 0; x < a.order; ++x) {
          int rep = hreps[hrep_idx[x]];
          int hh = h_index[a.mul(a.inv(rep), x)];
          auto [i2, kidx] = haar_decode(relab.target_group.order,
                                        mini(haar_encode(h_group.order, i, hh)));
          int x2 = a.mul(kreps[hrep_idx[x]], k.members[(*psi)[kidx]]);
          img[haar_encode(a.order, i, x)] = haar_encode(a.order, i2, x2);
        }
      auto head = bar_minus_a.then(Permutation(img));
      for (int b = 0; b < a.order; ++b)
        out.extension.push_back(pin_base(a, head.then(bar_map(a, b).realized)));
    }
  }
  if (!any_k) throw Error::internal("reduce_disconnected: no semiregular subgroup found");

  out.extension.push_back(Permutation::identity(2 * a.order));
  out.extension = sorted_unique(std::move(out.extension));
  return out;
}

StepResult reduce_wreath(const FiniteGroup& a, ConnSet s, const Config& cfg, int depth) {
  StepResult out;
  auto tq = twin_quotient(a, s);

  ReductionStep step;
  step.kind = CaseKind::WreathReducible;
  step.depth = depth;
  step.subgroup = tq.c.members;
  step.quotient_factors = tq.d.abelian_factors;
  step.quotient_set = tq.u;
  out.steps.push_back(step);

  out.extension.push_back(Permutation::identity(2 * a.order));

  if (tq.d.order == 1) {
    // K_{|A|,|A|}: the only isomorphic connection set is A itself, so Iso(A)
    // alone is a solving set
    return out;
  }

  auto quotient_graph = haar(tq.d, tq.u);
  auto q_auts = automorphisms(quotient_graph, cfg.aut_element_cap);

  const int n = a.order;
  std::vector<int> pos_in_c(n, -1);
  {
    std::vector<std::vector<int>> coset_lists(tq.d.order);
    for (int x = 0; x < n; ++x) coset_lists[tq.projection[x]].push_back(x);
    for (auto& lst : coset_lists)
      for (size_t p = 0; p < lst.size(); ++p) pos_in_c[lst[p]] = static_cast<int>(p);
  }

  // L ranges over quotients A/N, |N| = |C|, that embed semiregularly in
  // Aut(haar(D,U)) with orbits the quotient bipartition.  The relabeling and
  // the recursive solving set are shared per abstract type.
  std::map<std::vector<int>, std::optional<std::pair<Relabeling, SolvingSet>>> by_type;
  for (const auto& nsub : subgroups_of_order(a, tq.c.order(), cfg.group_bound)) {
    auto [l_group, l_proj] = quotient_group(a, nsub);
    auto type = *l_group.abelian_factors;
    auto it = by_type.find(type);
    if (it == by_type.end()) {
      std::optional<std::pair<Relabeling, SolvingSet>> entry;
      if (auto copy = bipartition_copy(l_group, quotient_graph, q_auts)) {
        auto relab = relabel_semitransitive(quotient_graph, *copy);
        auto sub = solve_recursive(relab.target_group, relab.target_set, cfg, depth + 1, out.steps,
                                   out.note);
        if (!sub) {
          out.exceptional = true;
          return out;
        }
        out.steps[0].relabelings.push_back(relab);
        entry = {relab, *sub};
      }
      it = by_type.emplace(type, std::move(entry)).first;
    }
    if (!it->second) continue;
    const auto& [relab, sub_solving] = *it->second;

    auto psi = group_isomorphism(relab.target_group, l_group);
    if (!psi) throw Error::internal("reduce_wreath: relabeled group not isomorphic to A/N");
    std::vector<std::vector<int>> n_cosets(l_group.order);
    for (int x = 0; x < n; ++x) n_cosets[l_proj[x]].push_back(x);

    for (const auto& sp : sub_solving.maps) {
      auto mini = relab.map.then(sp); // quotient vertex -> Z_2 x L_abs coding
      std::vector<int> img(2 * n, -1);
      for (int i = 0; i < 2; ++i)
        for (int x = 0; x < n; ++x) {
          int v = haar_encode(tq.d.order, i, tq.projection[x]);
          auto [i2, lidx] = haar_decode(relab.target_group.order, mini(v));
          int x2 = n_cosets[(*psi)[lidx]][pos_in_c[x]];
          img[haar_encode(n, i, x)] = haar_encode(n, i2, x2);
        }
      out.extension.push_back(pin_base(a, Permutation(img)));
    }
  }
  out.extension = sorted_unique(std::move(out.extension));
  return out;
}

StepResult reduce_stable(const FiniteGroup& a, ConnSet s, int witness_a, const Config& cfg,
                         int depth) {
  StepResult out;
  ConnSet w = conn_translate(a, s, witness_a);

  ReductionStep step;
  step.kind = CaseKind::Stable;
  step.depth = depth;
  step.a = witness_a;
  step.quotient_set = w;
  out.steps.push_back(step);

  auto bar_minus_a = bar_map(a, a.inv(witness_a)).realized;
  for (const auto& t : ci_extension_cayley(a, w, cfg)) {
    // lift t to Z_2 x A (same map on both halves), then undo the alignment
    std::vector<int> img(2 * a.order);
    for (int i = 0; i < 2; ++i)
      for (int x = 0; x < a.order; ++x)
        img[haar_encode(a.order, i, x)] = haar_encode(a.order, i, t(x));
    out.extension.push_back(pin_base(a, bar_minus_a.then(Permutation(img))));
  }
  out.extension.push_back(Permutation::identity(2 * a.order));
  out.extension = sorted_unique(std::move(out.extension));
  return out;
}

namespace {

std::optional<SolvingSet> solve_recursive(const FiniteGroup& g, ConnSet s, const Config& cfg,
                                          int depth, std::vector<ReductionStep>& steps,
                                          std::string& note) {
  if (depth > 8) throw Error::budget_exhausted("pipeline recursion too deep");
  auto trace = full_pipeline(g, s, cfg);
  for (auto st : trace.steps) {
    st.depth += depth;
    steps.push_back(st);
  }
  if (trace.exceptional) {
    note = trace.note.empty() ? "exceptional case inside a recursive step" : trace.note;
    return std::nullopt;
  }
  return trace.terminal;
}

} // namespace

ReductionTrace full_pipeline(const FiniteGroup& a, ConnSet s, const Config& cfg) {
  ReductionTrace trace;
  auto label = classify(a, s, cfg);

  const bool symmetric = (conn_negate(a, s) == s);
  const bool odd = (a.order % 2 == 1);

  if (label.kind == CaseKind::Exceptional) {
    if (!label.note.empty()) {
      trace.exceptional = true;
      trace.note = label.note;
      ReductionStep step;
      step.kind = CaseKind::Exceptional;
      step.detail = label.note;
      trace.steps.push_back(step);
      return trace;
    }
    if (odd && symmetric)
      throw Error::internal("pipeline: exceptional case for odd |A| with S = -S contradicts the "
                            "stability theorem");
    trace.exceptional = true;
    trace.note = "exceptional: automorphism group matches none of the reduction cases";
    ReductionStep step;
    step.kind = CaseKind::Exceptional;
    trace.steps.push_back(step);
    return trace;
  }

  StepResult res;
  switch (label.kind) {
    case CaseKind::Disconnected: res = reduce_disconnected(a, s, cfg, 0); break;
    case CaseKind::WreathReducible: res = reduce_wreath(a, s, cfg, 0); break;
    case CaseKind::Stable: res = reduce_stable(a, s, label.a, cfg, 0); break;
    default: throw Error::internal("pipeline: unreachable");
  }
  trace.steps = res.steps;
  if (res.exceptional) {
    if (odd && symmetric)
      throw Error::internal("pipeline: exceptional recursion for odd |A| with S = -S contradicts "
                            "the stability theorem");
    trace.exceptional = true;
    trace.note = res.note;
    return trace;
  }

  SolvingSet solving;
  solving.degree = 2 * a.order;
  for (const auto& t : res.extension) {
    bool is_iso_member = t.is_identity();
    auto tag = is_iso_member                    ? MapProvenance::IsoElement
               : label.kind == CaseKind::Stable ? MapProvenance::Extension
                                                : MapProvenance::RelabelingComposite;
    for (const auto& nu : iso_set(a, cfg.group_bound))
      solving.add(pin_base(a, t.then(nu.realized)), tag);
  }
  solving.dedup();
  trace.terminal = std::move(solving);
  return trace;
}

} // namespace haariso
