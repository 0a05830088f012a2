#include "haariso/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "haariso/error.hpp"

namespace haariso {

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order;
  if (g.abelian_factors) j["abelian"] = *g.abelian_factors;
  j["labels"] = g.labels;
  j["identity"] = g.identity;
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  if (j.contains("abelian")) return make_abelian(j["abelian"].get<std::vector<int>>());
  if (j.contains("table")) {
    FiniteGroup g;
    g.table = j["table"].get<std::vector<std::vector<int>>>();
    g.order = static_cast<int>(g.table.size());
    g.identity = j.value("identity", 0);
    if (j.contains("labels"))
      g.labels = j["labels"].get<std::vector<std::string>>();
    else {
      g.labels.resize(g.order);
      for (int i = 0; i < g.order; ++i) g.labels[i] = std::to_string(i);
    }
    if (!check_group_axioms(g))
      throw Error::invalid_specification("group table fails the group axioms");
    if (g.is_abelian()) g.abelian_factors = invariant_factors_of(g);
    return g;
  }
  throw Error::invalid_specification("group descriptor needs \"abelian\" or \"table\"");
}

FiniteGroup parse_group_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return group_from_json(Json::parse(spec));
  std::vector<int> factors;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty()) throw Error::invalid_specification("bad group spec: " + spec);
    factors.push_back(std::stoi(part));
  }
  if (factors.empty()) throw Error::invalid_specification("bad group spec: " + spec);
  return make_abelian(factors);
}

ConnSet parse_conn_set(const FiniteGroup& g, const std::string& spec) {
  ConnSet s = 0;
  if (spec.empty()) return s;
  // split on commas outside parentheses, so tuple labels like (1,0) survive
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  for (const auto& part : parts) {
    if (part.empty()) continue;
    int idx = -1;
    for (int i = 0; i < g.order; ++i)
      if (g.labels[i] == part) idx = i;
    if (idx < 0) {
      try {
        idx = std::stoi(part);
      } catch (...) {
        throw Error::invalid_specification("unknown element: " + part);
      }
    }
    if (idx < 0 || idx >= g.order) throw Error::invalid_specification("element out of range: " + part);
    s |= (1ULL << idx);
  }
  return s;
}

Json conn_to_json(const FiniteGroup& g, ConnSet s) {
  Json arr = Json::array();
  for (int e : conn_to_list(s)) arr.push_back(g.labels[e]);
  return arr;
}

Json perm_to_json(const Permutation& p) { return Json(p.images); }

Json perm_group_to_json(const PermGroup& g) {
  Json j;
  j["degree"] = g.degree;
  Json gens = Json::array();
  for (const auto& p : g.generators) gens.push_back(perm_to_json(p));
  j["generators"] = gens;
  if (g.order) j["order"] = *g.order;
  return j;
}

Json graph_to_json(const Digraph& g) {
  Json j;
  j["n"] = g.n;
  Json arcs = Json::array();
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (g.has_arc(u, v)) arcs.push_back({u, v});
  j["arcs"] = arcs;
  if (g.bipartition) {
    Json parts = Json::array();
    for (int i = 0; i < 2; ++i) {
      Json part = Json::array();
      for (int v = 0; v < g.n; ++v)
        if (((*g.bipartition)[i] >> v) & 1) part.push_back(v);
      parts.push_back(part);
    }
    j["bipartition"] = parts;
  }
  return j;
}

Json iso_element_to_json(const FiniteGroup& g, const IsoElement& m) {
  Json j;
  j["tau"] = m.i;
  j["alpha"] = m.alpha.images;
  j["g"] = g.labels[m.g];
  return j;
}

Json abci_report_to_json(const FiniteGroup& g, const AbciReport& r) {
  Json j;
  j["abci"] = r.verdict;
  if (r.witness_s) j["witness_s"] = conn_to_json(g, *r.witness_s);
  if (r.witness_t) j["witness_t"] = conn_to_json(g, *r.witness_t);
  if (r.witness_iso) j["witness_iso"] = perm_to_json(*r.witness_iso);
  return j;
}

Json trace_to_json(const FiniteGroup& g, const ReductionTrace& t, bool full_maps) {
  Json j;
  Json steps = Json::array();
  for (const auto& st : t.steps) {
    Json s;
    s["case"] = case_name(st.kind);
    s["depth"] = st.depth;
    if (st.a) s["a"] = *st.a;
    if (st.subgroup) s["subgroup"] = *st.subgroup;
    if (st.quotient_factors) s["quotient_factors"] = *st.quotient_factors;
    if (st.quotient_set) s["quotient_set"] = conn_to_list(*st.quotient_set);
    if (!st.relabelings.empty()) {
      Json rels = Json::array();
      for (const auto& r : st.relabelings) {
        Json rj;
        rj["target_factors"] = r.target_group.abelian_factors ? Json(*r.target_group.abelian_factors)
                                                              : Json(nullptr);
        rj["target_set"] = conn_to_list(r.target_set);
        rj["map"] = perm_to_json(r.map);
        rj["base"] = {r.base_vertices.first, r.base_vertices.second};
        rels.push_back(rj);
      }
      s["relabelings"] = rels;
    }
    if (!st.detail.empty()) s["detail"] = st.detail;
    steps.push_back(s);
  }
  j["steps"] = steps;
  j["exceptional"] = t.exceptional;
  if (!t.note.empty()) j["note"] = t.note;
  if (t.terminal) {
    Json term;
    term["size"] = t.terminal->maps.size();
    Json prov;
    prov["iso-element"] = 0;
    prov["extension"] = 0;
    prov["relabeling-composite"] = 0;
    for (auto p : t.terminal->provenance) prov[provenance_name(p)] = prov[provenance_name(p)].get<int>() + 1;
    term["provenance"] = prov;
    if (full_maps || t.terminal->maps.size() <= 5000) {
      Json maps = Json::array();
      for (const auto& m : t.terminal->maps) maps.push_back(perm_to_json(m));
      term["maps"] = maps;
    }
    j["solving_set"] = term;
  }
  (void)g;
  return j;
}

} // namespace haariso
