#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "haariso/bci.hpp"
#include "haariso/census.hpp"
#include "haariso/error.hpp"
#include "haariso/reduction.hpp"
#include "haariso/serialize.hpp"
#include "haariso/verify.hpp"

using namespace haariso;

namespace {

// exit codes: 0 success, 1 property failure (with counterexample), 2 usage/bounds
constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

void write_dot(const std::string& path, const Digraph& g) {
  std::ofstream out(path);
  if (!out) throw Error::invalid_specification("cannot open " + path);
  out << to_dot(g);
}

struct CommonArgs {
  std::string group;
  std::string set;
  std::string dot_path;
};

Digraph build_graph(const FiniteGroup& g, ConnSet s, bool use_haar) {
  return use_haar ? haar(g, s) : cayley(g, s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar graph and Cayley digraph isomorphism workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg = Config::from_env();
  app.add_option("--group-bound", cfg.group_bound, "max |G| for exhaustive group scans");
  app.add_option("--budget", cfg.backtrack_budget, "search node budget");
  app.add_option("--aut-cap", cfg.aut_element_cap, "max stored automorphism elements");
  app.add_option("--subset-bound", cfg.subset_enum_bound, "max |G| for 2^|G| sweeps");
  app.add_option("--seed", cfg.seed, "seed for sampled universes");

  // group info|aut|subgroups
  auto* grp = app.add_subcommand("group", "finite group queries");
  grp->require_subcommand(1);
  std::string g_spec;
  int sub_order = 0;
  auto* g_info = grp->add_subcommand("info", "order, labels, invariant factors");
  g_info->add_option("--group", g_spec)->required();
  auto* g_aut = grp->add_subcommand("aut", "automorphism group");
  g_aut->add_option("--group", g_spec)->required();
  auto* g_subs = grp->add_subcommand("subgroups", "subgroups of a given order");
  g_subs->add_option("--group", g_spec)->required();
  g_subs->add_option("--order", sub_order, "subgroup order")->required();

  // graph build|aut|iso
  auto* gr = app.add_subcommand("graph", "graph construction and search");
  gr->require_subcommand(1);
  std::string set_spec, set2_spec, dot_path;
  bool as_haar = false, as_cayley = false;
  auto add_kind = [&](CLI::App* cmd) {
    cmd->add_flag("--haar", as_haar, "Haar graph");
    cmd->add_flag("--cayley", as_cayley, "Cayley digraph");
  };
  auto* gr_build = gr->add_subcommand("build", "construct and emit a graph");
  gr_build->add_option("--group", g_spec)->required();
  gr_build->add_option("--set", set_spec)->required();
  gr_build->add_option("--dot", dot_path, "write DOT to this path");
  add_kind(gr_build);
  auto* gr_aut = gr->add_subcommand("aut", "automorphism group order and generators");
  gr_aut->add_option("--group", g_spec)->required();
  gr_aut->add_option("--set", set_spec)->required();
  add_kind(gr_aut);
  auto* gr_iso = gr->add_subcommand("iso", "isomorphism between two graphs over one group");
  gr_iso->add_option("--group", g_spec)->required();
  gr_iso->add_option("--set", set_spec)->required();
  gr_iso->add_option("--set2", set2_spec)->required();
  add_kind(gr_iso);

  // bci graph|group
  auto* bci_cmd = app.add_subcommand("bci", "ABCI decision procedures");
  bci_cmd->require_subcommand(1);
  auto* bci_graph = bci_cmd->add_subcommand("graph", "is haar(G,S) an ABCI-graph?");
  bci_graph->add_option("--group", g_spec)->required();
  bci_graph->add_option("--set", set_spec)->required();
  auto* bci_group = bci_cmd->add_subcommand("group", "is G an ABCI-group?");
  bci_group->add_option("--group", g_spec)->required();

  // reduce
  std::string trace_path;
  bool verify_universe = false;
  auto* red = app.add_subcommand("reduce", "run the structural reduction pipeline");
  red->add_option("--group", g_spec)->required();
  red->add_option("--set", set_spec)->required();
  red->add_option("--trace-json", trace_path, "write the full trace JSON to this path");
  red->add_flag("--verify-universe", verify_universe,
                "check the terminal solving set against the exhaustive universe");

  // census
  auto* cen = app.add_subcommand("census", "one JSON line per Iso(G)-orbit of connection sets");
  cen->add_option("--group", g_spec)->required();

  // verify
  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a property suite");
  ver->add_option("suite", suite, "normalizer | iso-sufficiency | abci-zp | stability | pipeline")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g_info->parsed()) {
      emit(group_to_json(parse_group_spec(g_spec)));
      return kOk;
    }
    if (g_aut->parsed()) {
      auto g = parse_group_spec(g_spec);
      auto auts = automorphism_group(g, cfg.group_bound);
      Json j;
      j["order"] = auts.size();
      Json arr = Json::array();
      for (const auto& a : auts) arr.push_back(a.images);
      j["automorphisms"] = arr;
      emit(j);
      return kOk;
    }
    if (g_subs->parsed()) {
      auto g = parse_group_spec(g_spec);
      Json arr = Json::array();
      for (const auto& h : subgroups_of_order(g, sub_order, cfg.group_bound)) {
        Json members = Json::array();
        for (int m : h.members) members.push_back(g.labels[m]);
        arr.push_back(members);
      }
      Json j;
      j["count"] = arr.size();
      j["subgroups"] = arr;
      emit(j);
      return kOk;
    }

    if (gr_build->parsed() || gr_aut->parsed() || gr_iso->parsed()) {
      if (as_haar == as_cayley) {
        std::cerr << "pick exactly one of --haar / --cayley\n";
        return kUsage;
      }
      auto g = parse_group_spec(g_spec);
      ConnSet s = parse_conn_set(g, set_spec);
      auto graph = build_graph(g, s, as_haar);
      if (gr_build->parsed()) {
        if (!dot_path.empty()) write_dot(dot_path, graph);
        emit(graph_to_json(graph));
        return kOk;
      }
      if (gr_aut->parsed()) {
        Json j;
        j["aut_order"] = automorphism_count(graph, cfg.backtrack_budget);
        Json gens = Json::array();
        for (const auto& p : automorphism_generators(graph, cfg.backtrack_budget))
          gens.push_back(perm_to_json(p));
        j["generators"] = gens;
        emit(j);
        return kOk;
      }
      ConnSet t = parse_conn_set(g, set2_spec);
      auto other = build_graph(g, t, as_haar);
      auto iso = isomorphism(graph, other, cfg.backtrack_budget);
      Json j;
      j["isomorphic"] = iso.has_value();
      if (iso) j["isomorphism"] = perm_to_json(*iso);
      emit(j);
      return kOk;
    }

    if (bci_graph->parsed()) {
      auto g = parse_group_spec(g_spec);
      ConnSet s = parse_conn_set(g, set_spec);
      auto rep = is_abci_graph(g, s, cfg);
      emit(abci_report_to_json(g, rep));
      return rep.verdict ? kOk : kPropertyFailure;
    }
    if (bci_group->parsed()) {
      auto g = parse_group_spec(g_spec);
      auto rep = is_abci_group(g, cfg);
      emit(abci_report_to_json(g, rep));
      return rep.verdict ? kOk : kPropertyFailure;
    }

    if (red->parsed()) {
      auto g = parse_group_spec(g_spec);
      ConnSet s = parse_conn_set(g, set_spec);
      auto trace = full_pipeline(g, s, cfg);
      Json j = trace_to_json(g, trace, !trace_path.empty());
      if (verify_universe && !trace.exceptional) {
        auto uni = check_universe(g, s, cfg);
        bool ok = solving_set_check(g, s, *trace.terminal, uni);
        j["universe_size"] = uni.size();
        j["universe_mode"] = g.order <= 9 ? "exhaustive" : "sampled";
        j["solving_set_check"] = ok;
        if (!trace_path.empty()) {
          std::ofstream out(trace_path);
          out << j.dump(2) << "\n";
        }
        emit(j);
        return ok ? kOk : kPropertyFailure;
      }
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << j.dump(2) << "\n";
      }
      emit(j);
      return kOk;
    }

    if (cen->parsed()) {
      auto g = parse_group_spec(g_spec);
      for (const auto& row : census(g, cfg)) emit(census_row_to_json(g, row));
      return kOk;
    }

    if (ver->parsed()) {
      auto id = suite_criterion(suite);
      if (!id) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kUsage;
      }
      auto res = run_criterion(*id, cfg);
      Json j;
      j["suite"] = suite;
      j["criterion"] = res.id;
      j["pass"] = res.pass;
      j["detail"] = res.detail;
      j["seconds"] = res.seconds;
      emit(j);
      return res.pass ? kOk : kPropertyFailure;
    }
  } catch (const Error& e) {
    Json j;
    j["error"] = err_name(e.kind());
    j["message"] = e.what();
    std::cout << j.dump() << "\n";
    return e.kind() == Err::BudgetExhausted || e.kind() == Err::InvalidSpecification ? kUsage
                                                                                     : kPropertyFailure;
  }
  return kUsage;
}
