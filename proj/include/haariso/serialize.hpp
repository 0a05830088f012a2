#ifndef HAARISO_SERIALIZE_HPP
#define HAARISO_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "haariso/bci.hpp"
#include "haariso/graph.hpp"
#include "haariso/group.hpp"
#include "haariso/haar_maps.hpp"
#include "haariso/reduction.hpp"

namespace haariso {

using Json = nlohmann::ordered_json;

Json group_to_json(const FiniteGroup& g);

// {"abelian": [d1,...]} or {"table": [[...]], "labels": [...]}
FiniteGroup group_from_json(const Json& j);

// Accepts inline JSON, a "d1xd2x..." shorthand, or a plain integer.
FiniteGroup parse_group_spec(const std::string& spec);

// Comma-separated element indices or labels.
ConnSet parse_conn_set(const FiniteGroup& g, const std::string& spec);
Json conn_to_json(const FiniteGroup& g, ConnSet s);

Json perm_to_json(const Permutation& p);
Json perm_group_to_json(const PermGroup& g); // generator images plus optional order
Json graph_to_json(const Digraph& g);
Json iso_element_to_json(const FiniteGroup& g, const IsoElement& m);
Json abci_report_to_json(const FiniteGroup& g, const AbciReport& r);
Json trace_to_json(const FiniteGroup& g, const ReductionTrace& t, bool full_maps = false);

} // namespace haariso

#endif
