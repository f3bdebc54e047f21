#pragma once

#include <iosfwd>
#include <string>

#include "sndp/graph.hpp"

namespace sndp {

// Document format:
//   {"n": int, "weights": [int], "reliable": [bool], "edges": [[u,v]],
//    "demands": [[u,v,r]], "kind": "EC"|"ELEM"|"VC012", "planar": bool}
// Pairs are smaller-id-first; "planar" is optional on input (default false).
// Errors keep their causes apart: malformed documents, duplicate edges and
// demand endpoints that do not exist all say so explicitly.
Instance load_instance(std::istream& in);
Instance load_instance(const std::string& json_text);
Instance load_instance_file(const std::string& path);

std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, std::ostream& out);
void save_instance_file(const Instance& inst, const std::string& path);

// Graphviz view: vertices labeled "id:w", non-reliable vertices drawn as
// boxes, solution vertices filled.
std::string to_dot(const Instance& inst, const VertexSet* solution = nullptr);

}  // namespace sndp
