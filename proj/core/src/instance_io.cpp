#include "sndp/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sndp {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InvalidInstanceError("schema violation: not valid JSON");
  return doc;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end())
    throw InvalidInstanceError(std::string("schema violation: missing field \"") + name + "\"");
  return *it;
}

}  // namespace

Instance load_instance(const std::string& text) {
  json doc = parse_or_throw(text);
  if (!doc.is_object()) throw InvalidInstanceError("schema violation: top level must be an object");

  const json& jn = field(doc, "n");
  if (!jn.is_number_integer() || jn.get<int64_t>() < 1)
    throw InvalidInstanceError("schema violation: \"n\" must be a positive integer");
  uint32_t n = jn.get<uint32_t>();

  const json& jw = field(doc, "weights");
  const json& jr = field(doc, "reliable");
  if (!jw.is_array() || jw.size() != n)
    throw InvalidInstanceError("schema violation: \"weights\" must list one integer per vertex");
  if (!jr.is_array() || jr.size() != n)
    throw InvalidInstanceError("schema violation: \"reliable\" must list one bool per vertex");

  Instance inst;
  inst.g = NodeWeightedGraph(n);
  for (uint32_t v = 0; v < n; ++v) {
    if (!jw[v].is_number_integer() || jw[v].get<int64_t>() < 0)
      throw InvalidInstanceError("schema violation: weights must be nonnegative integers");
    if (!jr[v].is_boolean())
      throw InvalidInstanceError("schema violation: reliable entries must be booleans");
    inst.g.set_weight(v, jw[v].get<int64_t>());
    inst.g.set_reliable(v, jr[v].get<bool>());
  }

  for (const json& je : field(doc, "edges")) {
    if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
        !je[1].is_number_integer())
      throw InvalidInstanceError("schema violation: edges must be [u,v] integer pairs");
    int64_t u = je[0].get<int64_t>(), v = je[1].get<int64_t>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidInstanceError("edge endpoint out of range: [" + std::to_string(u) + "," +
                                 std::to_string(v) + "]");
    inst.g.add_edge(static_cast<uint32_t>(u), static_cast<uint32_t>(v));  // rejects duplicates
  }
  inst.g.sort_edges();

  for (const json& jd : field(doc, "demands")) {
    if (!jd.is_array() || jd.size() != 3 || !jd[0].is_number_integer() ||
        !jd[1].is_number_integer() || !jd[2].is_number_integer())
      throw InvalidInstanceError("schema violation: demands must be [u,v,r] integer triples");
    int64_t u = jd[0].get<int64_t>(), v = jd[1].get<int64_t>(), r = jd[2].get<int64_t>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidInstanceError("dangling demand endpoint: [" + std::to_string(u) + "," +
                                 std::to_string(v) + "]");
    if (r < 1 || r > kMaxRequirement)
      throw InvalidInstanceError("demand requirement out of range: " + std::to_string(r));
    if (u > v) std::swap(u, v);
    inst.demands.push_back({static_cast<uint32_t>(u), static_cast<uint32_t>(v),
                            static_cast<int>(r)});
  }
  std::sort(inst.demands.begin(), inst.demands.end(), [](const Demand& a, const Demand& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  const json& jk = field(doc, "kind");
  if (!jk.is_string()) throw InvalidInstanceError("schema violation: \"kind\" must be a string");
  inst.kind = kind_from_name(jk.get<std::string>());

  if (auto it = doc.find("planar"); it != doc.end()) {
    if (!it->is_boolean())
      throw InvalidInstanceError("schema violation: \"planar\" must be a boolean");
    inst.planar = it->get<bool>();
  }

  inst.validate();
  return inst;
}

Instance load_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstanceError("cannot open instance file: " + path);
  return load_instance(in);
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["n"] = inst.g.n();
  json w = json::array(), r = json::array(), e = json::array(), d = json::array();
  for (uint32_t v = 0; v < inst.g.n(); ++v) {
    w.push_back(inst.g.weight(v));
    r.push_back(static_cast<bool>(inst.g.reliable(v)));
  }
  for (const Edge& ed : inst.g.edges()) e.push_back(json::array({ed.u, ed.v}));
  for (const Demand& dm : inst.demands) d.push_back(json::array({dm.u, dm.v, dm.r}));
  doc["weights"] = std::move(w);
  doc["reliable"] = std::move(r);
  doc["edges"] = std::move(e);
  doc["demands"] = std::move(d);
  doc["kind"] = kind_name(inst.kind);
  doc["planar"] = inst.planar;
  return doc.dump();
}

void save_instance(const Instance& inst, std::ostream& out) { out << instance_to_json(inst) << "\n"; }

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInstanceError("cannot write instance file: " + path);
  save_instance(inst, out);
}

std::string to_dot(const Instance& inst, const VertexSet* solution) {
  std::ostringstream os;
  os << "graph sndp {\n";
  for (uint32_t v = 0; v < inst.g.n(); ++v) {
    os << "  " << v << " [label=\"" << v << ":" << inst.g.weight(v) << "\"";
    if (!inst.g.reliable(v)) os << " shape=box";
    if (solution && solution->contains(v)) os << " style=filled";
    os << "];\n";
  }
  for (const Edge& e : inst.g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace sndp
