#include "sndp/graph.hpp"

#include <algorithm>

namespace sndp {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::EC: return "EC";
    case Kind::ELEM: return "ELEM";
    case Kind::VC012: return "VC012";
  }
  return "?";
}

Kind kind_from_name(const std::string& s) {
  if (s == "EC") return Kind::EC;
  if (s == "ELEM") return Kind::ELEM;
  if (s == "VC012") return Kind::VC012;
  throw InvalidInstanceError("unknown kind \"" + s + "\" (want EC, ELEM or VC012)");
}

uint32_t NodeWeightedGraph::add_vertex(int64_t w, bool reliable) {
  if (w < 0) throw InvalidInstanceError("negative vertex weight");
  weight_.push_back(w);
  reliable_.push_back(reliable);
  adj_.emplace_back();
  return n() - 1;
}

void NodeWeightedGraph::add_edge(uint32_t u, uint32_t v) {
  if (u >= n() || v >= n()) throw InvalidInstanceError("edge endpoint out of range");
  if (u == v) throw InvalidInstanceError("self loop at vertex " + std::to_string(u));
  if (u > v) std::swap(u, v);
  if (has_edge(u, v))
    throw InvalidInstanceError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  edges_.push_back({u, v});
  // edge ids are provisional until sort_edges(); adjacency is rebuilt there
  sorted_ = false;
}

void NodeWeightedGraph::sort_edges() {
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (auto& a : adj_) a.clear();
  for (uint32_t id = 0; id < m(); ++id) {
    adj_[edges_[id].u].push_back({edges_[id].v, id});
    adj_[edges_[id].v].push_back({edges_[id].u, id});
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  sorted_ = true;
}

void NodeWeightedGraph::set_weight(uint32_t v, int64_t w) {
  if (w < 0) throw InvalidInstanceError("negative vertex weight");
  weight_[v] = w;
}

bool NodeWeightedGraph::has_edge(uint32_t u, uint32_t v) const {
  if (u > v) std::swap(u, v);
  if (sorted_) {
    for (auto [w, id] : adj_[u])
      if (w == v) return true;
    return false;
  }
  for (const Edge& e : edges_)
    if (e.u == u && e.v == v) return true;
  return false;
}

int64_t NodeWeightedGraph::weight_of(const VertexSet& xs) const {
  int64_t total = 0;
  xs.for_each([&](uint32_t v) { total += weight_[v]; });
  return total;
}

VertexSet NodeWeightedGraph::zero_weight_vertices() const {
  VertexSet z(n());
  for (uint32_t v = 0; v < n(); ++v)
    if (weight_[v] == 0) z.add(v);
  return z;
}

EdgeSet induced_edges(const NodeWeightedGraph& g, const VertexSet& xs) {
  EdgeSet es(g.m());
  for (uint32_t id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    if (xs.contains(e.u) && xs.contains(e.v)) es.add(id);
  }
  return es;
}

std::vector<Edge> edge_list(const NodeWeightedGraph& g, const EdgeSet& es) {
  std::vector<Edge> out;
  es.for_each([&](uint32_t id) { out.push_back(g.edge(id)); });
  return out;
}

int Instance::k() const {
  int k = 0;
  for (const Demand& d : demands) k = std::max(k, d.r);
  return k;
}

VertexSet Instance::terminals() const {
  VertexSet t(g.n());
  for (const Demand& d : demands) {
    t.add(d.u);
    t.add(d.v);
  }
  return t;
}

void Instance::validate() const {
  for (size_t i = 0; i < demands.size(); ++i) {
    const Demand& d = demands[i];
    if (d.u >= g.n() || d.v >= g.n()) throw InvalidInstanceError("demand endpoint out of range");
    if (d.u == d.v) throw InvalidInstanceError("demand with equal endpoints");
    if (d.u > d.v) throw InvalidInstanceError("demand pair not canonical (want smaller id first)");
    if (d.r < 1) throw InvalidInstanceError("demand requirement must be positive");
    if (d.r > kMaxRequirement)
      throw InvalidInstanceError("requirement " + std::to_string(d.r) + " above the cap " +
                                 std::to_string(kMaxRequirement));
    if (kind == Kind::VC012 && d.r > 2)
      throw InvalidInstanceError("VC012 demands must be 1 or 2");
    if (!g.reliable(d.u) || !g.reliable(d.v))
      throw InvalidInstanceError("demand endpoint " +
                                 std::to_string(g.reliable(d.u) ? d.v : d.u) +
                                 " is not reliable");
    if (i > 0) {
      const Demand& p = demands[i - 1];
      if (p.u == d.u && p.v == d.v) throw InvalidInstanceError("duplicate demand pair");
      if (p.u > d.u || (p.u == d.u && p.v > d.v))
        throw InvalidInstanceError("demands not canonically sorted");
    }
  }
}

Preprocessed preprocess(const Instance& inst) {
  inst.validate();
  Preprocessed out;
  out.inst = inst;
  Instance& j = out.inst;
  j.g.sort_edges();

  if (inst.kind == Kind::EC) {
    for (uint32_t v = 0; v < j.g.n(); ++v) j.g.set_reliable(v, true);
  } else if (inst.kind == Kind::ELEM) {
    // Split every reliable-reliable edge so reliable vertices form an
    // independent set; the fresh midpoints are free and non-reliable, which
    // leaves element-disjointness (and hence the optimum) unchanged.
    NodeWeightedGraph h(j.g.n());
    for (uint32_t v = 0; v < j.g.n(); ++v) {
      h.set_weight(v, j.g.weight(v));
      h.set_reliable(v, j.g.reliable(v));
    }
    for (const Edge& e : j.g.edges()) {
      if (j.g.reliable(e.u) && j.g.reliable(e.v)) {
        uint32_t mid = h.add_vertex(0, false);
        h.add_edge(e.u, mid);
        h.add_edge(mid, e.v);
        out.report.subdivided_edges++;
      } else {
        h.add_edge(e.u, e.v);
      }
    }
    h.sort_edges();
    j.g = std::move(h);
  }

  for (const Demand& d : j.demands) {
    for (uint32_t t : {d.u, d.v}) {
      if (j.g.weight(t) != 0) {
        out.report.forced_zero.push_back(t);
        j.g.set_weight(t, 0);
      }
    }
  }
  std::sort(out.report.forced_zero.begin(), out.report.forced_zero.end());
  out.report.forced_zero.erase(
      std::unique(out.report.forced_zero.begin(), out.report.forced_zero.end()),
      out.report.forced_zero.end());
  return out;
}

}  // namespace sndp
