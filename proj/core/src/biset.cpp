#include "sndp/biset.hpp"

#include <algorithm>

namespace sndp {

Biset::Biset(VertexSet inner, VertexSet outer) : in_(std::move(inner)), out_(std::move(outer)) {
  if (!in_.subset_of(out_))
    throw InternalInvariantError("biset inner part not contained in outer part");
}

Biset intersect(const Biset& a, const Biset& b) {
  return Biset(a.inner() & b.inner(), a.outer() & b.outer());
}

Biset unite(const Biset& a, const Biset& b) {
  return Biset(a.inner() | b.inner(), a.outer() | b.outer());
}

Biset subtract(const Biset& a, const Biset& b) {
  return Biset(a.inner() - b.outer(), a.outer() - b.inner());
}

bool overlap(const Biset& a, const Biset& b) {
  if (a.subset_of(b) || b.subset_of(a)) return false;
  if (!a.inner().intersects(b.outer()) && !b.inner().intersects(a.outer())) return false;
  return true;
}

bool in_P_elem(const Biset& s, const NodeWeightedGraph& g) {
  bool ok = true;
  s.outer().for_each([&](uint32_t v) {
    if (!s.inner().contains(v) && g.reliable(v)) ok = false;
  });
  return ok;
}

bool edge_crosses(const Edge& e, const Biset& s) {
  bool ui = s.inner().contains(e.u), vi = s.inner().contains(e.v);
  bool uo = s.outer().contains(e.u), vo = s.outer().contains(e.v);
  return (ui && !vo) || (vi && !uo);
}

uint32_t cut_size(const NodeWeightedGraph& g, const EdgeSet& es, const Biset& s) {
  uint32_t c = 0;
  es.for_each([&](uint32_t id) {
    if (edge_crosses(g.edge(id), s)) ++c;
  });
  return c;
}

int LaminarForest::owner_node(uint32_t v) const {
  int best = 0;
  for (size_t i = 1; i < node.size(); ++i) {
    if (!node[i].inner().contains(v)) continue;
    if (best == 0 || node[i].subset_of(node[best])) best = static_cast<int>(i);
  }
  return best;
}

int LaminarForest::owner_node_of_set(const VertexSet& xs) const {
  int best = 0;
  for (size_t i = 1; i < node.size(); ++i) {
    if (!xs.subset_of(node[i].inner())) continue;
    if (best == 0 || node[i].subset_of(node[best])) best = static_cast<int>(i);
  }
  return best;
}

int LaminarForest::tree_degree(int id) const {
  return static_cast<int>(children[id].size()) + (parent[id] >= 0 ? 1 : 0);
}

LaminarForest build_laminar_forest(const std::vector<Biset>& family, uint32_t n) {
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      if (overlap(family[i], family[j]))
        throw InternalInvariantError("family not laminar: " + family[i].str() + " overlaps " +
                                     family[j].str());

  LaminarForest f;
  VertexSet all = VertexSet::full(n);
  f.node.push_back(Biset(all, all));
  for (const Biset& b : family) f.node.push_back(b);
  f.parent.assign(f.node.size(), -1);
  f.children.resize(f.node.size());
  f.edge_of.assign(f.node.size(), -1);

  for (size_t i = 1; i < f.node.size(); ++i) {
    int best = 0;
    for (size_t j = 1; j < f.node.size(); ++j) {
      if (i == j) continue;
      if (!f.node[i].proper_subset_of(f.node[j])) continue;
      if (best == 0 || f.node[j].proper_subset_of(f.node[best])) best = static_cast<int>(j);
    }
    f.parent[i] = best;
    f.children[best].push_back(static_cast<int>(i));
  }
  return f;
}

namespace {

// -1 when not exactly one crossing edge, else that edge id
int unique_crossing_edge(const NodeWeightedGraph& g, const EdgeSet& f_edges, const Biset& s) {
  int found = -1;
  bool multiple = false;
  f_edges.for_each([&](uint32_t id) {
    if (edge_crosses(g.edge(id), s)) {
      if (found >= 0) multiple = true;
      found = static_cast<int>(id);
    }
  });
  return multiple ? -1 : found;
}

bool valid_witness_for(const NodeWeightedGraph& g, const EdgeSet& f_edges,
                       const std::function<bool(const Biset&)>& h, const Biset& s,
                       uint32_t edge_id) {
  return h(s) && unique_crossing_edge(g, f_edges, s) == static_cast<int>(edge_id);
}

}  // namespace

bool witness_family_valid(const WitnessFamily& fam, const NodeWeightedGraph& g,
                          const EdgeSet& f_edges, const std::function<bool(const Biset&)>& h,
                          std::string* why) {
  for (size_t i = 0; i < fam.edge_ids.size(); ++i) {
    if (!h(fam.witness[i])) {
      if (why) *why = "witness " + fam.witness[i].str() + " not violated";
      return false;
    }
    int e = unique_crossing_edge(g, f_edges, fam.witness[i]);
    if (e != static_cast<int>(fam.edge_ids[i])) {
      if (why)
        *why = "witness " + fam.witness[i].str() + " does not cross exactly edge " +
               std::to_string(fam.edge_ids[i]);
      return false;
    }
  }
  return true;
}

uint32_t count_overlapping_pairs(const std::vector<Biset>& fam) {
  uint32_t c = 0;
  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = i + 1; j < fam.size(); ++j)
      if (overlap(fam[i], fam[j])) ++c;
  return c;
}

WitnessFamily uncross_witness_family(WitnessFamily fam, const NodeWeightedGraph& g,
                                     const EdgeSet& f_edges,
                                     const std::function<bool(const Biset&)>& h) {
  {
    std::string why;
    if (!witness_family_valid(fam, g, f_edges, h, &why))
      throw InvalidInstanceError("uncross precondition: " + why);
  }

  uint32_t overlaps = count_overlapping_pairs(fam.witness);
  while (overlaps > 0) {
    // first overlapping pair in edge order
    size_t pi = 0, pj = 0;
    bool found = false;
    for (size_t i = 0; i < fam.witness.size() && !found; ++i)
      for (size_t j = i + 1; j < fam.witness.size() && !found; ++j)
        if (overlap(fam.witness[i], fam.witness[j])) {
          pi = i;
          pj = j;
          found = true;
        }

    const Biset& s1 = fam.witness[pi];
    const Biset& s2 = fam.witness[pj];
    uint32_t e1 = fam.edge_ids[pi], e2 = fam.edge_ids[pj];

    // candidate replacement pairs, in the order we are willing to take them
    std::vector<std::pair<Biset, Biset>> branches;
    branches.emplace_back(intersect(s1, s2), unite(s1, s2));
    branches.emplace_back(subtract(s1, s2), subtract(s2, s1));

    bool fixed = false;
    for (auto& [a, b] : branches) {
      // assignment decided by direct crossing tests against F
      for (auto [ea, eb] : {std::pair{e1, e2}, std::pair{e2, e1}}) {
        if (valid_witness_for(g, f_edges, h, a, ea) && valid_witness_for(g, f_edges, h, b, eb)) {
          fam.witness[pi] = (ea == e1) ? a : b;
          fam.witness[pj] = (ea == e1) ? b : a;
          fixed = true;
          break;
        }
      }
      if (fixed) break;
    }
    if (!fixed)
      throw InternalInvariantError("uncrossing failed: neither branch yields valid witnesses for " +
                                   s1.str() + " and " + s2.str());

    uint32_t now = count_overlapping_pairs(fam.witness);
    if (now >= overlaps)
      throw InternalInvariantError("uncrossing made no progress (overlap count " +
                                   std::to_string(overlaps) + " -> " + std::to_string(now) + ")");
    overlaps = now;
  }
  return fam;
}

}  // namespace sndp
