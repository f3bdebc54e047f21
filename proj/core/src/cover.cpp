#include "sndp/cover.hpp"

#include <algorithm>
#include <ostream>

namespace sndp {

Rational& DualState::value_for(const Biset& b) {
  for (auto& [k, v] : y)
    if (k == b) return v;
  y.emplace_back(b, Rational(0));
  return y.back().second;
}

const Rational* DualState::find(const Biset& b) const {
  for (auto& [k, v] : y)
    if (k == b) return &v;
  return nullptr;
}

Rational DualState::objective() const {
  Rational total(0);
  for (auto& [k, v] : y) total += v;
  return total;
}

VertexSet biset_neighbors(const NodeWeightedGraph& g, const EdgeSet& phase_edges, const Biset& b) {
  VertexSet out(g.n());
  phase_edges.for_each([&](uint32_t id) {
    const Edge& e = g.edge(id);
    if (b.inner().contains(e.u) && !b.outer().contains(e.v)) out.add(e.v);
    if (b.inner().contains(e.v) && !b.outer().contains(e.u)) out.add(e.u);
  });
  return out;
}

CoverResult cover(const NodeWeightedGraph& g, const EdgeSet& phase_edges,
                  ViolatedBisetOracle& oracle, const VertexSet& p0, std::ostream* trace) {
  CoverResult res;
  res.p0 = p0 | g.zero_weight_vertices();  // free vertices are always bought
  VertexSet p = res.p0;

  std::vector<Rational> residual(g.n());
  for (uint32_t v = 0; v < g.n(); ++v) residual[v] = g.weight(v);

  for (int iter = 1;; ++iter) {
    std::vector<Biset> family = oracle.minimal_violated(p);
    if (family.empty()) break;

    // structural guarantees the charging argument leans on
    for (size_t i = 0; i < family.size(); ++i) {
      const Biset& c = family[i];
      if (!c.outer().subset_of(p))
        throw InternalInvariantError("violated biset outer part leaves the bought set: " +
                                     c.str());
      for (size_t j = i + 1; j < family.size(); ++j)
        if (c.inner().intersects(family[j].inner()))
          throw InternalInvariantError("violated bisets with overlapping inner parts: " + c.str() +
                                       " and " + family[j].str());
    }

    // adjacency counts; also the no-neighbor check
    std::vector<VertexSet> nbrs;
    nbrs.reserve(family.size());
    std::vector<uint32_t> adj_count(g.n(), 0);
    for (const Biset& c : family) {
      VertexSet nb = biset_neighbors(g, phase_edges, c);
      if (nb.intersects(p))
        throw InternalInvariantError("violated biset has an already-bought neighbor: " + c.str());
      nb.for_each([&](uint32_t v) { adj_count[v]++; });
      nbrs.push_back(std::move(nb));
    }

    // epsilon: smallest residual(v)/deg(v) over unbought vertices touching
    // the family; smallest id wins ties
    bool have = false;
    Rational eps;
    uint32_t tight = 0;
    for (uint32_t v = 0; v < g.n(); ++v) {
      if (p.contains(v) || adj_count[v] == 0) continue;
      Rational cand = residual[v] / adj_count[v];
      if (!have || cand < eps) {
        have = true;
        eps = cand;
        tight = v;
      }
    }
    if (!have)
      throw InfeasibleError("no unbought vertex neighbors any violated biset", -1, -1,
                            family.front().str());

    for (uint32_t v = 0; v < g.n(); ++v) {
      if (!p.contains(v) && adj_count[v] > 0) residual[v] -= eps * adj_count[v];
    }
    for (const Biset& c : family) res.dual.value_for(c) += eps;
    if (!(residual[tight] == 0))
      throw InternalInvariantError("selected vertex is not tight after the raise");

    p.add(tight);
    res.selection_order.push_back(tight);
    res.log.push_back({iter, family, eps, tight});

    if (trace) {
      *trace << "{\"iter\":" << iter << ",\"raised_bisets\":[";
      for (size_t i = 0; i < family.size(); ++i) {
        if (i) *trace << ",";
        *trace << "\"" << family[i].str() << "\"";
      }
      *trace << "],\"epsilon\":\"" << rational_str(eps) << "\",\"tight_vertex\":" << tight
             << "}\n";
    }
  }

  res.grown = p;
  res.selected = p;
  for (size_t i = res.selection_order.size(); i-- > 0;) {
    uint32_t v = res.selection_order[i];
    VertexSet without = res.selected;
    without.remove(v);
    if (oracle.feasible(without)) res.selected = std::move(without);
  }
  res.dual_objective = res.dual.objective();
  return res;
}

}  // namespace sndp
