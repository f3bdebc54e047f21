#pragma once

#include <cstdint>
#include <vector>

#include "sndp/biset.hpp"
#include "sndp/graph.hpp"

namespace sndp {

// Which vertices get split into an in/out pair of unit capacity.
enum class SplitMode {
  NonReliable,  // element connectivity: only non-reliable vertices are capped
  AllButEnds,   // vertex connectivity: every vertex except s and t is capped
};

// Unit-capacity directed network built from an undirected edge subset.  Each
// splittable vertex v becomes v_in -> v_out with capacity 1; each edge {u,v}
// becomes the two arcs u_out -> v_in and v_out -> u_in, capacity 1 each.
// Max flow then equals the maximum number of paths pairwise disjoint in edges
// and splittable interior vertices.  All buffers are reused across build()
// calls so a query costs O(n+m) beyond the BFS work.
class FlowNetwork {
 public:
  void build(const NodeWeightedGraph& g, const EdgeSet& edges, SplitMode mode, uint32_t s,
             uint32_t t);
  // Augment along shortest residual paths until `limit` is reached or no path
  // remains; arcs are scanned in construction order, so results and the
  // residual cut below are deterministic.
  int max_flow(int limit);

  // After max_flow: the inclusion-minimal minimum cut on the source side, as
  // a biset.  Inner part: vertices all of whose copies are residual-reachable
  // from s; boundary: split vertices with only the in-copy reachable.
  Biset source_side_biset() const;

 private:
  int add_arc(int from, int to, int cap);
  bool bfs_augment();
  void residual_reach(std::vector<char>& seen) const;

  const NodeWeightedGraph* g_ = nullptr;
  uint32_t s_ = 0, t_ = 0;
  // node ids: node_in[v] / node_out[v]; equal when v is not split
  std::vector<int> node_in_, node_out_;
  std::vector<char> split_;
  int nodes_ = 0;
  // arc arrays; arc i and i^1 are a forward/backward pair
  std::vector<int> head_, cap_;
  std::vector<int> first_, next_;  // adjacency: first_[node], next_[arc]
  std::vector<int> prev_arc_, dist_;
};

// Maximum number of element-disjoint s-t paths within `edges`; s and t must
// be reliable.  `cap` bounds the work: the search stops once the flow reaches
// cap (pass a value above any possible flow for the exact number).
int element_connectivity(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s, uint32_t t,
                         int cap = 1 << 20);

// The inclusion-minimal minimum-value separating biset (cut edges plus
// boundary vertices) with s inside and t outside, boundary all non-reliable.
Biset min_cut_biset_closest_to_source(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s,
                                      uint32_t t);

// min(2, max internally vertex-disjoint s-t paths); reliability flags are
// ignored, every interior vertex counts.
int pair_vertex_connectivity_at_most_2(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s,
                                       uint32_t t);

// Closest-to-s minimum cut in the all-interior-vertices-split network.
Biset vc_min_cut_biset_closest_to_source(const EdgeSet& edges, const NodeWeightedGraph& g,
                                         uint32_t s, uint32_t t);

}  // namespace sndp
