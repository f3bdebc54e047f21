#include "sndp/flow.hpp"

#include <algorithm>
#include <deque>

namespace sndp {

int FlowNetwork::add_arc(int from, int to, int cap) {
  int id = static_cast<int>(head_.size());
  head_.push_back(to);
  cap_.push_back(cap);
  next_.push_back(first_[from]);
  first_[from] = id;
  return id;
}

void FlowNetwork::build(const NodeWeightedGraph& g, const EdgeSet& edges, SplitMode mode,
                        uint32_t s, uint32_t t) {
  g_ = &g;
  s_ = s;
  t_ = t;
  uint32_t n = g.n();
  node_in_.assign(n, -1);
  node_out_.assign(n, -1);
  split_.assign(n, 0);
  nodes_ = 0;
  for (uint32_t v = 0; v < n; ++v) {
    bool split = mode == SplitMode::NonReliable ? !g.reliable(v) : (v != s && v != t);
    split_[v] = split;
    node_in_[v] = nodes_++;
    node_out_[v] = split ? nodes_++ : node_in_[v];
  }
  head_.clear();
  cap_.clear();
  next_.clear();
  first_.assign(nodes_, -1);

  for (uint32_t v = 0; v < n; ++v) {
    if (split_[v]) {
      add_arc(node_in_[v], node_out_[v], 1);
      add_arc(node_out_[v], node_in_[v], 0);
    }
  }
  edges.for_each([&](uint32_t id) {
    const Edge& e = g.edge(id);
    add_arc(node_out_[e.u], node_in_[e.v], 1);
    add_arc(node_in_[e.v], node_out_[e.u], 0);
    add_arc(node_out_[e.v], node_in_[e.u], 1);
    add_arc(node_in_[e.u], node_out_[e.v], 0);
  });
}

bool FlowNetwork::bfs_augment() {
  prev_arc_.assign(nodes_, -1);
  dist_.assign(nodes_, -1);
  std::deque<int> q;
  int src = node_out_[s_], snk = node_in_[t_];
  dist_[src] = 0;
  q.push_back(src);
  while (!q.empty() && dist_[snk] < 0) {
    int x = q.front();
    q.pop_front();
    for (int a = first_[x]; a >= 0; a = next_[a]) {
      if (cap_[a] <= 0 || dist_[head_[a]] >= 0) continue;
      dist_[head_[a]] = dist_[x] + 1;
      prev_arc_[head_[a]] = a;
      q.push_back(head_[a]);
    }
  }
  if (dist_[snk] < 0) return false;
  for (int x = snk; x != src;) {
    int a = prev_arc_[x];
    cap_[a] -= 1;
    cap_[a ^ 1] += 1;
    x = head_[a ^ 1];
  }
  return true;
}

int FlowNetwork::max_flow(int limit) {
  int f = 0;
  while (f < limit && bfs_augment()) ++f;
  return f;
}

void FlowNetwork::residual_reach(std::vector<char>& seen) const {
  seen.assign(nodes_, 0);
  std::deque<int> q;
  int src = node_out_[s_];
  seen[src] = 1;
  q.push_back(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int a = first_[x]; a >= 0; a = next_[a]) {
      if (cap_[a] <= 0 || seen[head_[a]]) continue;
      seen[head_[a]] = 1;
      q.push_back(head_[a]);
    }
  }
}

Biset FlowNetwork::source_side_biset() const {
  std::vector<char> seen;
  residual_reach(seen);
  uint32_t n = g_->n();
  VertexSet inner(n), outer(n);
  for (uint32_t v = 0; v < n; ++v) {
    bool in_r = seen[node_in_[v]], out_r = seen[node_out_[v]];
    if (in_r && out_r) {
      inner.add(v);
      outer.add(v);
    } else if (in_r) {
      outer.add(v);  // cut passes through v
    }
  }
  return Biset(std::move(inner), std::move(outer));
}

int element_connectivity(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s, uint32_t t,
                         int cap) {
  if (!g.reliable(s) || !g.reliable(t))
    throw InvalidInstanceError("element connectivity endpoints must be reliable");
  if (s == t) throw InvalidInstanceError("element connectivity of a vertex with itself");
  FlowNetwork net;
  net.build(g, edges, SplitMode::NonReliable, s, t);
  return net.max_flow(cap);
}

Biset min_cut_biset_closest_to_source(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s,
                                      uint32_t t) {
  if (!g.reliable(s) || !g.reliable(t))
    throw InvalidInstanceError("element connectivity endpoints must be reliable");
  FlowNetwork net;
  net.build(g, edges, SplitMode::NonReliable, s, t);
  net.max_flow(1 << 20);
  return net.source_side_biset();
}

int pair_vertex_connectivity_at_most_2(const EdgeSet& edges, const NodeWeightedGraph& g, uint32_t s,
                                       uint32_t t) {
  if (s == t) throw InvalidInstanceError("vertex connectivity of a vertex with itself");
  FlowNetwork net;
  net.build(g, edges, SplitMode::AllButEnds, s, t);
  return net.max_flow(2);
}

Biset vc_min_cut_biset_closest_to_source(const EdgeSet& edges, const NodeWeightedGraph& g,
                                         uint32_t s, uint32_t t) {
  FlowNetwork net;
  net.build(g, edges, SplitMode::AllButEnds, s, t);
  net.max_flow(1 << 20);
  return net.source_side_biset();
}

}  // namespace sndp
