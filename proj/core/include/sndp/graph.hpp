#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sndp/bits.hpp"
#include "sndp/errors.hpp"

namespace sndp {

struct Edge {
  uint32_t u, v;  // canonical: u < v
};

enum class Kind { EC, ELEM, VC012 };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);

// Simple undirected graph with a nonnegative integer weight and a reliability
// flag per vertex.  Vertex ids are dense 0..n-1; the edge list is kept sorted
// so edge ids are canonical.
class NodeWeightedGraph {
 public:
  NodeWeightedGraph() = default;
  explicit NodeWeightedGraph(uint32_t n) : weight_(n, 0), reliable_(n, true), adj_(n) {}

  uint32_t n() const { return static_cast<uint32_t>(weight_.size()); }
  uint32_t m() const { return static_cast<uint32_t>(edges_.size()); }

  uint32_t add_vertex(int64_t w, bool reliable);
  // Errors on self loops, duplicate edges and out-of-range ids.  Edge ids are
  // assigned only once all edges are in: call sort_edges() (done by Instance
  // construction and load) before relying on ids.
  void add_edge(uint32_t u, uint32_t v);
  void sort_edges();

  int64_t weight(uint32_t v) const { return weight_[v]; }
  void set_weight(uint32_t v, int64_t w);
  bool reliable(uint32_t v) const { return reliable_[v]; }
  void set_reliable(uint32_t v, bool r) { reliable_[v] = r; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(uint32_t id) const { return edges_[id]; }
  bool has_edge(uint32_t u, uint32_t v) const;
  // (neighbor, edge id) pairs, ascending by neighbor
  const std::vector<std::pair<uint32_t, uint32_t>>& adj(uint32_t v) const { return adj_[v]; }

  int64_t weight_of(const VertexSet& xs) const;
  VertexSet zero_weight_vertices() const;

 private:
  std::vector<int64_t> weight_;
  std::vector<char> reliable_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj_;
  bool sorted_ = true;
};

// Edge ids of edges with both endpoints inside xs.
EdgeSet induced_edges(const NodeWeightedGraph& g, const VertexSet& xs);
std::vector<Edge> edge_list(const NodeWeightedGraph& g, const EdgeSet& es);

struct Demand {
  uint32_t u, v;  // canonical: u < v
  int r;          // >= 1
};

struct Instance {
  NodeWeightedGraph g;
  std::vector<Demand> demands;  // canonically sorted, pairwise distinct
  Kind kind = Kind::EC;
  bool planar = false;  // generator-asserted, not recomputed

  int k() const;  // max demand, 0 if no demands
  VertexSet terminals() const;
  // Checks all documented invariants; throws InvalidInstanceError.
  void validate() const;
};

// Hard cap on augmentation phases.
inline constexpr int kMaxRequirement = 30;

struct PreprocessReport {
  std::vector<uint32_t> forced_zero;  // terminals whose weight was nonzero
  uint32_t subdivided_edges = 0;      // reliable-reliable edges split (ELEM)
};

struct Preprocessed {
  Instance inst;
  PreprocessReport report;
};

// Normalizes an instance for the solvers: terminals get weight 0 (recorded),
// EC marks every vertex reliable, ELEM subdivides each reliable-reliable edge
// through a fresh zero-weight non-reliable vertex so the reliable set becomes
// independent.  Idempotent.
Preprocessed preprocess(const Instance& inst);

}  // namespace sndp
