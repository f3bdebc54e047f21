#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sndp/bits.hpp"
#include "sndp/errors.hpp"
#include "sndp/graph.hpp"

namespace sndp {

// Nested pair of vertex sets (inner, outer), inner included in outer.  The
// boundary outer\inner models vertices a cut may pass through rather than
// across.  Comparisons, ordering and hashing all use the canonical (inner,
// outer) representation.
class Biset {
 public:
  Biset() = default;
  Biset(VertexSet inner, VertexSet outer);
  // biset with empty boundary
  static Biset plain(VertexSet s) {
    VertexSet c = s;
    return Biset(std::move(s), std::move(c));
  }

  const VertexSet& inner() const { return in_; }
  const VertexSet& outer() const { return out_; }
  VertexSet boundary() const { return out_ - in_; }
  uint32_t boundary_size() const { return out_.size() - in_.size(); }
  uint32_t universe() const { return in_.universe(); }

  bool subset_of(const Biset& o) const {
    return in_.subset_of(o.in_) && out_.subset_of(o.out_);
  }
  bool proper_subset_of(const Biset& o) const { return subset_of(o) && !(*this == o); }

  bool operator==(const Biset& o) const { return in_ == o.in_ && out_ == o.out_; }
  bool operator!=(const Biset& o) const { return !(*this == o); }
  int compare(const Biset& o) const {
    int c = in_.compare(o.in_);
    return c ? c : out_.compare(o.out_);
  }
  bool operator<(const Biset& o) const { return compare(o) < 0; }
  size_t hash() const { return in_.hash() * 1000003u ^ out_.hash(); }

  std::string str() const { return "(" + in_.str() + "," + out_.str() + ")"; }

 private:
  VertexSet in_, out_;
};

// componentwise intersection / union
Biset intersect(const Biset& a, const Biset& b);
Biset unite(const Biset& a, const Biset& b);
// (inner_a \ outer_b, outer_a \ inner_b)
Biset subtract(const Biset& a, const Biset& b);

// Two bisets overlap when they are neither nested nor non-crossing
// (non-crossing: inner_a misses outer_b and inner_b misses outer_a).
bool overlap(const Biset& a, const Biset& b);

// boundary entirely non-reliable
bool in_P_elem(const Biset& s, const NodeWeightedGraph& g);

// number of edges of `es` with one endpoint in inner and the other outside outer
uint32_t cut_size(const NodeWeightedGraph& g, const EdgeSet& es, const Biset& s);
bool edge_crosses(const Edge& e, const Biset& s);

// Forest over a non-overlapping family, rooted at the trivial biset (V,V).
// node 0 is the root; parent links go to the inclusion-minimal strict
// superset.  edge_of carries an optional cover-edge id per node (-1 if none).
struct LaminarForest {
  std::vector<Biset> node;
  std::vector<int> parent;                 // -1 for the root
  std::vector<std::vector<int>> children;  // sorted
  std::vector<int> edge_of;

  // Deepest node containing v in its inner part; the root if none.
  int owner_node(uint32_t v) const;
  // Deepest node whose inner part contains all of xs; the root if none.
  int owner_node_of_set(const VertexSet& xs) const;
  int tree_degree(int node_id) const;
  bool is_leaf(int node_id) const { return children[node_id].empty(); }
};

// Throws InternalInvariantError naming the first overlapping pair.
LaminarForest build_laminar_forest(const std::vector<Biset>& family, uint32_t n);

// Witness family: one biset per cover edge, the biset crossed by exactly that
// edge among all of F.
struct WitnessFamily {
  std::vector<uint32_t> edge_ids;  // subset M of F, ascending
  std::vector<Biset> witness;      // parallel
};

// Repeatedly replaces an overlapping witness pair with either (intersection,
// union) or the two differences, whichever yields two valid witnesses again,
// reassigning the two edges by direct crossing tests.  Precondition: every
// input witness S_e has h(S_e) != 0 and crosses exactly the edge e within F.
// Result is non-overlapping with the same edge set.  Throws
// InternalInvariantError if neither branch validates or progress stalls.
WitnessFamily uncross_witness_family(WitnessFamily fam, const NodeWeightedGraph& g,
                                     const EdgeSet& f_edges,
                                     const std::function<bool(const Biset&)>& h);

// Checks h(S_e) and the unique-crossing condition for every entry.
bool witness_family_valid(const WitnessFamily& fam, const NodeWeightedGraph& g,
                          const EdgeSet& f_edges,
                          const std::function<bool(const Biset&)>& h,
                          std::string* why = nullptr);

uint32_t count_overlapping_pairs(const std::vector<Biset>& fam);

}  // namespace sndp
