#pragma once

#include <iosfwd>
#include <vector>

#include "sndp/biset.hpp"
#include "sndp/graph.hpp"
#include "sndp/rational.hpp"

namespace sndp {

// Supplies the engine with every inclusion-minimal violated biset for the
// current bought set P (violated: function value positive yet no edge induced
// by P crosses).  The engine never evaluates the covering function itself;
// it trusts the family and enforces the structural guarantees it needs:
//   - inner parts pairwise disjoint,
//   - outer part and boundary contained in P,
//   - no neighbor of an inner part already bought.
// Violations are internal-invariant errors, not recoverable conditions.
class ViolatedBisetOracle {
 public:
  virtual ~ViolatedBisetOracle() = default;
  // canonically sorted, duplicate-free
  virtual std::vector<Biset> minimal_violated(const VertexSet& p) = 0;
  virtual bool feasible(const VertexSet& p) { return minimal_violated(p).empty(); }
};

struct IterationRecord {
  int iter = 0;                // 1-based
  std::vector<Biset> family;   // minimal violated bisets this iteration
  Rational epsilon;
  uint32_t tight_vertex = 0;
};

// Sparse dual solution: one variable per biset ever raised.
struct DualState {
  std::vector<std::pair<Biset, Rational>> y;  // first-raised order
  Rational& value_for(const Biset& b);
  const Rational* find(const Biset& b) const;
  Rational objective() const;
};

struct CoverResult {
  VertexSet p0;                         // as passed (plus zero-weight vertices)
  VertexSet grown;                      // P when growth stopped
  VertexSet selected;                   // Q after reverse deletion, includes p0
  std::vector<uint32_t> selection_order;  // tight vertices in addition order
  DualState dual;
  Rational dual_objective;
  std::vector<IterationRecord> log;
};

// Primal-dual covering loop.  Grows all current minimal violated bisets
// uniformly until some unbought vertex becomes tight (its weight is exactly
// covered by the duals of bisets it neighbors), buys that vertex (smallest id
// on ties), and repeats until the oracle reports feasibility; then deletes
// bought vertices in reverse order whenever feasibility survives.  `trace`
// gets one JSON line per iteration when non-null.
CoverResult cover(const NodeWeightedGraph& g, const EdgeSet& phase_edges,
                  ViolatedBisetOracle& oracle, const VertexSet& p0,
                  std::ostream* trace = nullptr);

inline Rational dual_lower_bound(const CoverResult& r) { return r.dual_objective; }

// Vertices outside the outer part with a phase edge into the inner part.
VertexSet biset_neighbors(const NodeWeightedGraph& g, const EdgeSet& phase_edges, const Biset& b);

}  // namespace sndp
