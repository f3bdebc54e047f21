#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sndp/cover.hpp"
#include "sndp/flow.hpp"
#include "sndp/graph.hpp"

namespace sndp {

// Context of one augmentation phase: what earlier phases bought (x_prev), the
// edges that buying already pays for (h_edges = edges induced by x_prev), and
// the edges the current phase may still add (everything else).
struct PhaseState {
  int ell = 1;
  VertexSet x_prev;
  EdgeSet h_edges;
  EdgeSet phase_edges;
};

PhaseState make_phase_state(const Instance& inst, int ell, const VertexSet& x_prev);

// Largest requirement among demand pairs the biset separates (one endpoint in
// the inner part, the other outside the outer part); 0 if none.
int separated_requirement(const Instance& inst, const Biset& b);

// Phase-ell covering function, evaluated through its cut characterization:
// value 1 exactly when some separated pair needs ell and the boundary plus
// the already-paid-for cut edges add up to ell-1.  The biset must have an
// all-non-reliable boundary.
int h_ell_value(const PhaseState& st, const Instance& inst, const Biset& b);

// Stage-two function for the vertex-connectivity solver: 1 exactly when a
// requirement-2 pair is separated and the stage-one forest crosses the biset
// exactly once counting boundary vertices.
int vc_h_value(const Instance& inst, const EdgeSet& f1_edges, const Biset& b);

// Uniform connectivity queries for one phase; shared by the solver oracles,
// the brute-force cross-checks and the counting audits.
struct PhaseProbe {
  const Instance* inst = nullptr;
  int need = 1;                  // connectivity target of this phase
  bool vc_mode = false;          // split every interior vertex if true
  std::vector<Demand> relevant;  // pairs that must reach `need`
  mutable uint64_t flows_run = 0;

  static PhaseProbe elem(const Instance& inst, int ell);
  static PhaseProbe vc2(const Instance& inst);

  int conn(const EdgeSet& es, uint32_t s, uint32_t t, int cap) const;
  Biset closest_cut(const EdgeSet& es, uint32_t from, uint32_t to) const;
  // every relevant pair reaches `need` within es
  bool covers(const EdgeSet& es) const;
  std::optional<Demand> first_deficient(const EdgeSet& es) const;
};

// All inclusion-minimal violated bisets of the phase function w.r.t. the
// bought set p: for each deficient pair, the closest-to-source cuts from both
// sides, deduplicated, filtered to the inclusion-minimal ones, canonically
// sorted.
std::vector<Biset> elem_violated_bisets(const Instance& inst, const PhaseState& st,
                                        const VertexSet& p);

class ElemPhaseOracle final : public ViolatedBisetOracle {
 public:
  ElemPhaseOracle(const Instance& inst, const PhaseState& st);
  std::vector<Biset> minimal_violated(const VertexSet& p) override;

 private:
  const Instance& inst_;
  const PhaseState& st_;
  PhaseProbe probe_;
};

class VcStage2Oracle final : public ViolatedBisetOracle {
 public:
  VcStage2Oracle(const Instance& inst, const VertexSet& x1);
  std::vector<Biset> minimal_violated(const VertexSet& p) override;

 private:
  const Instance& inst_;
  VertexSet x1_;
  PhaseProbe probe_;
};

struct PhaseReport {
  int ell = 1;
  bool vc_stage2 = false;
  PhaseState state;
  CoverResult cover;
  int64_t weight_added = 0;
};

struct SolveReport {
  Kind kind = Kind::EC;
  bool planar = false;
  VertexSet solution;  // in the preprocessed instance's id space
  int64_t weight = 0;
  std::vector<PhaseReport> phases;
  Rational dual_total;
  PreprocessReport prep;
  Instance preprocessed;               // what the phases actually ran on
  std::optional<Instance> stage1_view;  // VC012: the stage-one relaxation

  int total_iterations() const;
  Rational ratio_vs_dual() const;  // weight / dual_total, 1 when both zero
  std::string to_json() const;
};

// Dispatches on kind after preprocessing (idempotent, so already-preprocessed
// instances are fine).  `trace` receives engine iteration lines.
SolveReport solve(const Instance& inst, std::ostream* trace = nullptr);
SolveReport solve_elem_sndp(const Instance& inst, std::ostream* trace = nullptr);
SolveReport solve_ec_sndp(const Instance& inst, std::ostream* trace = nullptr);
SolveReport solve_vc012(const Instance& inst, std::ostream* trace = nullptr);

// The stage-one relaxation: same graph, every vertex reliable, every demand
// collapsed to requirement 1.
Instance vc_stage1_view(const Instance& inst);

bool induced_connected(const NodeWeightedGraph& g, const VertexSet& c);

}  // namespace sndp
