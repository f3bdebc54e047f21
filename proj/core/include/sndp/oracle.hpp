#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sndp/sndp.hpp"

namespace sndp {

// One recorded verdict.  A failing check always carries a concrete witness
// (the offending biset pair, vertex or edge list).
struct AuditCheck {
  std::string name;
  std::string instance_id;
  bool pass = true;
  std::string witness;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  uint64_t bisets_enumerated = 0;
  uint64_t flows_run = 0;

  void add(std::string name, std::string instance_id, bool pass, std::string witness = "");
  bool all_pass() const;
  size_t fail_count() const;
  void merge(AuditReport other);
  // one JSON object per check, then a counters object
  std::string to_json_lines() const;
};

inline constexpr uint32_t kMaxEnumerationVertices = 12;

// Every biset over 0..n-1 in code order, where a biset's code assigns each
// vertex a base-3 digit: 0 outside, 1 boundary, 2 inner.  3^n results.
std::vector<Biset> enumerate_bisets(uint32_t n);
// Same, optionally dropped to the bisets whose boundary avoids reliable
// vertices.
std::vector<Biset> enumerate_bisets(const NodeWeightedGraph& g, bool restrict_P_elem);
uint64_t biset_code(const Biset& b);
Biset biset_from_code(uint64_t code, uint32_t n);

// Exact minimal violated family by full enumeration: every boundary-eligible
// biset with positive phase value and no crossing edge bought so far, filtered
// to the inclusion-minimal ones, canonically sorted.  Must agree exactly with
// the cut-based oracle.
std::vector<Biset> minimal_violated_bruteforce(const Instance& inst, const PhaseState& st,
                                               const VertexSet& p);
// Same ground truth for the second stage of the vertex-connectivity solver
// (function vc_h_value over all bisets).
std::vector<Biset> minimal_violated_bruteforce_vc2(const Instance& inst, const VertexSet& x1,
                                                   const VertexSet& p);

inline constexpr uint32_t kMaxBruteforceFreeVertices = 20;

struct ExactOpt {
  bool feasible = false;
  int64_t weight = -1;
  VertexSet solution;  // in the preprocessed instance's id space
};

// Minimum-weight X containing all terminals with E[X] meeting every demand,
// by enumerating subsets of the positive-weight non-terminals in nondecreasing
// (weight, mask) order; the first feasible subset is optimal.  Preprocesses
// internally.  Refuses more than kMaxBruteforceFreeVertices free vertices.
ExactOpt exact_opt_bruteforce(const Instance& inst);

enum class FunctionProperty { Bisubmodular, Bimaximal, Biuncrossable, SkewBisupermodular };
std::string function_property_name(FunctionProperty p);

// Tests the defining inequalities of the property over all unordered domain
// pairs (values of f on derived bisets are memoized by code).  Bisubmodular:
// f(S)+f(T) bounds both f(i)+f(u) and the two differences, every pair.
// Bimaximal: f(union) <= max on inner-disjoint pairs.  Skew-bisupermodular:
// one of the two reversed inequalities per pair.  Biuncrossable: same, but
// only for pairs with both values positive.
AuditReport check_function_property(FunctionProperty prop,
                                    const std::function<int(const Biset&)>& f,
                                    const std::vector<Biset>& domain,
                                    const std::string& instance_id);

struct FeasibilityResult {
  bool ok = true;
  std::optional<Demand> deficient;
  std::optional<Biset> cut;  // separating biset for the deficient pair
  uint64_t flows_run = 0;
};

// Does E[X] meet every demand at its required connectivity (element
// connectivity for EC/ELEM, vertex connectivity for VC012)?  X lives in the
// preprocessed instance's id space.
FeasibilityResult check_feasibility(const Instance& inst, const VertexSet& x);

// Everything the per-iteration counting audit needs to know about the phase
// it is inspecting.
struct AuditContext {
  const Instance* inst = nullptr;  // preprocessed instance the phase ran on
  PhaseState state;                // phase targets and the edges already owned
  bool vc_stage2 = false;
  bool planar = false;
  std::string instance_id;
};

// The per-iteration charging audit: verifies (stripping if needed) that q is
// a node-minimal completion of x, counts critical vertices against the 4|C|
// and (planar) 10|C| bounds, prunes the bought edges down to the two nested
// minimal covers, builds both laminar witness families, and checks the
// regular/special counts plus the tree-degree chain they rest on.
AuditReport audit_counting(const AuditContext& ctx, const VertexSet& x, const VertexSet& q,
                           const std::vector<Biset>& c);

// Replays one engine run from its log: per-iteration structural invariants,
// exact dual feasibility, complementary slackness on every bought vertex, the
// per-phase weight-vs-dual bound (planar), and audit_counting per iteration.
AuditReport audit_cover_run(const AuditContext& ctx, const CoverResult& cover);

// Full-solution audit: every phase of the report through audit_cover_run,
// plus a final feasibility check of the returned solution.
AuditReport audit_solve_report(const SolveReport& rep, const std::string& instance_id);

}  // namespace sndp
