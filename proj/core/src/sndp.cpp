#include "sndp/sndp.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <ostream>

#include "json.hpp"

namespace sndp {

PhaseState make_phase_state(const Instance& inst, int ell, const VertexSet& x_prev) {
  PhaseState st;
  st.ell = ell;
  st.x_prev = x_prev;
  st.h_edges = induced_edges(inst.g, x_prev);
  st.phase_edges = EdgeSet::full(inst.g.m()) - st.h_edges;
  return st;
}

int separated_requirement(const Instance& inst, const Biset& b) {
  int best = 0;
  for (const Demand& d : inst.demands) {
    bool sep = (b.inner().contains(d.u) && !b.outer().contains(d.v)) ||
               (b.inner().contains(d.v) && !b.outer().contains(d.u));
    if (sep) best = std::max(best, d.r);
  }
  return best;
}

int h_ell_value(const PhaseState& st, const Instance& inst, const Biset& b) {
  if (!in_P_elem(b, inst.g))
    throw InvalidInstanceError("h evaluated on a biset with a reliable boundary vertex");
  if (separated_requirement(inst, b) < st.ell) return 0;
  uint32_t paid = b.boundary_size() + cut_size(inst.g, st.h_edges, b);
  return paid == static_cast<uint32_t>(st.ell - 1) ? 1 : 0;
}

int vc_h_value(const Instance& inst, const EdgeSet& f1_edges, const Biset& b) {
  if (separated_requirement(inst, b) < 2) return 0;
  return b.boundary_size() + cut_size(inst.g, f1_edges, b) == 1 ? 1 : 0;
}

PhaseProbe PhaseProbe::elem(const Instance& inst, int ell) {
  PhaseProbe p;
  p.inst = &inst;
  p.need = ell;
  p.vc_mode = false;
  for (const Demand& d : inst.demands)
    if (d.r >= ell) p.relevant.push_back(d);
  return p;
}

PhaseProbe PhaseProbe::vc2(const Instance& inst) {
  PhaseProbe p;
  p.inst = &inst;
  p.need = 2;
  p.vc_mode = true;
  for (const Demand& d : inst.demands)
    if (d.r == 2) p.relevant.push_back(d);
  return p;
}

int PhaseProbe::conn(const EdgeSet& es, uint32_t s, uint32_t t, int cap) const {
  ++flows_run;
  FlowNetwork net;
  net.build(inst->g, es, vc_mode ? SplitMode::AllButEnds : SplitMode::NonReliable, s, t);
  return net.max_flow(cap);
}

Biset PhaseProbe::closest_cut(const EdgeSet& es, uint32_t from, uint32_t to) const {
  ++flows_run;
  return vc_mode ? vc_min_cut_biset_closest_to_source(es, inst->g, from, to)
                 : min_cut_biset_closest_to_source(es, inst->g, from, to);
}

bool PhaseProbe::covers(const EdgeSet& es) const {
  for (const Demand& d : relevant)
    if (conn(es, d.u, d.v, need) < need) return false;
  return true;
}

std::optional<Demand> PhaseProbe::first_deficient(const EdgeSet& es) const {
  for (const Demand& d : relevant)
    if (conn(es, d.u, d.v, need) < need) return d;
  return std::nullopt;
}

bool induced_connected(const NodeWeightedGraph& g, const VertexSet& c) {
  if (c.empty()) return true;
  uint32_t start = c.to_list().front();
  VertexSet seen(g.n());
  seen.add(start);
  std::deque<uint32_t> q{start};
  while (!q.empty()) {
    uint32_t x = q.front();
    q.pop_front();
    for (auto [w, id] : g.adj(x)) {
      if (c.contains(w) && !seen.contains(w)) {
        seen.add(w);
        q.push_back(w);
      }
    }
  }
  return seen == c;
}

namespace {

// shared backend for the two oracles: deficient pairs -> closest cuts from
// both sides -> dedupe -> inclusion-minimal -> canonical order
std::vector<Biset> minimal_violated_via_cuts(const PhaseProbe& probe, const NodeWeightedGraph& g,
                                             const VertexSet& p, bool require_p_elem) {
  EdgeSet es = induced_edges(g, p);
  std::vector<Biset> cand;
  for (const Demand& d : probe.relevant) {
    int kappa = probe.conn(es, d.u, d.v, probe.need);
    if (kappa >= probe.need) continue;
    if (kappa != probe.need - 1)
      throw InternalInvariantError("pair (" + std::to_string(d.u) + "," + std::to_string(d.v) +
                                   ") below the connectivity the previous phase guarantees");
    cand.push_back(probe.closest_cut(es, d.u, d.v));
    cand.push_back(probe.closest_cut(es, d.v, d.u));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<Biset> out;
  for (const Biset& c : cand) {
    bool minimal = true;
    for (const Biset& o : cand)
      if (o != c && o.subset_of(c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  }

  for (const Biset& c : out) {
    if (require_p_elem && !in_P_elem(c, g))
      throw InternalInvariantError("cut biset has a reliable boundary vertex: " + c.str());
    if (!induced_connected(g, c.inner()))
      throw InternalInvariantError("minimal violated biset with disconnected inner part: " +
                                   c.str());
  }
  return out;
}

}  // namespace

std::vector<Biset> elem_violated_bisets(const Instance& inst, const PhaseState& st,
                                        const VertexSet& p) {
  PhaseProbe probe = PhaseProbe::elem(inst, st.ell);
  return minimal_violated_via_cuts(probe, inst.g, p, /*require_p_elem=*/true);
}

ElemPhaseOracle::ElemPhaseOracle(const Instance& inst, const PhaseState& st)
    : inst_(inst), st_(st), probe_(PhaseProbe::elem(inst, st.ell)) {}

std::vector<Biset> ElemPhaseOracle::minimal_violated(const VertexSet& p) {
  return minimal_violated_via_cuts(probe_, inst_.g, p, /*require_p_elem=*/true);
}

VcStage2Oracle::VcStage2Oracle(const Instance& inst, const VertexSet& x1)
    : inst_(inst), x1_(x1), probe_(PhaseProbe::vc2(inst)) {}

std::vector<Biset> VcStage2Oracle::minimal_violated(const VertexSet& p) {
  return minimal_violated_via_cuts(probe_, inst_.g, p, /*require_p_elem=*/false);
}

Instance vc_stage1_view(const Instance& inst) {
  Instance view = inst;
  view.kind = Kind::EC;
  for (uint32_t v = 0; v < view.g.n(); ++v) view.g.set_reliable(v, true);
  for (Demand& d : view.demands) d.r = 1;
  return view;
}

namespace {

void throw_infeasible(const Instance& inst, const PhaseProbe& probe) {
  EdgeSet all = EdgeSet::full(inst.g.m());
  for (const Demand& d : probe.relevant) {
    if (probe.conn(all, d.u, d.v, probe.need) < probe.need) {
      Biset cut = probe.closest_cut(all, d.u, d.v);
      throw InfeasibleError("demand (" + std::to_string(d.u) + "," + std::to_string(d.v) +
                                ") cannot reach connectivity " + std::to_string(probe.need) +
                                " even using every vertex; separating biset " + cut.str(),
                            static_cast<int>(d.u), static_cast<int>(d.v), cut.str());
    }
  }
  throw InternalInvariantError("phase ran out of purchasable vertices on a feasible instance");
}

int64_t run_phase(SolveReport& rep, const Instance& inst, int ell, bool vc_stage2,
                  VertexSet& x, std::ostream* trace) {
  PhaseReport pr;
  pr.ell = ell;
  pr.vc_stage2 = vc_stage2;
  pr.state = make_phase_state(inst, ell, x);
  if (trace) *trace << "{\"phase\":" << ell << (vc_stage2 ? ",\"stage\":2" : "") << "}\n";

  std::unique_ptr<ViolatedBisetOracle> oracle;
  PhaseProbe probe;
  if (vc_stage2) {
    oracle = std::make_unique<VcStage2Oracle>(inst, x);
    probe = PhaseProbe::vc2(inst);
  } else {
    oracle = std::make_unique<ElemPhaseOracle>(inst, pr.state);
    probe = PhaseProbe::elem(inst, ell);
  }

  try {
    pr.cover = cover(inst.g, pr.state.phase_edges, *oracle, x, trace);
  } catch (const InfeasibleError&) {
    throw_infeasible(inst, probe);
  }

  x = pr.cover.selected;
  pr.weight_added = inst.g.weight_of(pr.cover.selected - pr.cover.p0);

  // end-of-phase guarantee: every relevant pair reaches this phase's target
  if (!probe.covers(induced_edges(inst.g, x)))
    throw InternalInvariantError("phase " + std::to_string(ell) +
                                 " finished without reaching its connectivity target");

  int64_t added = pr.weight_added;
  rep.dual_total += pr.cover.dual_objective;
  rep.phases.push_back(std::move(pr));
  return added;
}

}  // namespace

SolveReport solve_elem_sndp(const Instance& raw, std::ostream* trace) {
  Preprocessed pp = preprocess(raw);
  const Instance& inst = pp.inst;

  SolveReport rep;
  rep.kind = inst.kind;
  rep.planar = inst.planar;
  rep.prep = pp.report;
  rep.preprocessed = inst;

  VertexSet x(inst.g.n());
  for (int ell = 1; ell <= inst.k(); ++ell) rep.weight += run_phase(rep, inst, ell, false, x, trace);

  rep.solution = x;

  // final verification against the original requirements
  EdgeSet ex = induced_edges(inst.g, x);
  for (const Demand& d : inst.demands) {
    if (element_connectivity(ex, inst.g, d.u, d.v, d.r) < d.r) {
      Biset cut = min_cut_biset_closest_to_source(ex, inst.g, d.u, d.v);
      throw InternalInvariantError("solution leaves demand (" + std::to_string(d.u) + "," +
                                   std::to_string(d.v) + ") deficient; cut " + cut.str());
    }
  }
  return rep;
}

SolveReport solve_ec_sndp(const Instance& raw, std::ostream* trace) {
  if (raw.kind != Kind::EC) throw InvalidInstanceError("solve_ec_sndp wants an EC instance");
  return solve_elem_sndp(raw, trace);
}

SolveReport solve_vc012(const Instance& raw, std::ostream* trace) {
  if (raw.kind != Kind::VC012) throw InvalidInstanceError("solve_vc012 wants a VC012 instance");
  Preprocessed pp = preprocess(raw);
  const Instance& inst = pp.inst;

  SolveReport rep;
  rep.kind = inst.kind;
  rep.planar = inst.planar;
  rep.prep = pp.report;
  rep.preprocessed = inst;
  rep.stage1_view = vc_stage1_view(inst);

  // stage one: connect every demand pair at least once
  VertexSet x(inst.g.n());
  rep.weight += run_phase(rep, *rep.stage1_view, 1, false, x, trace);

  // stage two: lift requirement-2 pairs to two vertex-disjoint paths
  bool any2 = std::any_of(inst.demands.begin(), inst.demands.end(),
                          [](const Demand& d) { return d.r == 2; });
  if (any2) rep.weight += run_phase(rep, inst, 2, true, x, trace);

  rep.solution = x;

  EdgeSet ex = induced_edges(inst.g, x);
  for (const Demand& d : inst.demands) {
    int got = pair_vertex_connectivity_at_most_2(ex, inst.g, d.u, d.v);
    if (got < d.r)
      throw InternalInvariantError("solution leaves demand (" + std::to_string(d.u) + "," +
                                   std::to_string(d.v) + ") at vertex connectivity " +
                                   std::to_string(got));
  }
  return rep;
}

SolveReport solve(const Instance& inst, std::ostream* trace) {
  switch (inst.kind) {
    case Kind::VC012: return solve_vc012(inst, trace);
    case Kind::EC: return solve_ec_sndp(inst, trace);
    case Kind::ELEM: return solve_elem_sndp(inst, trace);
  }
  throw InvalidInstanceError("unknown instance kind");
}

int SolveReport::total_iterations() const {
  int total = 0;
  for (const PhaseReport& p : phases) total += static_cast<int>(p.cover.log.size());
  return total;
}

Rational SolveReport::ratio_vs_dual() const {
  if (dual_total == 0) return Rational(1);
  return Rational(weight) / dual_total;
}

std::string SolveReport::to_json() const {
  nlohmann::json doc;
  doc["kind"] = kind_name(kind);
  doc["planar"] = planar;
  doc["feasible"] = true;
  doc["n_preprocessed"] = preprocessed.g.n();
  doc["weight"] = weight;
  doc["solution"] = solution.to_list();
  doc["dual_lb_total"] = rational_str(dual_total);
  doc["ratio_vs_dual"] = rational_double(ratio_vs_dual());
  nlohmann::json phs = nlohmann::json::array();
  for (const PhaseReport& p : phases) {
    nlohmann::json jp;
    jp["ell"] = p.ell;
    jp["vc_stage2"] = p.vc_stage2;
    jp["iterations"] = p.cover.log.size();
    jp["added"] = (p.cover.selected - p.cover.p0).to_list();
    jp["weight_added"] = p.weight_added;
    jp["dual_lb"] = rational_str(p.cover.dual_objective);
    phs.push_back(std::move(jp));
  }
  doc["phases"] = std::move(phs);
  doc["preprocess"] = {{"forced_zero", prep.forced_zero},
                       {"subdivided_edges", prep.subdivided_edges}};
  return doc.dump();
}

}  // namespace sndp
