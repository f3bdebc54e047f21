#include "sndp/oracle.hpp"

#include <algorithm>
#include <climits>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace sndp {

void AuditReport::add(std::string name, std::string instance_id, bool pass, std::string witness) {
  if (!pass && witness.empty())
    throw InternalInvariantError("failing audit check without a witness: " + name);
  checks.push_back({std::move(name), std::move(instance_id), pass, std::move(witness)});
}

bool AuditReport::all_pass() const {
  for (const AuditCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

size_t AuditReport::fail_count() const {
  size_t k = 0;
  for (const AuditCheck& c : checks)
    if (!c.pass) ++k;
  return k;
}

void AuditReport::merge(AuditReport other) {
  for (AuditCheck& c : other.checks) checks.push_back(std::move(c));
  bisets_enumerated += other.bisets_enumerated;
  flows_run += other.flows_run;
}

std::string AuditReport::to_json_lines() const {
  std::ostringstream out;
  for (const AuditCheck& c : checks) {
    nlohmann::json j{{"check", c.name}, {"instance", c.instance_id}, {"pass", c.pass}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    out << j.dump() << "\n";
  }
  out << nlohmann::json{{"bisets_enumerated", bisets_enumerated}, {"flows_run", flows_run}}.dump()
      << "\n";
  return out.str();
}

namespace {

uint64_t pow3(uint32_t n) {
  uint64_t p = 1;
  while (n--) p *= 3;
  return p;
}

void require_enumerable(uint32_t n) {
  if (n > kMaxEnumerationVertices)
    throw SizeRefusalError("refusing to enumerate 3^" + std::to_string(n) +
                           " bisets; the cap is " + std::to_string(kMaxEnumerationVertices) +
                           " vertices");
}

}  // namespace

uint64_t biset_code(const Biset& b) {
  uint64_t code = 0;
  for (uint32_t v = b.universe(); v-- > 0;) {
    code *= 3;
    code += b.inner().contains(v) ? 2 : (b.outer().contains(v) ? 1 : 0);
  }
  return code;
}

Biset biset_from_code(uint64_t code, uint32_t n) {
  VertexSet in(n), out(n);
  for (uint32_t v = 0; v < n; ++v) {
    switch (code % 3) {
      case 2: in.add(v); [[fallthrough]];
      case 1: out.add(v);
    }
    code /= 3;
  }
  return Biset(std::move(in), std::move(out));
}

std::vector<Biset> enumerate_bisets(uint32_t n) {
  require_enumerable(n);
  uint64_t total = pow3(n);
  std::vector<Biset> out;
  out.reserve(total);
  for (uint64_t code = 0; code < total; ++code) out.push_back(biset_from_code(code, n));
  return out;
}

std::vector<Biset> enumerate_bisets(const NodeWeightedGraph& g, bool restrict_P_elem) {
  std::vector<Biset> all = enumerate_bisets(g.n());
  if (!restrict_P_elem) return all;
  std::vector<Biset> out;
  for (Biset& b : all)
    if (in_P_elem(b, g)) out.push_back(std::move(b));
  return out;
}

namespace {

// inclusion-minimal members, canonically sorted; inner parts must end up
// pairwise disjoint or the family cannot be what it claims to be
std::vector<Biset> keep_minimal_sorted(std::vector<Biset> all) {
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<Biset> out;
  for (const Biset& b : all) {
    bool minimal = true;
    for (const Biset& o : all)
      if (o != b && o.subset_of(b)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(b);
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].inner().intersects(out[j].inner()))
        throw InternalInvariantError("minimal violated bisets with overlapping inner parts: " +
                                     out[i].str() + " and " + out[j].str());
  return out;
}

}  // namespace

std::vector<Biset> minimal_violated_bruteforce(const Instance& inst, const PhaseState& st,
                                               const VertexSet& p) {
  require_enumerable(inst.g.n());
  EdgeSet bought_phase = induced_edges(inst.g, p) & st.phase_edges;
  std::vector<Biset> violated;
  uint64_t total = pow3(inst.g.n());
  for (uint64_t code = 0; code < total; ++code) {
    Biset b = biset_from_code(code, inst.g.n());
    if (!in_P_elem(b, inst.g)) continue;
    if (h_ell_value(st, inst, b) != 1) continue;
    if (cut_size(inst.g, bought_phase, b) != 0) continue;
    violated.push_back(std::move(b));
  }
  return keep_minimal_sorted(std::move(violated));
}

std::vector<Biset> minimal_violated_bruteforce_vc2(const Instance& inst, const VertexSet& x1,
                                                   const VertexSet& p) {
  require_enumerable(inst.g.n());
  EdgeSet f1 = induced_edges(inst.g, x1);
  EdgeSet bought_rest = induced_edges(inst.g, p) - f1;
  std::vector<Biset> violated;
  uint64_t total = pow3(inst.g.n());
  for (uint64_t code = 0; code < total; ++code) {
    Biset b = biset_from_code(code, inst.g.n());
    if (vc_h_value(inst, f1, b) != 1) continue;
    if (cut_size(inst.g, bought_rest, b) != 0) continue;
    violated.push_back(std::move(b));
  }
  return keep_minimal_sorted(std::move(violated));
}

ExactOpt exact_opt_bruteforce(const Instance& raw) {
  Preprocessed pp = preprocess(raw);
  const Instance& inst = pp.inst;
  const NodeWeightedGraph& g = inst.g;

  VertexSet base = inst.terminals() | g.zero_weight_vertices();
  std::vector<uint32_t> free_v;
  for (uint32_t v = 0; v < g.n(); ++v)
    if (!base.contains(v)) free_v.push_back(v);
  if (free_v.size() > kMaxBruteforceFreeVertices)
    throw SizeRefusalError("refusing exhaustive optimum over " + std::to_string(free_v.size()) +
                           " purchasable vertices; the cap is " +
                           std::to_string(kMaxBruteforceFreeVertices));

  auto feasible = [&](const VertexSet& xs) {
    EdgeSet es = induced_edges(g, xs);
    for (const Demand& d : inst.demands) {
      int got = inst.kind == Kind::VC012
                    ? pair_vertex_connectivity_at_most_2(es, g, d.u, d.v)
                    : element_connectivity(es, g, d.u, d.v, d.r);
      if (got < d.r) return false;
    }
    return true;
  };

  ExactOpt res;
  res.solution = VertexSet(g.n());
  if (!feasible(VertexSet::full(g.n()))) return res;  // nothing can help

  uint32_t p = static_cast<uint32_t>(free_v.size());
  std::vector<int64_t> mask_weight(uint64_t{1} << p, 0);
  for (uint64_t mask = 1; mask < mask_weight.size(); ++mask) {
    uint32_t low = static_cast<uint32_t>(__builtin_ctzll(mask));
    mask_weight[mask] = mask_weight[mask & (mask - 1)] + g.weight(free_v[low]);
  }
  std::vector<std::pair<int64_t, uint64_t>> order;
  order.reserve(mask_weight.size());
  for (uint64_t mask = 0; mask < mask_weight.size(); ++mask)
    order.emplace_back(mask_weight[mask], mask);
  std::sort(order.begin(), order.end());

  for (auto [w, mask] : order) {
    VertexSet xs = base;
    for (uint64_t bits = mask; bits;) {
      uint32_t i = static_cast<uint32_t>(__builtin_ctzll(bits));
      xs.add(free_v[i]);
      bits &= bits - 1;
    }
    if (feasible(xs)) {
      res.feasible = true;
      res.weight = w;
      res.solution = std::move(xs);
      return res;
    }
  }
  throw InternalInvariantError("exhaustive optimum search skipped the full vertex set");
}

std::string function_property_name(FunctionProperty p) {
  switch (p) {
    case FunctionProperty::Bisubmodular: return "bisubmodular";
    case FunctionProperty::Bimaximal: return "bimaximal";
    case FunctionProperty::Biuncrossable: return "biuncrossable";
    case FunctionProperty::SkewBisupermodular: return "skew-bisupermodular";
  }
  return "?";
}

AuditReport check_function_property(FunctionProperty prop,
                                    const std::function<int(const Biset&)>& f,
                                    const std::vector<Biset>& domain,
                                    const std::string& instance_id) {
  AuditReport rep;
  rep.bisets_enumerated = domain.size();
  std::string check = function_property_name(prop);
  if (domain.empty()) {
    rep.add(check, instance_id, true);
    return rep;
  }

  uint32_t n = domain.front().universe();
  std::vector<int> memo(pow3(n), INT_MIN);
  auto eval = [&](const Biset& b) {
    int& slot = memo[biset_code(b)];
    if (slot == INT_MIN) slot = f(b);
    return slot;
  };

  auto witness_text = [&](const Biset& s, const Biset& t) {
    std::ostringstream w;
    w << "S=" << s.str() << " f=" << eval(s) << ", T=" << t.str() << " f=" << eval(t)
      << ", f(int)=" << eval(intersect(s, t)) << ", f(uni)=" << eval(unite(s, t))
      << ", f(S-T)=" << eval(subtract(s, t)) << ", f(T-S)=" << eval(subtract(t, s));
    return w.str();
  };

  for (size_t i = 0; i < domain.size(); ++i) {
    for (size_t j = i; j < domain.size(); ++j) {
      const Biset& s = domain[i];
      const Biset& t = domain[j];
      int fs = eval(s), ft = eval(t);
      bool ok = true;
      switch (prop) {
        case FunctionProperty::Bisubmodular:
          ok = fs + ft >= eval(intersect(s, t)) + eval(unite(s, t)) &&
               fs + ft >= eval(subtract(s, t)) + eval(subtract(t, s));
          break;
        case FunctionProperty::Bimaximal:
          if (!s.inner().intersects(t.inner()))
            ok = eval(unite(s, t)) <= std::max(fs, ft);
          break;
        case FunctionProperty::SkewBisupermodular:
          ok = eval(intersect(s, t)) + eval(unite(s, t)) >= fs + ft ||
               eval(subtract(s, t)) + eval(subtract(t, s)) >= fs + ft;
          break;
        case FunctionProperty::Biuncrossable:
          if (fs > 0 && ft > 0)
            ok = eval(intersect(s, t)) + eval(unite(s, t)) >= fs + ft ||
                 eval(subtract(s, t)) + eval(subtract(t, s)) >= fs + ft;
          break;
      }
      if (!ok) {
        rep.add(check, instance_id, false, witness_text(s, t));
        return rep;
      }
    }
  }
  rep.add(check, instance_id, true);
  return rep;
}

FeasibilityResult check_feasibility(const Instance& raw, const VertexSet& x) {
  Preprocessed pp = preprocess(raw);
  const Instance& inst = pp.inst;
  if (x.universe() != inst.g.n())
    throw InvalidInstanceError("solution universe does not match the preprocessed vertex count");

  FeasibilityResult res;
  EdgeSet es = induced_edges(inst.g, x);
  for (const Demand& d : inst.demands) {
    int got = inst.kind == Kind::VC012
                  ? pair_vertex_connectivity_at_most_2(es, inst.g, d.u, d.v)
                  : element_connectivity(es, inst.g, d.u, d.v, d.r);
    ++res.flows_run;
    if (got < d.r) {
      res.ok = false;
      res.deficient = d;
      res.cut = inst.kind == Kind::VC012
                    ? vc_min_cut_biset_closest_to_source(es, inst.g, d.u, d.v)
                    : min_cut_biset_closest_to_source(es, inst.g, d.u, d.v);
      ++res.flows_run;
      return res;
    }
  }
  return res;
}

namespace {

std::string list_str(const std::vector<uint32_t>& xs) {
  std::string s = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}

bool vertex_incident_to(const NodeWeightedGraph& g, const EdgeSet& es, uint32_t v) {
  for (auto [w, id] : g.adj(v))
    if (es.contains(id)) return true;
  return false;
}

// witness construction for one pruned edge: the closest separating cut once
// the edge is dropped
struct WitnessBuild {
  bool ok = true;
  std::string why;
  WitnessFamily fam;
};

WitnessBuild build_witnesses(const PhaseProbe& probe, const NodeWeightedGraph& g,
                             const EdgeSet& ex, const EdgeSet& base, const EdgeSet& members,
                             const std::function<bool(const Biset&)>& hpred) {
  WitnessBuild out;
  members.for_each([&](uint32_t e) {
    if (!out.ok) return;
    EdgeSet without = base;
    without.remove(e);
    auto deficient = probe.first_deficient(ex | without);
    if (!deficient) {
      out.ok = false;
      out.why = "edge " + std::to_string(e) + " survived pruning yet is removable";
      return;
    }
    Biset w = probe.closest_cut(ex | without, deficient->u, deficient->v);
    if (!hpred(w)) {
      out.ok = false;
      out.why = "cut " + w.str() + " for edge " + std::to_string(e) + " is not a violated biset";
      return;
    }
    if (cut_size(g, base, w) != 1 || !edge_crosses(g.edge(e), w)) {
      out.ok = false;
      out.why = "cut " + w.str() + " does not cross exactly edge " + std::to_string(e);
      return;
    }
    out.fam.edge_ids.push_back(e);
    out.fam.witness.push_back(std::move(w));
  });
  return out;
}

}  // namespace

AuditReport audit_counting(const AuditContext& ctx, const VertexSet& x, const VertexSet& q_in,
                           const std::vector<Biset>& c) {
  AuditReport rep;
  const Instance& inst = *ctx.inst;
  const NodeWeightedGraph& g = inst.g;
  const std::string& iid = ctx.instance_id;
  if (q_in.intersects(x))
    throw InvalidInstanceError("audit_counting: q must be disjoint from x");

  PhaseProbe probe =
      ctx.vc_stage2 ? PhaseProbe::vc2(inst) : PhaseProbe::elem(inst, ctx.state.ell);
  int need = probe.need;
  EdgeSet ex = induced_edges(g, x);
  auto covers_with = [&](const EdgeSet& extra) { return probe.covers(ex | extra); };
  auto feasible_vertices = [&](const VertexSet& p) {
    return probe.covers(induced_edges(g, p));
  };

  if (!feasible_vertices(x | q_in)) {
    rep.add("cover-feasible", iid, false,
            "x plus q leaves a relevant pair below " + std::to_string(need));
    rep.flows_run = probe.flows_run;
    return rep;
  }
  rep.add("cover-feasible", iid, true);

  // the counting bounds assume q node-minimal; verify, stripping any
  // redundancy in ascending id order (a single pass settles it because
  // coverage is monotone in the vertex set)
  VertexSet q = q_in;
  std::vector<uint32_t> stripped;
  q_in.for_each([&](uint32_t v) {
    VertexSet t = x | q;
    t.remove(v);
    if (feasible_vertices(t)) {
      q.remove(v);
      stripped.push_back(v);
    }
  });
  rep.add("node-minimal-input", iid, stripped.empty(),
          stripped.empty() ? "" : "redundant vertices stripped: " + list_str(stripped));

  size_t cs = c.size();
  std::vector<VertexSet> gamma;
  gamma.reserve(cs);
  for (const Biset& ci : c) gamma.push_back(biset_neighbors(g, ctx.state.phase_edges, ci));

  VertexSet crit(g.n());
  uint64_t sum_incidence = 0;
  for (const VertexSet& nb : gamma) {
    VertexSet hit = q & nb;
    sum_incidence += hit.size();
    crit |= hit;
  }
  rep.add("critical-union-bound", iid, crit.size() <= 4 * cs,
          std::to_string(crit.size()) + " critical vertices " + crit.str() + " vs 4*" +
              std::to_string(cs));
  if (ctx.planar)
    rep.add("critical-incidence-bound", iid, sum_incidence <= 10 * cs,
            std::to_string(sum_incidence) + " critical incidences vs 10*" + std::to_string(cs));

  if (cs == 0) {
    rep.flows_run = probe.flows_run;
    return rep;  // remaining structure only exists relative to violated bisets
  }

  EdgeSet exq = induced_edges(g, x | q);
  EdgeSet k_edges = exq - ex;
  EdgeSet red(g.m()), blue(g.m());
  k_edges.for_each([&](uint32_t e) {
    bool crosses = false;
    for (const Biset& ci : c)
      if (edge_crosses(g.edge(e), ci)) {
        crosses = true;
        break;
      }
    (crosses ? red : blue).add(e);
  });

  {
    std::vector<uint32_t> bad;
    crit.for_each([&](uint32_t v) {
      if (!vertex_incident_to(g, red, v)) bad.push_back(v);
    });
    rep.add("critical-red-incidence", iid, bad.empty(),
            bad.empty() ? "" : "critical vertices with no red edge: " + list_str(bad));
  }

  // nested minimal covers: drop removable blue edges first, then removable
  // red edges, ascending edge id
  EdgeSet f_edges = k_edges;
  k_edges.for_each([&](uint32_t e) {
    if (!blue.contains(e)) return;
    EdgeSet t = f_edges;
    t.remove(e);
    if (covers_with(t)) f_edges = t;
  });
  EdgeSet f2_edges = f_edges;
  f_edges.for_each([&](uint32_t e) {
    if (!red.contains(e)) return;
    EdgeSet t = f2_edges;
    t.remove(e);
    if (covers_with(t)) f2_edges = t;
  });
  rep.add("pruned-cover", iid, covers_with(f2_edges),
          "pruned edge set " + f2_edges.str() + " fails to cover");

  EdgeSet blue_f = blue & f_edges;
  VertexSet regular(g.n());
  crit.for_each([&](uint32_t v) {
    if (vertex_incident_to(g, blue_f, v)) regular.add(v);
  });
  VertexSet special = crit - regular;
  rep.add("regular-count", iid, regular.size() <= 2 * cs,
          std::to_string(regular.size()) + " regular vertices " + regular.str() + " vs 2*" +
              std::to_string(cs));
  rep.add("special-count", iid, special.size() <= 2 * cs,
          std::to_string(special.size()) + " special vertices " + special.str() + " vs 2*" +
              std::to_string(cs));

  EdgeSet red_f2 = red & f2_edges;
  {
    std::vector<uint32_t> bad;
    special.for_each([&](uint32_t v) {
      if (!vertex_incident_to(g, red_f2, v)) bad.push_back(v);
    });
    rep.add("special-red-incidence", iid, bad.empty(),
            bad.empty() ? "" : "special vertices missing a kept red edge: " + list_str(bad));
  }

  bool elem_domain = !ctx.vc_stage2;
  auto hpred = [&](const Biset& b) {
    if (elem_domain && !in_P_elem(b, g)) return false;
    if (separated_requirement(inst, b) < need) return false;
    return static_cast<int>(b.boundary_size() + cut_size(g, ex, b)) == need - 1;
  };

  // one laminar witness family per pruned cover; the blue one counts the
  // regular vertices, the red one feeds the degree chain below
  struct Side {
    const char* tag;
    EdgeSet members;
    const EdgeSet* base;
  };
  Side sides[2] = {{"blue", blue_f, &f_edges}, {"red", red_f2, &f2_edges}};
  LaminarForest red_forest;
  WitnessFamily red_fam;
  bool red_ready = false;

  for (Side& side : sides) {
    std::string tag = side.tag;
    WitnessBuild wb = build_witnesses(probe, g, ex, *side.base, side.members, hpred);
    if (!wb.ok) {
      rep.add(tag + "-witness-construction", iid, false, wb.why);
      continue;
    }
    WitnessFamily uncrossed;
    try {
      uncrossed = uncross_witness_family(wb.fam, g, *side.base, hpred);
    } catch (const InternalInvariantError& e) {
      rep.add(tag + "-uncross-ok", iid, false, e.what());
      continue;
    }
    rep.add(tag + "-uncross-ok", iid, true);

    std::string why;
    rep.add(tag + "-witness-family-valid", iid,
            witness_family_valid(uncrossed, g, *side.base, hpred, &why), why);
    rep.add(tag + "-witness-laminar", iid, count_overlapping_pairs(uncrossed.witness) == 0,
            "family still has overlapping members");

    LaminarForest forest = build_laminar_forest(uncrossed.witness, g.n());
    {
      std::vector<int> orphan_leaves;
      for (size_t nid = 0; nid < forest.node.size(); ++nid) {
        if (!forest.is_leaf(static_cast<int>(nid))) continue;
        bool owns = false;
        for (const Biset& ci : c)
          if (forest.owner_node_of_set(ci.inner()) == static_cast<int>(nid)) {
            owns = true;
            break;
          }
        if (!owns) orphan_leaves.push_back(static_cast<int>(nid));
      }
      rep.add(tag + "-leaf-owns", iid, orphan_leaves.empty(),
              orphan_leaves.empty()
                  ? ""
                  : "leaves owning no minimal violated biset: " +
                        list_str(std::vector<uint32_t>(orphan_leaves.begin(),
                                                       orphan_leaves.end())));
    }
    if (tag == "red") {
      red_forest = std::move(forest);
      red_fam = std::move(uncrossed);
      red_ready = true;
    }
  }

  if (red_ready) {
    // owners: for every minimal violated biset, the deepest witness-tree node
    // whose inner part swallows its inner part; all candidates must be nested
    std::vector<int> owner(cs, 0);
    bool chain_ok = true, consist_ok = true;
    std::string chain_why, consist_why;
    for (size_t i = 0; i < cs; ++i) {
      const VertexSet& inner = c[i].inner();
      std::vector<int> holding;
      for (size_t nid = 0; nid < red_forest.node.size(); ++nid)
        if (inner.subset_of(red_forest.node[nid].inner())) holding.push_back(static_cast<int>(nid));
      for (size_t a = 0; a < holding.size() && chain_ok; ++a)
        for (size_t b = a + 1; b < holding.size() && chain_ok; ++b) {
          const Biset& ba = red_forest.node[holding[a]];
          const Biset& bb = red_forest.node[holding[b]];
          if (!ba.subset_of(bb) && !bb.subset_of(ba)) {
            chain_ok = false;
            chain_why = "nodes holding " + c[i].str() + " are not nested: " + ba.str() + " vs " +
                        bb.str();
          }
        }
      owner[i] = red_forest.owner_node_of_set(inner);
      bool same = true;
      inner.for_each([&](uint32_t v) {
        if (red_forest.owner_node(v) != owner[i]) same = false;
      });
      if (!same && consist_ok) {
        consist_ok = false;
        consist_why = "vertices of " + c[i].str() + " have split ownership";
      }
    }
    rep.add("owner-chain", iid, chain_ok, chain_why);
    rep.add("owner-consistency", iid, consist_ok, consist_why);

    std::vector<int> owner_set = owner;
    std::sort(owner_set.begin(), owner_set.end());
    owner_set.erase(std::unique(owner_set.begin(), owner_set.end()), owner_set.end());
    uint64_t sum_delta = 0;
    for (const Biset& ci : c) sum_delta += cut_size(g, f2_edges, ci);
    uint64_t sum_deg = 0;
    for (int nid : owner_set) sum_deg += red_forest.tree_degree(nid);

    rep.add("special-le-delta", iid, special.size() <= sum_delta,
            std::to_string(special.size()) + " special vs " + std::to_string(sum_delta) +
                " kept-red crossings");
    rep.add("delta-le-owner-degrees", iid, sum_delta <= sum_deg,
            std::to_string(sum_delta) + " crossings vs owner degree sum " +
                std::to_string(sum_deg));
    rep.add("owner-degrees-le-2a", iid, sum_deg <= 2 * owner_set.size(),
            "owner degree sum " + std::to_string(sum_deg) + " vs 2*" +
                std::to_string(owner_set.size()));
    rep.add("owners-le-c", iid, owner_set.size() <= cs,
            std::to_string(owner_set.size()) + " owners vs " + std::to_string(cs) + " bisets");

    // each kept red crossing must sit on a tree edge touching the owner of
    // the biset it crosses
    bool inc_ok = true;
    std::string inc_why;
    for (size_t i = 0; i < cs && inc_ok; ++i) {
      f2_edges.for_each([&](uint32_t e) {
        if (!inc_ok || !edge_crosses(g.edge(e), c[i])) return;
        int wnode = -1;
        for (size_t m = 0; m < red_fam.edge_ids.size(); ++m)
          if (red_fam.edge_ids[m] == e) wnode = static_cast<int>(m) + 1;
        if (wnode < 0) {
          inc_ok = false;
          inc_why = "crossing edge " + std::to_string(e) + " has no witness";
          return;
        }
        if (wnode != owner[i] && red_forest.parent[wnode] != owner[i]) {
          inc_ok = false;
          inc_why = "edge " + std::to_string(e) + " witness node neither owner of " +
                    c[i].str() + " nor its child";
        }
      });
    }
    rep.add("red-crossing-tree-edge", iid, inc_ok, inc_why);
  }

  rep.flows_run = probe.flows_run;
  return rep;
}

AuditReport audit_cover_run(const AuditContext& ctx, const CoverResult& cover) {
  AuditReport rep;
  const Instance& inst = *ctx.inst;
  const NodeWeightedGraph& g = inst.g;
  const std::string& iid = ctx.instance_id;

  PhaseProbe probe =
      ctx.vc_stage2 ? PhaseProbe::vc2(inst) : PhaseProbe::elem(inst, ctx.state.ell);

  std::unique_ptr<ViolatedBisetOracle> oracle;
  if (ctx.vc_stage2)
    oracle = std::make_unique<VcStage2Oracle>(inst, ctx.state.x_prev);
  else
    oracle = std::make_unique<ElemPhaseOracle>(inst, ctx.state);

  rep.add("p0-contains-zero-weights", iid, g.zero_weight_vertices().subset_of(cover.p0),
          "p0 " + cover.p0.str() + " misses zero-weight vertices");
  rep.add("p0-contains-prior", iid, ctx.state.x_prev.subset_of(cover.p0),
          "p0 " + cover.p0.str() + " misses prior phase output " + ctx.state.x_prev.str());

  VertexSet p = cover.p0;
  std::vector<Rational> load(g.n(), Rational(0));
  Rational dual_sum(0);

  for (size_t li = 0; li < cover.log.size(); ++li) {
    const IterationRecord& it = cover.log[li];
    std::string id = iid + "/iter" + std::to_string(it.iter);
    const std::vector<Biset>& fam = it.family;

    rep.add("family-nonempty", id, !fam.empty(), "empty violated family recorded");
    if (fam.empty()) break;

    bool sorted = true;
    for (size_t i = 0; i + 1 < fam.size(); ++i)
      if (fam[i].compare(fam[i + 1]) >= 0) sorted = false;
    rep.add("family-canonical", id, sorted, "family out of canonical order");

    {
      std::vector<Biset> expect = oracle->minimal_violated(p);
      bool same = expect == fam;
      std::string why;
      if (!same) {
        why = "recorded family of " + std::to_string(fam.size()) +
              " differs from recomputed family of " + std::to_string(expect.size());
      }
      rep.add("family-matches-oracle", id, same, why);
    }

    bool outer_ok = true, conn_ok = true, disj_ok = true, nbr_ok = true;
    std::string outer_why, conn_why, disj_why, nbr_why;
    std::vector<uint32_t> adj_count(g.n(), 0);
    std::vector<VertexSet> nbrs;
    for (size_t i = 0; i < fam.size(); ++i) {
      if (!fam[i].outer().subset_of(p) && outer_ok) {
        outer_ok = false;
        outer_why = fam[i].str() + " leaves the bought set";
      }
      if (!induced_connected(g, fam[i].inner()) && conn_ok) {
        conn_ok = false;
        conn_why = fam[i].str() + " has a disconnected inner part";
      }
      for (size_t j = i + 1; j < fam.size(); ++j)
        if (fam[i].inner().intersects(fam[j].inner()) && disj_ok) {
          disj_ok = false;
          disj_why = fam[i].str() + " and " + fam[j].str() + " share inner vertices";
        }
      VertexSet nb = biset_neighbors(g, ctx.state.phase_edges, fam[i]);
      if (nb.intersects(p) && nbr_ok) {
        nbr_ok = false;
        nbr_why = fam[i].str() + " neighbors bought vertices " + (nb & p).str();
      }
      nb.for_each([&](uint32_t v) { adj_count[v]++; });
      nbrs.push_back(std::move(nb));
    }
    rep.add("outer-in-bought", id, outer_ok, outer_why);
    rep.add("inner-connected", id, conn_ok, conn_why);
    rep.add("inners-disjoint", id, disj_ok, disj_why);
    rep.add("no-bought-neighbor", id, nbr_ok, nbr_why);

    // zero happens when several vertices went tight together and the engine
    // buys them one iteration at a time
    rep.add("epsilon-nonnegative", id, it.epsilon >= 0, "epsilon " + rational_str(it.epsilon));

    bool have = false;
    Rational eps;
    uint32_t tight = 0;
    for (uint32_t v = 0; v < g.n(); ++v) {
      if (p.contains(v) || adj_count[v] == 0) continue;
      Rational cand = (Rational(g.weight(v)) - load[v]) / adj_count[v];
      if (!have || cand < eps) {
        have = true;
        eps = cand;
        tight = v;
      }
    }
    rep.add("epsilon-min", id, have && eps == it.epsilon,
            "recomputed epsilon " + (have ? rational_str(eps) : std::string("none")) +
                " vs recorded " + rational_str(it.epsilon));
    rep.add("tight-vertex-choice", id, have && tight == it.tight_vertex,
            "recomputed tight vertex " + std::to_string(tight) + " vs recorded " +
                std::to_string(it.tight_vertex));

    for (uint32_t v = 0; v < g.n(); ++v)
      if (!p.contains(v) && adj_count[v] > 0) load[v] += it.epsilon * adj_count[v];
    dual_sum += it.epsilon * static_cast<int64_t>(fam.size());

    rep.add("tight-exact", id, load[it.tight_vertex] == Rational(g.weight(it.tight_vertex)),
            "vertex " + std::to_string(it.tight_vertex) + " covered " +
                rational_str(load[it.tight_vertex]) + " of weight " +
                std::to_string(g.weight(it.tight_vertex)));

    VertexSet q_i = cover.selected - p;
    rep.merge([&] {
      AuditContext sub = ctx;
      sub.instance_id = id;
      return audit_counting(sub, p, q_i, fam);
    }());

    p.add(it.tight_vertex);
  }

  rep.add("grown-matches", iid, p == cover.grown,
          "replayed growth " + p.str() + " vs recorded " + cover.grown.str());

  {
    bool ok = true;
    std::string why;
    for (uint32_t v = 0; v < g.n() && ok; ++v)
      if (load[v] > Rational(g.weight(v))) {
        ok = false;
        why = "vertex " + std::to_string(v) + " loaded " + rational_str(load[v]) +
              " beyond weight " + std::to_string(g.weight(v));
      }
    rep.add("dual-feasible", iid, ok, why);
  }
  {
    bool ok = true;
    std::string why;
    for (uint32_t v : cover.selection_order)
      if (load[v] != Rational(g.weight(v)) && ok) {
        ok = false;
        why = "bought vertex " + std::to_string(v) + " not tight: " + rational_str(load[v]) +
              " vs " + std::to_string(g.weight(v));
      }
    rep.add("complementary-slackness", iid, ok, why);
  }
  rep.add("dual-objective", iid, dual_sum == cover.dual_objective,
          "replayed dual " + rational_str(dual_sum) + " vs recorded " +
              rational_str(cover.dual_objective));

  {
    VertexSet extra = cover.selected - cover.grown;
    bool shape = cover.p0.subset_of(cover.selected) && extra.empty();
    VertexSet outside = (cover.selected - cover.p0);
    VertexSet order_set(g.n());
    for (uint32_t v : cover.selection_order) order_set.add(v);
    shape = shape && outside.subset_of(order_set);
    rep.add("selection-shape", iid, shape, "selected " + cover.selected.str() + " inconsistent");
  }
  rep.add("selected-feasible", iid, probe.covers(induced_edges(g, cover.selected)),
          "final selection leaves a relevant pair deficient");

  if (ctx.planar) {
    Rational bought(g.weight_of(cover.selected - cover.p0));
    rep.add("weight-vs-dual", iid, bought <= 10 * dual_sum,
            "phase bought weight " + rational_str(bought) + " vs 10 * dual " +
                rational_str(dual_sum));
  }

  rep.flows_run += probe.flows_run;
  return rep;
}

AuditReport audit_solve_report(const SolveReport& rep_in, const std::string& instance_id) {
  AuditReport rep;
  int64_t weight_sum = 0;
  Rational dual_acc(0);
  for (const PhaseReport& ph : rep_in.phases) {
    AuditContext ctx;
    bool stage1_of_vc = rep_in.kind == Kind::VC012 && !ph.vc_stage2;
    ctx.inst = stage1_of_vc ? &*rep_in.stage1_view : &rep_in.preprocessed;
    ctx.state = ph.state;
    ctx.vc_stage2 = ph.vc_stage2;
    ctx.planar = rep_in.planar;
    ctx.instance_id =
        instance_id + "/phase" + (ph.vc_stage2 ? "2v" : std::to_string(ph.ell));
    rep.merge(audit_cover_run(ctx, ph.cover));
    weight_sum += ph.weight_added;
    dual_acc += ph.cover.dual_objective;
  }
  rep.add("phase-weight-sum", instance_id, weight_sum == rep_in.weight,
          std::to_string(weight_sum) + " summed vs " + std::to_string(rep_in.weight));
  rep.add("dual-total", instance_id, dual_acc == rep_in.dual_total,
          rational_str(dual_acc) + " summed vs " + rational_str(rep_in.dual_total));

  FeasibilityResult fr = check_feasibility(rep_in.preprocessed, rep_in.solution);
  rep.flows_run += fr.flows_run;
  std::string why;
  if (!fr.ok)
    why = "pair (" + std::to_string(fr.deficient->u) + "," + std::to_string(fr.deficient->v) +
          ") needs " + std::to_string(fr.deficient->r) + "; cut " + fr.cut->str();
  rep.add("solution-feasible", instance_id, fr.ok, why);
  return rep;
}

}  // namespace sndp
