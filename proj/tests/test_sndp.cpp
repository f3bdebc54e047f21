#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "json.hpp"
#include "sndp/generator.hpp"
#include "sndp/oracle.hpp"
#include "sndp/sndp.hpp"
#include "test_util.hpp"

using namespace sndp;
using sndp_test::bs;
using sndp_test::make_instance;
using sndp_test::vs_of;

namespace {

Instance elem_path() {  // 0 -- 1 -- 2, midpoint purchasable and non-reliable
  return make_instance({{0, true}, {4, false}, {0, true}}, {{0, 1}, {1, 2}}, {{0, 2, 1}},
                       Kind::ELEM);
}

// requirement the biset separates, written out independently of the library
int separated_by_hand(const Instance& inst, const Biset& b) {
  int r = 0;
  for (const Demand& d : inst.demands) {
    bool su = b.inner().contains(d.u) && !b.outer().contains(d.v);
    bool sv = b.inner().contains(d.v) && !b.outer().contains(d.u);
    if (su || sv) r = std::max(r, d.r);
  }
  return r;
}

// replay a phase's bought-set trajectory, handing each iteration's P to `f`
template <class F>
void replay_iterations(const PhaseReport& pr, F f) {
  VertexSet p = pr.cover.p0;
  for (const IterationRecord& it : pr.cover.log) {
    f(p, it);
    p.add(it.tight_vertex);
  }
}

}  // namespace

TEST_CASE("phase function evaluates through its cut form") {
  Instance inst = elem_path();
  PhaseState st = make_phase_state(inst, 1, VertexSet(3));

  CHECK(h_ell_value(st, inst, bs(3, {}, {})) == 0);
  CHECK(h_ell_value(st, inst, Biset::plain(VertexSet::full(3))) == 0);
  CHECK(h_ell_value(st, inst, bs(3, {0}, {0})) == 1);
  CHECK(h_ell_value(st, inst, bs(3, {2}, {2})) == 1);
  // a boundary vertex is a payment the phase-1 function does not allow
  CHECK(h_ell_value(st, inst, bs(3, {0}, {0, 1})) == 0);
  // reliable vertices cannot sit on a boundary at all
  CHECK_THROWS_AS(h_ell_value(st, inst, bs(3, {0}, {0, 2})), InvalidInstanceError);
}

TEST_CASE("phase function agrees with the subtraction form on solver states") {
  // EC instances plus a hand-built ELEM cycle that preprocessing keeps intact
  std::vector<Instance> subjects;
  for (uint64_t seed : {5, 23}) {
    GeneratorSpec spec;
    spec.family = Family::Grid;
    spec.n = 6;
    spec.demand_count = 2;
    spec.k_max = 2;
    spec.kind = Kind::EC;
    spec.seed = seed;
    subjects.push_back(generate(spec));
  }
  subjects.push_back(make_instance({{0, true}, {3, false}, {0, true}, {5, false}},
                                   {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::ELEM));

  for (const Instance& raw : subjects) {
    SolveReport rep = solve(raw);
    const Instance& inst = rep.preprocessed;
    REQUIRE(inst.g.n() <= kMaxEnumerationVertices);
    std::vector<Biset> domain = enumerate_bisets(inst.g, true);
    for (const PhaseReport& pr : rep.phases) {
      for (const Biset& b : domain) {
        int direct = std::min(pr.state.ell, separated_by_hand(inst, b)) -
                     static_cast<int>(b.boundary_size()) -
                     static_cast<int>(cut_size(inst.g, pr.state.h_edges, b));
        direct = std::max(0, direct);
        CHECK(direct <= 1);  // earlier phases already paid for lower targets
        CHECK(h_ell_value(pr.state, inst, b) == direct);
      }
    }
  }
}

TEST_CASE("stage two function agrees with its written-out form") {
  Instance c4 = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                              {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::VC012);
  EdgeSet f1 = induced_edges(c4.g, vs_of(4, {0, 1, 2}));

  CHECK(vc_h_value(c4, f1, bs(4, {0}, {0, 1})) == 1);  // cut vertex as boundary
  CHECK(vc_h_value(c4, f1, bs(4, {0}, {0})) == 1);
  CHECK(vc_h_value(c4, f1, bs(4, {0, 1}, {0, 1})) == 1);
  CHECK(vc_h_value(c4, f1, bs(4, {0}, {0, 1, 3})) == 0);
  CHECK(vc_h_value(c4, f1, bs(4, {1}, {1})) == 0);  // separates no 2-demand

  for (const Biset& b : enumerate_bisets(4)) {
    int expect = 0;
    if (separated_by_hand(c4, b) >= 2 &&
        b.boundary_size() + cut_size(c4.g, f1, b) == 1)
      expect = 1;
    CHECK(vc_h_value(c4, f1, b) == expect);
  }

  // once the pair is 2-connected in the edge set, nothing separating scores
  EdgeSet all = EdgeSet::full(c4.g.m());
  for (const Biset& b : enumerate_bisets(4))
    if (separated_by_hand(c4, b) >= 2) CHECK(vc_h_value(c4, all, b) == 0);
}

TEST_CASE("violated family of the bare path is the two terminal singletons") {
  Instance inst = elem_path();
  PhaseState st = make_phase_state(inst, 1, VertexSet(3));
  std::vector<Biset> fam = elem_violated_bisets(inst, st, vs_of(3, {0, 2}));
  REQUIRE(fam.size() == 2);
  CHECK(fam[0] == bs(3, {0}, {0}));
  CHECK(fam[1] == bs(3, {2}, {2}));
  CHECK(fam == minimal_violated_bruteforce(inst, st, vs_of(3, {0, 2})));
}

TEST_CASE("cut oracle and brute force agree along full solver runs") {
  int used = 0;
  for (uint64_t seed = 1; used < 10 && seed < 60; ++seed) {
    GeneratorSpec spec;
    spec.family = seed % 2 ? Family::CycleChordsPlanar : Family::Grid;
    spec.n = 6 + seed % 3;
    spec.demand_count = 2;
    spec.k_max = 2;
    spec.kind = seed % 3 ? Kind::EC : Kind::ELEM;
    spec.seed = seed;
    Instance raw = generate(spec);
    if (preprocess(raw).inst.g.n() > kMaxEnumerationVertices) continue;
    ++used;

    SolveReport rep;
    try {
      rep = solve(raw);
    } catch (const InfeasibleError&) {
      continue;
    }
    const Instance& inst = rep.preprocessed;
    for (const PhaseReport& pr : rep.phases) {
      replay_iterations(pr, [&](const VertexSet& p, const IterationRecord& it) {
        std::vector<Biset> truth = minimal_violated_bruteforce(inst, pr.state, p);
        REQUIRE(truth.size() == it.family.size());
        for (size_t i = 0; i < truth.size(); ++i) CHECK(truth[i] == it.family[i]);
      });
    }
  }
  CHECK(used == 10);
}

TEST_CASE("adjacent terminals cost nothing") {
  Instance inst = make_instance({{7, true}, {9, true}}, {{0, 1}}, {{0, 1, 1}}, Kind::ELEM);
  SolveReport rep = solve(inst);
  CHECK(rep.weight == 0);
  CHECK(rep.solution == VertexSet::full(rep.preprocessed.g.n()));
  CHECK(rep.total_iterations() == 0);
  CHECK(rep.dual_total == 0);
  CHECK(rep.ratio_vs_dual() == 1);
}

TEST_CASE("square with a doubled demand buys both routes") {
  Instance inst = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::EC);
  SolveReport rep = solve(inst);
  CHECK(rep.weight == 2);
  CHECK(rep.solution == VertexSet::full(4));
  REQUIRE(rep.phases.size() == 2);
  CHECK(rep.phases[0].weight_added == 1);
  CHECK(rep.phases[1].weight_added == 1);
  CHECK(rep.dual_total == 2);

  ExactOpt exact = exact_opt_bruteforce(inst);
  REQUIRE(exact.feasible);
  CHECK(rep.weight == exact.weight);

  nlohmann::json doc = nlohmann::json::parse(rep.to_json());
  CHECK(doc["weight"] == 2);
  CHECK(doc["kind"] == "EC");
  CHECK(doc["solution"].size() == 4);
  CHECK(doc["phases"].size() == 2);
}

TEST_CASE("edge connectivity solving is element solving on the reliable view") {
  GeneratorSpec spec;
  spec.family = Family::RandomPlanarTriangulation;
  spec.n = 10;
  spec.demand_count = 3;
  spec.k_max = 2;
  spec.kind = Kind::EC;
  spec.seed = 31;
  Instance inst = generate(spec);
  SolveReport ec = solve_ec_sndp(inst);
  SolveReport elem = solve_elem_sndp(inst);
  CHECK(ec.to_json() == elem.to_json());

  for (const PhaseReport& pr : ec.phases)
    for (const IterationRecord& it : pr.cover.log)
      for (const Biset& b : it.family) CHECK(b.boundary_size() == 0);
}

TEST_CASE("solved instances satisfy their demands at close to optimal weight") {
  for (uint64_t seed : {2, 6, 17, 28}) {
    GeneratorSpec spec;
    spec.family = Family::CycleChordsPlanar;
    spec.n = 10;
    spec.demand_count = 3;
    spec.k_max = 2;
    spec.kind = Kind::EC;
    spec.seed = seed;
    Instance raw = generate(spec);
    SolveReport rep;
    try {
      rep = solve(raw);
    } catch (const InfeasibleError&) {
      ExactOpt exact = exact_opt_bruteforce(raw);
      CHECK_FALSE(exact.feasible);
      continue;
    }
    CHECK(check_feasibility(rep.preprocessed, rep.solution).ok);
    ExactOpt exact = exact_opt_bruteforce(raw);
    REQUIRE(exact.feasible);
    CHECK(rep.weight >= exact.weight);
    CHECK(Rational(rep.weight) <= Rational(10 * raw.k()) * Rational(exact.weight == 0 ? 1 : exact.weight));
    // each phase optimum is at most the global optimum, and duals sit below it
    for (const PhaseReport& pr : rep.phases)
      CHECK(pr.cover.dual_objective <= Rational(exact.weight));
  }
}

TEST_CASE("vertex connectivity solver runs one stage when no demand needs two") {
  Instance inst = make_instance({{0, true}, {2, true}, {0, true}},
                                {{0, 1}, {1, 2}}, {{0, 2, 1}}, Kind::VC012);
  SolveReport rep = solve(inst);
  REQUIRE(rep.phases.size() == 1);
  CHECK_FALSE(rep.phases[0].vc_stage2);
  CHECK(rep.weight == 2);
  CHECK(rep.stage1_view.has_value());
  CHECK(rep.stage1_view->kind == Kind::EC);
}

TEST_CASE("cycle with one doubled pair splits the cost across stages") {
  Instance inst = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::VC012);
  SolveReport rep = solve(inst);
  REQUIRE(rep.phases.size() == 2);
  CHECK_FALSE(rep.phases[0].vc_stage2);
  CHECK(rep.phases[1].vc_stage2);
  CHECK(rep.phases[0].weight_added == 1);
  CHECK(rep.phases[1].weight_added == 1);
  CHECK(rep.weight == 2);
  CHECK(rep.weight == exact_opt_bruteforce(inst).weight);
}

TEST_CASE("a path cannot carry a doubled requirement") {
  Instance inst = make_instance({{0, true}, {1, true}, {0, true}},
                                {{0, 1}, {1, 2}}, {{0, 2, 2}}, Kind::VC012);
  try {
    solve(inst);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.u == 0);
    CHECK(e.v == 2);
    CHECK(e.certificate == "({0},{0})");
  }

  Instance ec = make_instance({{0, true}, {1, true}, {0, true}},
                              {{0, 1}, {1, 2}}, {{0, 2, 2}}, Kind::EC);
  CHECK_THROWS_AS(solve(ec), InfeasibleError);
}
