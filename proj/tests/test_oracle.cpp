#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
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

bool has_failure(const AuditReport& rep, const std::string& name) {
  for (const AuditCheck& c : rep.checks)
    if (c.name == name && !c.pass) return true;
  return false;
}

}  // namespace

TEST_CASE("biset enumeration and codes") {
  std::vector<Biset> one = enumerate_bisets(1);
  REQUIRE(one.size() == 3);
  CHECK(one[0] == bs(1, {}, {}));
  CHECK(one[1] == bs(1, {}, {0}));
  CHECK(one[2] == bs(1, {0}, {0}));

  CHECK(enumerate_bisets(2).size() == 9);
  CHECK_THROWS_AS(enumerate_bisets(13), SizeRefusalError);

  std::vector<Biset> all = enumerate_bisets(3);
  for (uint64_t code = 0; code < all.size(); ++code) {
    CHECK(biset_code(all[code]) == code);
    CHECK(biset_from_code(code, 3) == all[code]);
  }

  NodeWeightedGraph g;
  g.add_vertex(1, true);
  g.add_vertex(1, false);
  g.add_vertex(1, true);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.sort_edges();
  // only vertex 1 may sit on a boundary: 2 * 3 * 2 placements
  CHECK(enumerate_bisets(g, true).size() == 12);
  for (uint32_t v = 0; v < g.n(); ++v) g.set_reliable(v, true);
  CHECK(enumerate_bisets(g, true).size() == 8);
  CHECK(enumerate_bisets(g, false).size() == 27);
}

TEST_CASE("exhaustive optimum on small instances") {
  Instance square = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                  {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::EC);
  ExactOpt got = exact_opt_bruteforce(square);
  REQUIRE(got.feasible);
  CHECK(got.weight == 2);
  CHECK(got.solution == VertexSet::full(4));

  Instance cheap = make_instance({{0, true}, {9, true}, {1, true}, {0, true}},
                                 {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {{0, 3, 1}}, Kind::EC);
  ExactOpt pick = exact_opt_bruteforce(cheap);
  REQUIRE(pick.feasible);
  CHECK(pick.weight == 1);
  CHECK(pick.solution == vs_of(4, {0, 2, 3}));

  Instance path2 = make_instance({{0, true}, {1, true}, {0, true}},
                                 {{0, 1}, {1, 2}}, {{0, 2, 2}}, Kind::EC);
  CHECK_FALSE(exact_opt_bruteforce(path2).feasible);
  CHECK(exact_opt_bruteforce(path2).weight == -1);
}

TEST_CASE("exhaustive optimum refuses oversized search spaces") {
  std::vector<sndp_test::VSpec> vs(25);  // interior weights default to 1
  std::vector<std::pair<uint32_t, uint32_t>> es;
  for (uint32_t v = 0; v + 1 < 25; ++v) es.push_back({v, v + 1});
  Instance longpath = make_instance(vs, es, {{0, 24, 1}}, Kind::EC);
  CHECK_THROWS_AS(exact_opt_bruteforce(longpath), SizeRefusalError);
}

TEST_CASE("property checkers accept what they should") {
  std::vector<Biset> domain = enumerate_bisets(3);
  auto ones = [](const Biset&) { return 1; };
  for (FunctionProperty p : {FunctionProperty::Bisubmodular, FunctionProperty::Bimaximal,
                             FunctionProperty::Biuncrossable, FunctionProperty::SkewBisupermodular})
    CHECK(check_function_property(p, ones, domain, "const").all_pass());

  // |inner| satisfies everything except the union-versus-max inequality
  auto inner_size = [](const Biset& b) { return static_cast<int>(b.inner().size()); };
  CHECK(check_function_property(FunctionProperty::Bisubmodular, inner_size, domain, "sz").all_pass());
  CHECK(check_function_property(FunctionProperty::SkewBisupermodular, inner_size, domain, "sz")
            .all_pass());
  CHECK(check_function_property(FunctionProperty::Biuncrossable, inner_size, domain, "sz").all_pass());

  Instance inst = make_instance({{0, true}, {4, false}, {0, true}}, {{0, 1}, {1, 2}}, {{0, 2, 1}},
                                Kind::ELEM);
  std::vector<Biset> elem_domain = enumerate_bisets(inst.g, true);
  auto req = [&](const Biset& b) { return separated_requirement(inst, b); };
  CHECK(check_function_property(FunctionProperty::Bimaximal, req, elem_domain, "req").all_pass());
  CHECK(check_function_property(FunctionProperty::SkewBisupermodular, req, elem_domain, "req")
            .all_pass());

  PhaseState st = make_phase_state(inst, 1, VertexSet(3));
  auto h = [&](const Biset& b) { return h_ell_value(st, inst, b); };
  CHECK(check_function_property(FunctionProperty::Biuncrossable, h, elem_domain, "h1").all_pass());
}

TEST_CASE("property checkers reject counterexamples with witnesses") {
  std::vector<Biset> domain = enumerate_bisets(3);

  auto quad = [](const Biset& b) {
    int k = static_cast<int>(b.inner().size());
    return k * k;
  };
  AuditReport r1 = check_function_property(FunctionProperty::Bisubmodular, quad, domain, "quad");
  CHECK_FALSE(r1.all_pass());
  REQUIRE(r1.fail_count() == 1);
  CHECK(r1.checks.back().name == "bisubmodular");
  CHECK(r1.checks.back().witness.find("f(uni)") != std::string::npos);

  auto inner_size = [](const Biset& b) { return static_cast<int>(b.inner().size()); };
  CHECK_FALSE(check_function_property(FunctionProperty::Bimaximal, inner_size, domain, "sz")
                  .all_pass());

  // 1 exactly on singleton inners: fails both uncrossing branches on the
  // boundary-shifted pair (({0},{0,1}), ({1},{1,2}))
  auto single = [](const Biset& b) { return b.inner().size() == 1 ? 1 : 0; };
  AuditReport r3 =
      check_function_property(FunctionProperty::Biuncrossable, single, domain, "single");
  CHECK_FALSE(r3.all_pass());
  CHECK_FALSE(
      check_function_property(FunctionProperty::SkewBisupermodular, single, domain, "single")
          .all_pass());
}

TEST_CASE("separated requirement uncrossing needs a single demand pair") {
  // six-cycle with a chord, two demand pairs interleaved around the cycle
  Instance two = make_instance(
      {{0, true}, {1, true}, {1, true}, {0, true}, {1, true}, {1, true}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 3}}, {{0, 3, 2}, {1, 4, 1}},
      Kind::VC012);
  auto req = [&](const Biset& b) { return separated_requirement(two, b); };

  // ({3},{1,3}) separates the 0-3 pair and parks 1 on its boundary; ({1},{1,3})
  // is the mirror image. Intersecting empties the inner part, uniting separates
  // nothing the bigger side did not already, and both differences lose their
  // separated endpoint, so neither uncrossing branch keeps the value.
  Biset s = bs(6, {3}, {1, 3});
  Biset t = bs(6, {1}, {1, 3});
  CHECK(req(s) == 2);
  CHECK(req(t) == 1);
  CHECK(req(intersect(s, t)) == 0);
  CHECK(req(unite(s, t)) == 2);
  CHECK(req(subtract(s, t)) == 0);
  CHECK(req(subtract(t, s)) == 0);

  std::vector<Biset> domain = enumerate_bisets(6);
  CHECK_FALSE(
      check_function_property(FunctionProperty::Biuncrossable, req, domain, "two").all_pass());
  // the union-versus-max side is indifferent to the second pair
  CHECK(check_function_property(FunctionProperty::Bimaximal, req, domain, "two").all_pass());

  // with one pair in play the parked endpoint cannot exist and uncrossing holds
  Instance one = two;
  one.demands = {{0, 3, 2}};
  one.validate();
  auto req1 = [&](const Biset& b) { return separated_requirement(one, b); };
  CHECK(check_function_property(FunctionProperty::Biuncrossable, req1, domain, "one").all_pass());
}

TEST_CASE("feasibility checker pinpoints the broken demand") {
  Instance split = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                 {{0, 1}, {2, 3}}, {{0, 2, 1}}, Kind::EC);
  FeasibilityResult bad = check_feasibility(split, VertexSet::full(4));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.deficient.has_value());
  CHECK(bad.deficient->u == 0);
  CHECK(bad.deficient->v == 2);
  REQUIRE(bad.cut.has_value());
  CHECK(*bad.cut == bs(4, {0, 1}, {0, 1}));

  Instance ok_inst = make_instance({{0, true}, {1, true}, {0, true}},
                                   {{0, 1}, {1, 2}}, {{0, 2, 1}}, Kind::EC);
  CHECK(check_feasibility(ok_inst, VertexSet::full(3)).ok);
  CHECK_FALSE(check_feasibility(ok_inst, vs_of(3, {0, 2})).ok);
  CHECK_THROWS_AS(check_feasibility(ok_inst, VertexSet::full(7)), InvalidInstanceError);
}

TEST_CASE("audit report plumbing") {
  AuditReport rep;
  rep.add("alpha", "case", true);
  rep.add("beta", "case", false, "some witness");
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.fail_count() == 1);
  CHECK_THROWS_AS(rep.add("gamma", "case", false, ""), InternalInvariantError);

  std::istringstream lines(rep.to_json_lines());
  std::string line;
  int parsed = 0;
  while (std::getline(lines, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    ++parsed;
  }
  CHECK(parsed == 3);  // two checks plus the counters line
}

TEST_CASE("solver runs pass the full audit") {
  std::vector<Instance> subjects;
  {
    GeneratorSpec spec;
    spec.family = Family::Grid;
    spec.n = 9;
    spec.demand_count = 3;
    spec.k_max = 2;
    spec.kind = Kind::EC;
    spec.seed = 14;
    subjects.push_back(generate(spec));
  }
  {
    GeneratorSpec spec;
    spec.family = Family::RandomPlanarTriangulation;
    spec.n = 9;
    spec.demand_count = 2;
    spec.k_max = 2;
    spec.kind = Kind::ELEM;
    spec.seed = 9;
    subjects.push_back(generate(spec));
  }
  subjects.push_back(make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                   {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::VC012));

  for (const Instance& inst : subjects) {
    SolveReport rep;
    try {
      rep = solve(inst);
    } catch (const InfeasibleError&) {
      CHECK_FALSE(exact_opt_bruteforce(inst).feasible);
      continue;
    }
    AuditReport audit = audit_solve_report(rep, "subject");
    if (!audit.all_pass()) {
      for (const AuditCheck& c : audit.checks)
        if (!c.pass) MESSAGE(c.name, " @ ", c.instance_id, ": ", c.witness);
    }
    CHECK(audit.all_pass());
    CHECK(audit.flows_run > 0);
  }
}

TEST_CASE("audits catch tampered reports") {
  Instance inst = make_instance({{0, true}, {1, true}, {0, true}, {1, true}},
                                {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {{0, 2, 2}}, Kind::EC);
  SolveReport clean = solve(inst);
  REQUIRE(audit_solve_report(clean, "clean").all_pass());

  SolveReport eps = clean;
  eps.phases[0].cover.log[0].epsilon += 1;
  AuditReport eps_audit = audit_solve_report(eps, "eps");
  CHECK_FALSE(eps_audit.all_pass());
  CHECK(has_failure(eps_audit, "epsilon-min"));

  SolveReport lost = clean;
  lost.solution.remove(1);
  AuditReport lost_audit = audit_solve_report(lost, "lost");
  CHECK_FALSE(lost_audit.all_pass());
  CHECK(has_failure(lost_audit, "solution-feasible"));

  SolveReport fam = clean;
  fam.phases[0].cover.log[0].family.pop_back();
  AuditReport fam_audit = audit_solve_report(fam, "fam");
  CHECK_FALSE(fam_audit.all_pass());
  CHECK(has_failure(fam_audit, "family-matches-oracle"));
}

TEST_CASE("counting audit rejects entangled inputs") {
  Instance inst = make_instance({{0, true}, {1, true}, {0, true}},
                                {{0, 1}, {1, 2}}, {{0, 2, 1}}, Kind::EC);
  AuditContext ctx;
  ctx.inst = &inst;
  ctx.state = make_phase_state(inst, 1, VertexSet(3));
  ctx.instance_id = "overlap";
  CHECK_THROWS_AS(audit_counting(ctx, vs_of(3, {0}), vs_of(3, {0}), {}), InvalidInstanceError);
}
