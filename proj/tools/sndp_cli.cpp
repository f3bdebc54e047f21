#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sndp/bench.hpp"
#include "sndp/errors.hpp"
#include "sndp/generator.hpp"
#include "sndp/instance_io.hpp"
#include "sndp/oracle.hpp"
#include "sndp/sndp.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sndp::InvalidInstanceError("cannot open output file: " + path);
  out << text;
}

std::pair<uint64_t, uint64_t> parse_seed_range(const std::string& s) {
  size_t dots = s.find("..");
  if (dots == std::string::npos)
    throw sndp::InvalidInstanceError("seed range must look like A..B: " + s);
  uint64_t lo = std::stoull(s.substr(0, dots));
  uint64_t hi = std::stoull(s.substr(dots + 2));
  if (hi < lo) throw sndp::InvalidInstanceError("seed range is empty: " + s);
  return {lo, hi};
}

int run(int argc, char** argv) {
  CLI::App app{"node-weighted survivable network design toolkit"};
  app.require_subcommand(1);

  std::string family = "grid", kind = "EC", in_path, out_path, trace_path, report_path;
  std::string seeds = "1..10", solution_path;
  uint32_t n = 9, demands = 1;
  int kmax = 1;
  int64_t wlo = 1, whi = 100;
  uint64_t seed = 0;
  bool exact = false;

  CLI::App* gen = app.add_subcommand("gen", "generate a random planar instance");
  gen->add_option("--family", family, "grid | random_planar_triangulation | cycle_chords_planar");
  gen->add_option("--n", n, "vertex count");
  gen->add_option("--demands", demands, "demand pair count");
  gen->add_option("--kmax", kmax, "largest requirement drawn");
  gen->add_option("--kind", kind, "EC | ELEM | VC012");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--wlo", wlo, "smallest vertex weight");
  gen->add_option("--whi", whi, "largest vertex weight");
  gen->add_option("--out", out_path, "instance file (stdout when omitted)");

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  solve_cmd->add_option("--in", in_path, "instance file")->required();
  solve_cmd->add_option("--out", out_path, "report JSON file");
  solve_cmd->add_option("--trace", trace_path, "iteration trace file (JSON lines)");

  CLI::App* audit_cmd = app.add_subcommand("audit", "solve and replay every invariant check");
  audit_cmd->add_option("--in", in_path, "instance file")->required();
  audit_cmd->add_option("--report", report_path, "check report file (JSON lines)");

  CLI::App* bench_cmd = app.add_subcommand("bench", "generate, solve and audit a seed range");
  bench_cmd->add_option("--seeds", seeds, "seed range A..B");
  bench_cmd->add_option("--family", family, "generator family");
  bench_cmd->add_option("--kind", kind, "EC | ELEM | VC012");
  bench_cmd->add_option("--n", n, "vertex count");
  bench_cmd->add_option("--demands", demands, "demand pair count");
  bench_cmd->add_option("--kmax", kmax, "largest requirement drawn");
  bench_cmd->add_flag("--exact", exact, "also run the exhaustive optimum");
  bench_cmd->add_option("--out", out_path, "CSV file (stdout when omitted)");

  CLI::App* dot_cmd = app.add_subcommand("export-dot", "write a Graphviz view of an instance");
  dot_cmd->add_option("--in", in_path, "instance file")->required();
  dot_cmd->add_option("--solution", solution_path, "solve report whose solution gets highlighted");
  dot_cmd->add_option("--out", out_path, "DOT file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (gen->parsed()) {
    sndp::GeneratorSpec spec;
    spec.family = sndp::family_from_name(family);
    spec.n = n;
    spec.weight_lo = wlo;
    spec.weight_hi = whi;
    spec.demand_count = demands;
    spec.k_max = kmax;
    spec.seed = seed;
    spec.kind = sndp::kind_from_name(kind);
    write_text(out_path, sndp::instance_to_json(sndp::generate(spec)));
    return 0;
  }

  if (solve_cmd->parsed()) {
    sndp::Instance inst = sndp::load_instance_file(in_path);
    std::ofstream trace;
    if (!trace_path.empty()) {
      trace.open(trace_path, std::ios::binary);
      if (!trace) throw sndp::InvalidInstanceError("cannot open trace file: " + trace_path);
    }
    sndp::SolveReport rep = sndp::solve(inst, trace.is_open() ? &trace : nullptr);
    if (!out_path.empty()) write_text(out_path, rep.to_json());
    char ratio[64];
    std::snprintf(ratio, sizeof ratio, "%.6f", sndp::rational_double(rep.ratio_vs_dual()));
    std::cout << "weight=" << rep.weight << " dual_lb=" << sndp::rational_str(rep.dual_total)
              << " ratio_vs_dual=" << ratio << "\n";
    return 0;
  }

  if (audit_cmd->parsed()) {
    sndp::Instance inst = sndp::load_instance_file(in_path);
    sndp::SolveReport rep = sndp::solve(inst);
    sndp::AuditReport ar = sndp::audit_solve_report(rep, in_path);
    if (!report_path.empty()) write_text(report_path, ar.to_json_lines());
    std::cout << "checks=" << ar.checks.size() << " failures=" << ar.fail_count()
              << " flows=" << ar.flows_run << "\n";
    for (const sndp::AuditCheck& c : ar.checks)
      if (!c.pass) std::cout << "FAIL " << c.name << " @ " << c.instance_id << ": " << c.witness
                             << "\n";
    return ar.all_pass() ? 0 : 1;
  }

  if (bench_cmd->parsed()) {
    sndp::BenchConfig cfg;
    cfg.base.family = sndp::family_from_name(family);
    cfg.base.n = n;
    cfg.base.demand_count = demands;
    cfg.base.k_max = kmax;
    cfg.base.kind = sndp::kind_from_name(kind);
    std::tie(cfg.seed_lo, cfg.seed_hi) = parse_seed_range(seeds);
    cfg.run_exact = exact;
    std::vector<sndp::BenchRow> rows = sndp::bench_run(cfg);
    write_text(out_path, sndp::bench_csv(rows));
    for (const sndp::BenchRow& r : rows)
      if (r.audit_pass == 0) {
        std::cerr << "audit failure at seed " << r.seed << "\n";
        return 1;
      }
    return 0;
  }

  if (dot_cmd->parsed()) {
    sndp::Instance inst = sndp::load_instance_file(in_path);
    if (solution_path.empty()) {
      write_text(out_path, sndp::to_dot(inst));
      return 0;
    }
    std::ifstream sol_in(solution_path, std::ios::binary);
    if (!sol_in) throw sndp::InvalidInstanceError("cannot open solution file: " + solution_path);
    nlohmann::json j = nlohmann::json::parse(sol_in);
    sndp::Preprocessed pp = sndp::preprocess(inst);
    sndp::VertexSet sol(pp.inst.g.n());
    for (uint32_t v : j.at("solution").get<std::vector<uint32_t>>()) {
      if (v >= pp.inst.g.n())
        throw sndp::InvalidInstanceError("solution vertex out of range: " + std::to_string(v));
      sol.add(v);
    }
    write_text(out_path, sndp::to_dot(pp.inst, &sol));
    return 0;
  }

  return 1;  // unreachable, require_subcommand guards it
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sndp::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    if (e.u >= 0) std::cerr << "deficient pair: (" << e.u << "," << e.v << ")\n";
    if (!e.certificate.empty()) std::cerr << "certificate: " << e.certificate << "\n";
    return 2;
  } catch (const sndp::InternalInvariantError& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
