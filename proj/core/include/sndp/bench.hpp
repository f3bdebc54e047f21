#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sndp/generator.hpp"

namespace sndp {

struct BenchConfig {
  GeneratorSpec base;  // seed field is overwritten per run
  uint64_t seed_lo = 1;
  uint64_t seed_hi = 10;
  bool run_exact = false;
  bool run_audit = true;
};

struct BenchRow {
  uint64_t seed = 0;
  std::string family;
  uint32_t n = 0;
  uint32_t m = 0;
  std::string kind;
  int k = 0;
  int64_t alg_weight = -1;   // -1 when the instance is infeasible
  int64_t exact_weight = -1;  // -1 when skipped or infeasible
  double dual_lb = -1.0;
  double ratio_exact = -1.0;
  double ratio_dual = -1.0;
  uint64_t phases = 0;
  uint64_t iters = 0;
  int audit_pass = -1;  // 1 pass, 0 fail, -1 not run
  std::string csv() const;
};

extern const char* kBenchCsvHeader;

BenchRow bench_one(const BenchConfig& cfg, uint64_t seed);

// one worker per seed slot, capped by BISET_SNDP_THREADS; rows come back in
// ascending seed order regardless of scheduling
std::vector<BenchRow> bench_run(const BenchConfig& cfg);

std::string bench_csv(const std::vector<BenchRow>& rows);

uint32_t bench_thread_cap();

}  // namespace sndp
