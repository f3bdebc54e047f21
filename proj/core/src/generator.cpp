#include "sndp/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "sndp/errors.hpp"

namespace sndp {

std::string family_name(Family f) {
  switch (f) {
    case Family::Grid: return "grid";
    case Family::RandomPlanarTriangulation: return "random_planar_triangulation";
    case Family::CycleChordsPlanar: return "cycle_chords_planar";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "grid") return Family::Grid;
  if (s == "random_planar_triangulation") return Family::RandomPlanarTriangulation;
  if (s == "cycle_chords_planar") return Family::CycleChordsPlanar;
  throw InvalidInstanceError("unknown generator family: " + s);
}

namespace {

uint64_t draw(std::mt19937_64& rng, uint64_t m) { return rng() % m; }

void build_grid(NodeWeightedGraph& g, uint32_t n) {
  uint32_t rows = static_cast<uint32_t>(std::sqrt(static_cast<double>(n)));
  if (rows == 0) rows = 1;
  uint32_t cols = (n + rows - 1) / rows;
  for (uint32_t v = 0; v < n; ++v) {
    uint32_t c = v % cols;
    if (c + 1 < cols && v + 1 < n) g.add_edge(v, v + 1);
    if (v + cols < n) g.add_edge(v, v + cols);
  }
}

void build_triangulation(NodeWeightedGraph& g, uint32_t n, std::mt19937_64& rng) {
  if (n < 3)
    throw InvalidInstanceError("random_planar_triangulation needs at least 3 vertices");
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  // both sides of the starting triangle are faces
  std::vector<std::array<uint32_t, 3>> faces{{0, 1, 2}, {0, 1, 2}};
  for (uint32_t v = 3; v < n; ++v) {
    size_t i = draw(rng, faces.size());
    std::array<uint32_t, 3> f = faces[i];
    g.add_edge(f[0], v);
    g.add_edge(f[1], v);
    g.add_edge(f[2], v);
    faces[i] = {f[0], f[1], v};
    faces.push_back({f[1], f[2], v});
    faces.push_back({f[0], f[2], v});
  }
}

void build_cycle_chords(NodeWeightedGraph& g, uint32_t n, std::mt19937_64& rng) {
  if (n < 3) throw InvalidInstanceError("cycle_chords_planar needs at least 3 vertices");
  for (uint32_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  g.add_edge(0, n - 1);
  // chords drawn inside the cycle; keep only pairwise non-crossing ones
  std::vector<std::pair<uint32_t, uint32_t>> chords;
  for (uint32_t attempt = 0; attempt < n; ++attempt) {
    uint32_t a = static_cast<uint32_t>(draw(rng, n));
    uint32_t b = static_cast<uint32_t>(draw(rng, n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (b - a == 1 || (a == 0 && b == n - 1)) continue;  // cycle edge
    if (g.has_edge(a, b)) continue;
    bool crossing = false;
    for (auto [c, d] : chords) {
      if (c == a || c == b || d == a || d == b) continue;  // shared endpoint
      bool c_in = a < c && c < b;
      bool d_in = a < d && d < b;
      if (c_in != d_in) {
        crossing = true;
        break;
      }
    }
    if (crossing) continue;
    g.add_edge(a, b);
    chords.emplace_back(a, b);
  }
}

}  // namespace

Instance generate(const GeneratorSpec& spec) {
  if (spec.n < 2) throw InvalidInstanceError("generator needs at least 2 vertices");
  if (spec.demand_count < 1) throw InvalidInstanceError("generator needs at least 1 demand");
  if (spec.weight_lo < 0 || spec.weight_hi < spec.weight_lo)
    throw InvalidInstanceError("generator weight range is empty or negative");
  if (spec.k_max < 1 || spec.k_max > kMaxRequirement)
    throw InvalidInstanceError("generator k_max out of range");
  if (spec.kind == Kind::VC012 && spec.k_max > 2)
    throw InvalidInstanceError("vertex-connectivity instances cap requirements at 2");
  uint64_t max_pairs = uint64_t{spec.n} * (spec.n - 1) / 2;
  if (spec.demand_count > max_pairs)
    throw InvalidInstanceError("demand_count exceeds the number of vertex pairs");

  std::mt19937_64 rng(spec.seed);
  NodeWeightedGraph g;
  for (uint32_t v = 0; v < spec.n; ++v) g.add_vertex(0, true);

  switch (spec.family) {
    case Family::Grid: build_grid(g, spec.n); break;
    case Family::RandomPlanarTriangulation: build_triangulation(g, spec.n, rng); break;
    case Family::CycleChordsPlanar: build_cycle_chords(g, spec.n, rng); break;
  }
  g.sort_edges();

  uint64_t span = static_cast<uint64_t>(spec.weight_hi - spec.weight_lo) + 1;
  for (uint32_t v = 0; v < spec.n; ++v)
    g.set_weight(v, spec.weight_lo + static_cast<int64_t>(draw(rng, span)));

  std::set<std::pair<uint32_t, uint32_t>> chosen;
  std::vector<Demand> demands;
  while (demands.size() < spec.demand_count) {
    uint32_t u = static_cast<uint32_t>(draw(rng, spec.n));
    uint32_t v = static_cast<uint32_t>(draw(rng, spec.n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!chosen.insert({u, v}).second) continue;
    int r = 1 + static_cast<int>(draw(rng, static_cast<uint64_t>(spec.k_max)));
    demands.push_back({u, v, r});
  }
  std::sort(demands.begin(), demands.end(),
            [](const Demand& a, const Demand& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });

  if (spec.kind == Kind::ELEM) {
    VertexSet terms(spec.n);
    for (const Demand& d : demands) {
      terms.add(d.u);
      terms.add(d.v);
    }
    for (uint32_t v = 0; v < spec.n; ++v)
      if (!terms.contains(v) && (rng() & 1)) g.set_reliable(v, false);
  }

  Instance inst;
  inst.g = std::move(g);
  inst.demands = std::move(demands);
  inst.kind = spec.kind;
  inst.planar = true;
  inst.validate();
  return inst;
}

}  // namespace sndp
