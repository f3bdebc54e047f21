#pragma once

#include <cstdint>
#include <string>

#include "sndp/graph.hpp"

namespace sndp {

enum class Family { Grid, RandomPlanarTriangulation, CycleChordsPlanar };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// seed fully determines the output; draws happen in a fixed order
// (structure, then weights, then demands, then reliability) so families
// stay comparable across kinds
struct GeneratorSpec {
  Family family = Family::Grid;
  uint32_t n = 9;
  int64_t weight_lo = 1;
  int64_t weight_hi = 100;
  uint32_t demand_count = 1;
  int k_max = 1;
  uint64_t seed = 0;
  Kind kind = Kind::EC;
};

Instance generate(const GeneratorSpec& spec);

}  // namespace sndp
