#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "stijl/findtile.hpp"
#include "stijl/matrix.hpp"
#include "stijl/scan.hpp"
#include "stijl/tiletree.hpp"

// Brute-force counterparts of the fast kernels and a planted-tile data
// generator. Nothing here calls into the scan or findtile implementations;
// the oracles carry their own entropy, claim and enumeration code.
namespace stijl::reference {

// Exhaustive O(m^2) search for the interval with the lowest split cost among
// those strictly denser than o / (o + z). Iterates b ascending, a descending
// from b, keeping only strict improvements.
ScanResult naive_scan(const CountVectors& v, Count o, Count z);

// Tries every subtile of x (admissible under `mode`) and scores it by its
// exact change in total encoded length. O(N^2 M^2) for an N x M parent.
SubtileSearchResult naive_find_tile(const BinaryMatrix& d, const TileTree& t, NodeId x,
                                    Mode mode, Bits min_gain = kDefaultMinGain);

struct PlantedLayer {
  Tile rect;
  double density = 0.0;
};

// Layers are applied in order; a cell takes the density of the last layer
// covering it (0 if none).
struct PlantedSpec {
  int n_rows = 0;
  int n_cols = 0;
  std::uint64_t seed = 0;
  std::vector<PlantedLayer> layers;
};

// Validates and samples every cell independently. Identical spec and seed
// give identical matrices on every platform.
BinaryMatrix generate_planted(const PlantedSpec& spec);

// Spec file:
//   dims <N> <M> seed <S>
//   rect <a> <b> <c> <d> density <f>      one per layer
PlantedSpec parse_planted_spec(std::istream& in);
PlantedSpec parse_planted_spec(std::string_view text);
std::string format_planted_spec(const PlantedSpec& spec);

// Background plus five rectangles: three blocks and two bars that cross.
PlantedSpec mondrian_spec(std::uint64_t seed);

}  // namespace stijl::reference
