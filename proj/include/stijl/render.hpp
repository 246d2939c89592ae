#pragma once

#include <string>

namespace stijl {

class BinaryMatrix;
class TileTree;

struct RenderOptions {
  int cell_size = 4;             // pixels per matrix cell
  bool show_ones = true;         // a dot per 1
  bool shade_by_frequency = true;
  int stroke_palette = 0;        // index into a fixed outline palette
};

// Gray level for a tile's 1-frequency: 10% gray at 0 up to 90% gray at 1.
// Returned as the 0-255 channel value (lower is darker).
int shade_level(double frequency);

// SVG 1.1 document with one <rect> per tile, drawn in reverse post-order so
// a tile is painted over every tile that encodes after it. Throws
// std::invalid_argument if cell_size < 1 or the tree does not fit `d`.
std::string render_svg(const BinaryMatrix& d, const TileTree& t, const RenderOptions& opts = {});

}  // namespace stijl
