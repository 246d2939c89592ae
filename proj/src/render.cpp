#include "stijl/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stijl/matrix.hpp"
#include "stijl/tiletree.hpp"

namespace stijl {

namespace {

constexpr std::array<const char*, 4> kStrokes = {"#1f3b73", "#8b1e1e", "#2f6b2f", "#000000"};

}  // namespace

int shade_level(double frequency) {
  const double f = std::clamp(frequency, 0.0, 1.0);
  // 255 * (1 - (0.1 + 0.8 f)), arranged so the endpoints are exact halves.
  return static_cast<int>(std::lround(255.0 * (9.0 - 8.0 * f) / 10.0));
}

std::string render_svg(const BinaryMatrix& d, const TileTree& t, const RenderOptions& opts) {
  if (opts.cell_size < 1) throw std::invalid_argument("cell_size must be at least 1");
  if (d.n_rows() != t.n_rows() || d.n_cols() != t.n_cols()) {
    throw std::invalid_argument("tree and data dimensions differ");
  }
  const int s = opts.cell_size;
  const char* stroke = kStrokes[static_cast<std::size_t>(opts.stroke_palette) % kStrokes.size()];

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << d.n_cols() * s
     << "\" height=\"" << d.n_rows() * s << "\" viewBox=\"0 0 " << d.n_cols() * s << ' '
     << d.n_rows() * s << "\">\n";

  const auto order = t.post_order();
  os << "<g id=\"tiles\">\n";
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Tile& x = t.tile(*it);
    const CountPair c = t.counts(*it);
    const double freq =
        c.total() > 0 ? static_cast<double>(c.ones) / static_cast<double>(c.total()) : 0.0;
    const int level = opts.shade_by_frequency ? shade_level(freq) : 255;
    os << "<rect x=\"" << (x.col_lo - 1) * s << "\" y=\"" << (x.row_lo - 1) * s << "\" width=\""
       << x.n_cols() * s << "\" height=\"" << x.n_rows() * s << "\" fill=\"rgb(" << level << ','
       << level << ',' << level << ")\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }
  os << "</g>\n";

  if (opts.show_ones) {
    const double r = std::max(0.5, s * 0.3);
    os << "<g id=\"ones\" fill=\"#c0392b\">\n";
    for (int i = 1; i <= d.n_rows(); ++i) {
      for (int j = 1; j <= d.n_cols(); ++j) {
        if (!d.at(i, j)) continue;
        os << "<circle cx=\"" << (j - 0.5) * s << "\" cy=\"" << (i - 0.5) * s << "\" r=\"" << r
           << "\"/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace stijl
