#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stijl/encoding.hpp"
#include "stijl/error.hpp"
#include "stijl/findtile.hpp"
#include "stijl/matrix.hpp"
#include "stijl/miner.hpp"
#include "stijl/ordering.hpp"
#include "stijl/reference.hpp"
#include "stijl/render.hpp"
#include "stijl/scan.hpp"
#include "stijl/tiletree.hpp"

namespace py = pybind11;
using namespace stijl;

namespace {

BinaryMatrix from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  const auto rows = static_cast<int>(a.shape(0));
  const auto cols = static_cast<int>(a.shape(1));
  std::vector<std::uint8_t> cells(a.data(), a.data() + a.size());
  for (auto& c : cells) c = c != 0;
  return BinaryMatrix(rows, cols, std::move(cells));
}

py::array_t<std::uint8_t> to_array(const BinaryMatrix& d) {
  py::array_t<std::uint8_t> out({d.n_rows(), d.n_cols()});
  std::copy(d.cells().begin(), d.cells().end(), out.mutable_data());
  return out;
}

std::string repr(const Tile& t) {
  std::ostringstream os;
  os << "Tile" << t;
  return os.str();
}

py::dict step_dict(const MiningStep& s) {
  py::dict d;
  d["search"] = s.search;
  d["parent"] = s.parent;
  d["tile"] = s.tile ? py::cast(*s.tile) : py::none();
  d["polarity"] = std::string(to_string(s.polarity));
  d["delta"] = s.delta;
  d["total_bits"] = s.total_bits;
  d["accepted"] = s.accepted;
  return d;
}

}  // namespace

PYBIND11_MODULE(_stijl, m) {
  m.doc() = "Hierarchical tile mining for ordered binary matrices";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ContainmentError>(m, "ContainmentError", PyExc_ValueError);
  py::register_exception<CountError>(m, "CountError", PyExc_ValueError);
  py::register_exception<OrderingError>(m, "OrderingError", PyExc_ValueError);

  py::class_<Tile>(m, "Tile")
      .def(py::init<int, int, int, int>(), py::arg("row_lo"), py::arg("row_hi"), py::arg("col_lo"),
           py::arg("col_hi"))
      .def_readwrite("row_lo", &Tile::row_lo)
      .def_readwrite("row_hi", &Tile::row_hi)
      .def_readwrite("col_lo", &Tile::col_lo)
      .def_readwrite("col_hi", &Tile::col_hi)
      .def_property_readonly("n_rows", &Tile::n_rows)
      .def_property_readonly("n_cols", &Tile::n_cols)
      .def_property_readonly("area", &Tile::area)
      .def("contains", &Tile::contains)
      .def("covers", &Tile::covers)
      .def("intersects", &Tile::intersects)
      .def("as_tuple", [](const Tile& t) { return py::make_tuple(t.row_lo, t.row_hi, t.col_lo, t.col_hi); })
      .def(py::self == py::self)
      .def("__repr__", &repr);
  m.def("jaccard", &jaccard);

  py::class_<BinaryMatrix>(m, "BinaryMatrix")
      .def(py::init(&from_array), py::arg("array"))
      .def_static("zeros", &BinaryMatrix::zeros)
      .def_property_readonly("n_rows", &BinaryMatrix::n_rows)
      .def_property_readonly("n_cols", &BinaryMatrix::n_cols)
      .def_property_readonly("shape", [](const BinaryMatrix& d) { return py::make_tuple(d.n_rows(), d.n_cols()); })
      .def("at", &BinaryMatrix::at)
      .def("total_ones", &BinaryMatrix::total_ones)
      .def("rect_ones", &BinaryMatrix::rect_ones)
      .def("transposed", &BinaryMatrix::transposed)
      .def("to_dense", &BinaryMatrix::to_dense)
      .def("to_numpy", &to_array)
      .def(py::self == py::self);

  m.def("parse_dense", py::overload_cast<std::string_view>(&parse_dense), py::arg("text"));
  m.def("parse_sparse", py::overload_cast<std::string_view, std::optional<int>>(&parse_sparse), py::arg("text"),
        py::arg("n_cols") = py::none());

  m.def("scaled_entropy", py::overload_cast<Count, Count>(&scaled_entropy), py::arg("ones"), py::arg("zeroes"));
  m.def("tile_description_length", &tile_description_length, py::arg("child"), py::arg("parent"));

  py::class_<TileTree>(m, "TileTree")
      .def(py::init<const BinaryMatrix&>())
      .def_property_readonly("n_rows", &TileTree::n_rows)
      .def_property_readonly("n_cols", &TileTree::n_cols)
      .def("__len__", &TileTree::size)
      .def("tile", &TileTree::tile)
      .def("parent", &TileTree::parent)
      .def("children", [](const TileTree& t, NodeId x) {
        const auto c = t.children(x);
        return std::vector<NodeId>(c.begin(), c.end());
      })
      .def("counts", [](const TileTree& t, NodeId x) {
        const CountPair c = t.counts(x);
        return py::make_tuple(c.ones, c.zeroes);
      })
      .def("post_order", &TileTree::post_order)
      .def("add_child",
           [](TileTree& t, NodeId x, const Tile& y, const BinaryMatrix& d) {
             const auto ins = t.add_child(x, y, d);
             return py::make_tuple(ins.node, py::make_tuple(ins.claimed.ones, ins.claimed.zeroes));
           })
      .def("serialize", [](const TileTree& t) { return serialize(t); })
      .def_static("deserialize", [](std::string_view text) { return deserialize(text); })
      .def(py::self == py::self);

  m.def("tree_total_length", &tree_total_length, py::arg("data"), py::arg("tree"));
  m.def("baseline_length", &baseline_length, py::arg("data"));
  m.def("relative_compression", py::overload_cast<const BinaryMatrix&, const TileTree&>(&relative_compression),
        py::arg("data"), py::arg("tree"));

  auto to_vectors = [](std::vector<Count> p, std::vector<Count> n) { return CountVectors(std::move(p), std::move(n)); };
  auto scan_tuple = [](const ScanResult& r) -> py::object {
    if (!r.interval) return py::none();
    return py::make_tuple(r.interval->lo, r.interval->hi, r.cost);
  };
  m.def(
      "scan",
      [=](std::vector<Count> p, std::vector<Count> n, Count o, Count z) {
        return scan_tuple(scan(to_vectors(std::move(p), std::move(n)), o, z));
      },
      py::arg("p"), py::arg("n"), py::arg("o"), py::arg("z"),
      "Best interval (lo, hi, cost) strictly denser than o/(o+z), or None.");
  m.def(
      "naive_scan",
      [=](std::vector<Count> p, std::vector<Count> n, Count o, Count z) {
        return scan_tuple(reference::naive_scan(to_vectors(std::move(p), std::move(n)), o, z));
      },
      py::arg("p"), py::arg("n"), py::arg("o"), py::arg("z"));

  auto search_dict = [](const SubtileSearchResult& r) {
    py::dict d;
    d["tile"] = r.tile ? py::cast(*r.tile) : py::none();
    d["delta"] = r.delta;
    d["polarity"] = std::string(to_string(r.polarity));
    return d;
  };
  m.def(
      "find_tile",
      [=](const BinaryMatrix& d, const TileTree& t, NodeId x, const std::string& mode, Bits min_gain, int threads) {
        const FindTileOptions opts{parse_mode(mode), min_gain, threads};
        SubtileSearchResult r;
        {
          py::gil_scoped_release release;
          r = find_tile(d, t, x, opts);
        }
        return search_dict(r);
      },
      py::arg("data"), py::arg("tree"), py::arg("node") = 0, py::arg("mode") = "overlap",
      py::arg("min_gain") = kDefaultMinGain, py::arg("threads") = 1);
  m.def(
      "naive_find_tile",
      [=](const BinaryMatrix& d, const TileTree& t, NodeId x, const std::string& mode, Bits min_gain) {
        return search_dict(reference::naive_find_tile(d, t, x, parse_mode(mode), min_gain));
      },
      py::arg("data"), py::arg("tree"), py::arg("node") = 0, py::arg("mode") = "overlap",
      py::arg("min_gain") = kDefaultMinGain);

  m.def(
      "mine",
      [](const BinaryMatrix& d, const std::string& mode, const std::string& strategy, std::optional<int> max_tiles,
         Bits min_gain, int threads) {
        MinerConfig cfg;
        cfg.mode = parse_mode(mode);
        cfg.strategy = parse_strategy(strategy);
        cfg.max_tiles = max_tiles;
        cfg.min_gain = min_gain;
        cfg.threads = threads;
        MiningResult r;
        {
          py::gil_scoped_release release;
          r = mine(d, cfg);
        }
        py::dict out;
        out["tree"] = std::move(r.tree);
        out["total_bits"] = r.total_bits;
        out["baseline_bits"] = r.baseline_bits;
        out["l_percent"] = r.l_percent;
        py::list steps;
        for (const auto& s : r.steps) steps.append(step_dict(s));
        out["steps"] = steps;
        return out;
      },
      py::arg("data"), py::arg("mode") = "overlap", py::arg("strategy") = "greedy",
      py::arg("max_tiles") = py::none(), py::arg("min_gain") = kDefaultMinGain, py::arg("threads") = 1);

  py::class_<OrderingResult>(m, "OrderingResult")
      .def_readonly("row_perm", &OrderingResult::row_perm)
      .def_readonly("col_perm", &OrderingResult::col_perm)
      .def_readonly("row_scores", &OrderingResult::row_scores)
      .def_readonly("col_scores", &OrderingResult::col_scores)
      .def_readonly("iterations", &OrderingResult::iterations)
      .def_readonly("converged", &OrderingResult::converged)
      .def_readonly("degenerate", &OrderingResult::degenerate);
  m.def("spectral_order", [](const BinaryMatrix& d) { return spectral_order(d); }, py::arg("data"));
  m.def("apply_permutation", &apply_permutation, py::arg("data"), py::arg("ordering"));

  m.def(
      "render_svg",
      [](const BinaryMatrix& d, const TileTree& t, int cell_size, bool show_ones) {
        RenderOptions o;
        o.cell_size = cell_size;
        o.show_ones = show_ones;
        return render_svg(d, t, o);
      },
      py::arg("data"), py::arg("tree"), py::arg("cell_size") = 4, py::arg("show_ones") = true);

  m.def(
      "generate_planted",
      [](int n_rows, int n_cols, std::uint64_t seed, const std::vector<std::pair<Tile, double>>& layers) {
        reference::PlantedSpec s{n_rows, n_cols, seed, {}};
        for (const auto& [t, f] : layers) s.layers.push_back({t, f});
        return reference::generate_planted(s);
      },
      py::arg("n_rows"), py::arg("n_cols"), py::arg("seed"), py::arg("layers"));
  m.def(
      "mondrian",
      [](std::uint64_t seed) {
        const auto spec = reference::mondrian_spec(seed);
        std::vector<std::pair<Tile, double>> layers;
        for (const auto& l : spec.layers) layers.emplace_back(l.rect, l.density);
        return py::make_tuple(reference::generate_planted(spec), layers);
      },
      py::arg("seed") = 1, "The built-in crossing-bars layout: (matrix, [(rect, density), ...]).");
}
