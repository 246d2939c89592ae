#include "stijl/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stijl/error.hpp"
#include "stijl/matrix.hpp"

namespace stijl {

namespace {

double normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return norm;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Position of each index after a stable sort by descending score. Scores are
// snapped to a 1e-9 relative grid first so round-off does not split ties.
std::vector<int> rank_descending(const std::vector<double>& scores) {
  double scale = 0.0;
  for (double s : scores) scale = std::max(scale, std::abs(s));
  std::vector<long long> snapped(scores.size(), 0);
  if (scale > 0.0) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      snapped[i] = std::llround(scores[i] / scale * 1e9);
    }
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return snapped[a] > snapped[b]; });
  std::vector<int> perm(scores.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) perm[order[pos]] = static_cast<int>(pos);
  return perm;
}

OrderingResult identity_order(const BinaryMatrix& d) {
  OrderingResult r;
  r.row_perm.resize(d.n_rows());
  r.col_perm.resize(d.n_cols());
  std::iota(r.row_perm.begin(), r.row_perm.end(), 0);
  std::iota(r.col_perm.begin(), r.col_perm.end(), 0);
  r.row_scores.assign(d.n_rows(), 0.0);
  r.col_scores.assign(d.n_cols(), 0.0);
  r.converged = true;
  r.degenerate = true;
  return r;
}

}  // namespace

OrderingResult spectral_order(const BinaryMatrix& d, const SpectralOptions& opts) {
  if (d.total_ones() == 0) throw OrderingError("cannot order an all-zero matrix");
  const int n = d.n_rows();
  const int m = d.n_cols();
  const auto cells = d.cells();

  std::vector<double> u(n), v(m), u_next(n), v_prev(m, 0.0);
  for (int i = 0; i < n; ++i) u[i] = 1.0 + 1e-6 * i;
  normalize(u);

  OrderingResult r;
  for (r.iterations = 1; r.iterations <= opts.max_iterations; ++r.iterations) {
    std::fill(v.begin(), v.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const auto* row = cells.data() + static_cast<std::size_t>(i) * m;
      for (int j = 0; j < m; ++j) {
        if (row[j]) v[j] += u[i];
      }
    }
    normalize(v);
    for (int i = 0; i < n; ++i) {
      const auto* row = cells.data() + static_cast<std::size_t>(i) * m;
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        if (row[j]) s += v[j];
      }
      u_next[i] = s;
    }
    normalize(u_next);
    const double du = max_abs_diff(u, u_next);
    const double dv = max_abs_diff(v, v_prev);
    u.swap(u_next);
    v_prev = v;
    if (du < opts.tolerance && dv < opts.tolerance) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, opts.max_iterations);

  const auto largest = std::max_element(u.begin(), u.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (*largest < 0.0) {
    for (double& x : u) x = -x;
    for (double& x : v) x = -x;
  }
  r.row_scores = u;
  r.col_scores = v;
  r.row_perm = rank_descending(u);
  r.col_perm = rank_descending(v);
  return r;
}

OrderingResult spectral_order_or_identity(const BinaryMatrix& d, const SpectralOptions& opts) {
  if (d.total_ones() == 0) return identity_order(d);
  return spectral_order(d, opts);
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inv[p] != -1) {
      throw std::invalid_argument("not a permutation");
    }
    inv[p] = static_cast<int>(i);
  }
  return inv;
}

BinaryMatrix apply_permutation(const BinaryMatrix& d, const OrderingResult& o) {
  if (o.row_perm.size() != static_cast<std::size_t>(d.n_rows()) ||
      o.col_perm.size() != static_cast<std::size_t>(d.n_cols())) {
    throw std::invalid_argument("permutation size does not match the matrix");
  }
  // Validates bijectivity.
  (void)inverse_permutation(o.row_perm);
  (void)inverse_permutation(o.col_perm);
  const int m = d.n_cols();
  std::vector<std::uint8_t> out(d.cells().size());
  for (int i = 0; i < d.n_rows(); ++i) {
    for (int j = 0; j < m; ++j) {
      out[static_cast<std::size_t>(o.row_perm[i]) * m + o.col_perm[j]] = d.at(i + 1, j + 1);
    }
  }
  return BinaryMatrix(d.n_rows(), m, std::move(out));
}

}  // namespace stijl
