#pragma once

#include <vector>

namespace stijl {

class BinaryMatrix;

struct OrderingResult {
  std::vector<int> row_perm;  // old 0-based row index -> new 0-based position
  std::vector<int> col_perm;
  std::vector<double> row_scores;  // dominant left singular vector
  std::vector<double> col_scores;  // dominant right singular vector
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // all-zero input; identity permutations
};

struct SpectralOptions {
  double tolerance = 1e-9;
  int max_iterations = 1000;
};

// Orders rows and columns by the dominant singular pair of the raw 0/1
// matrix, found by alternating power iteration. Larger scores come first;
// ties keep the original order. The pair's sign is fixed so that the
// largest-magnitude row score is positive.
//
// Throws OrderingError on an all-zero matrix; use spectral_order_or_identity
// to get identity permutations flagged `degenerate` instead.
OrderingResult spectral_order(const BinaryMatrix& d, const SpectralOptions& opts = {});
OrderingResult spectral_order_or_identity(const BinaryMatrix& d, const SpectralOptions& opts = {});

// result(row_perm[i], col_perm[j]) = d(i, j). Throws std::invalid_argument on
// a size mismatch or a non-bijective permutation.
BinaryMatrix apply_permutation(const BinaryMatrix& d, const OrderingResult& o);

std::vector<int> inverse_permutation(const std::vector<int>& perm);

}  // namespace stijl
