#pragma once

// Matrix sketching methods: HMT rangefinder and (stabilized) generalized
// Nystrom, in factored form.

#include <cstdint>
#include <string>
#include <vector>

#include "mln/tensor.hpp"

namespace mln {

// left * right, never formed unless asked for.
struct LowRankMatrix {
  Matrix left;   // m x k
  Matrix right;  // k x n

  Matrix dense() const { return left * right; }
};

// orth(A X) for a Gaussian X with r + ell columns. Requires ell >= 2 and
// r + ell <= min(rows, cols).
Matrix hmt_rangefinder(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed);

// Q (Q^T A) with Q from hmt_rangefinder.
LowRankMatrix hmt_approximate(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed);

struct GnResult {
  LowRankMatrix approx;
  bool stabilized = false;  // true when the eps-pseudoinverse path was used
  std::vector<std::string> warnings;
};

// A X (Y^T A X)^+ Y^T A with X (n x r) and Y (m x (r + ell)) Gaussian.
// Plain: left = (A X) R^{-1}, right = Z^T (Y^T A) from Y^T A X = Z R.
// Stabilized: left = (A X) (Y^T A X)^+_eps, right = Y^T A.
// eps < 0 selects 10 u ||A||_F. A numerically singular R switches to the
// stabilized path and records a warning.
GnResult gn_approximate(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed, bool stabilized = false,
                        double eps = -1.0);

// Same with caller-supplied sketches; y needs at least as many columns as x
// on the plain path.
GnResult gn_from_sketches(const Matrix& a, const Matrix& x, const Matrix& y, bool stabilized = false,
                          double eps = -1.0);

}  // namespace mln
