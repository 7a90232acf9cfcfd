#include "mln/matrix_sketch.hpp"

#include <algorithm>
#include <string>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "mln/rng.hpp"
#include "mln/sketch.hpp"

namespace mln {

namespace {

void check_rank(const Matrix& a, std::size_t r, std::size_t ell) {
  const auto limit = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  if (r == 0 || r + ell > limit) {
    throw RankError("rank " + std::to_string(r) + " plus oversampling " + std::to_string(ell) +
                    " exceeds min dimension " + std::to_string(limit));
  }
}

}  // namespace

Matrix hmt_rangefinder(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed) {
  if (ell < 2) throw RankError("HMT rangefinder needs oversampling >= 2");
  check_rank(a, r, ell);
  const Matrix x = gaussian_matrix(a.cols(), r + ell, seed, stream_id(StreamRole::sketch_x, 0));
  return orth(a * x);
}

LowRankMatrix hmt_approximate(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed) {
  Matrix q = hmt_rangefinder(a, r, ell, seed);
  Matrix right = q.transpose() * a;
  return {std::move(q), std::move(right)};
}

GnResult gn_approximate(const Matrix& a, std::size_t r, std::size_t ell, std::uint64_t seed, bool stabilized,
                        double eps) {
  check_rank(a, r, ell);
  const Matrix x = gaussian_matrix(a.cols(), r, seed, stream_id(StreamRole::sketch_x, 0));
  const Matrix y = gaussian_matrix(a.rows(), r + ell, seed, stream_id(StreamRole::sketch_y, 0));
  return gn_from_sketches(a, x, y, stabilized, eps);
}

GnResult gn_from_sketches(const Matrix& a, const Matrix& x, const Matrix& y, bool stabilized, double eps) {
  if (x.rows() != a.cols() || y.rows() != a.rows()) {
    throw DimensionError("sketch shapes do not conform to a " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix");
  }
  if (eps < 0.0) eps = 10.0 * unit_roundoff * a.norm();

  GnResult result;
  const Matrix ax = a * x;
  const Matrix yta = y.transpose() * a;
  const Matrix ytax = yta * x;

  if (!stabilized) {
    if (y.cols() < x.cols()) throw RankError("plain generalized Nystrom needs Y with at least as many columns as X");
    const QRFactors qr = economy_qr(ytax);
    try {
      result.approx.left = solve_upper_triangular(qr.r, ax);
      result.approx.right = qr.q.transpose() * yta;
      return result;
    } catch (const SingularTriangularError& e) {
      result.warnings.push_back(std::string("singular triangular factor, using eps-pseudoinverse: ") + e.what());
    }
  }
  result.stabilized = true;
  result.approx.left = times_eps_pseudoinverse(ax, ytax, eps);
  result.approx.right = yta;
  return result;
}

}  // namespace mln
