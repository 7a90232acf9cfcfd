#include "mln/baselines.hpp"

#include <string>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "mln/rng.hpp"
#include "mln/sketch.hpp"

namespace mln {

namespace {

void check_ranks(const DenseTensor& a, std::span<const std::size_t> ranks) {
  if (ranks.size() != a.order()) {
    throw RankError("expected " + std::to_string(a.order()) + " ranks, got " + std::to_string(ranks.size()));
  }
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    if (ranks[k] == 0 || ranks[k] > a.dim(k) || ranks[k] > product_excluding(a.dims(), k)) {
      throw RankError("mode " + std::to_string(k) + ": rank " + std::to_string(ranks[k]) + " is infeasible");
    }
  }
}

Matrix leading_left_vectors(const Matrix& m, std::size_t r) { return svd(m).u.leftCols(r); }

TuckerTensor project_onto(const DenseTensor& a, std::vector<Matrix> factors) {
  std::vector<Matrix> uts;
  uts.reserve(factors.size());
  for (const Matrix& u : factors) uts.push_back(u.transpose());
  TuckerTensor t;
  t.core = multi_mode_product(a, std::span<const Matrix>(uts));
  t.factors = std::move(factors);
  return t;
}

}  // namespace

TuckerTensor hosvd(const DenseTensor& a, std::span<const std::size_t> ranks) {
  check_ranks(a, ranks);
  std::vector<Matrix> factors;
  for (std::size_t k = 0; k < a.order(); ++k) factors.push_back(leading_left_vectors(mode_unfold(a, k), ranks[k]));
  return project_onto(a, std::move(factors));
}

TuckerTensor rhosvd(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed) {
  check_ranks(a, ranks);
  std::vector<Matrix> factors;
  for (std::size_t k = 0; k < a.order(); ++k) {
    const Matrix x =
        gaussian_matrix(product_excluding(a.dims(), k), ranks[k], seed, stream_id(StreamRole::baseline, k));
    factors.push_back(leading_left_vectors(unfolding_times(a, k, x), ranks[k]));
  }
  return project_onto(a, std::move(factors));
}

TuckerTensor rsthosvd(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed) {
  check_ranks(a, ranks);
  TuckerTensor t;
  DenseTensor b = a;
  for (std::size_t k = 0; k < a.order(); ++k) {
    const Matrix x =
        gaussian_matrix(product_excluding(b.dims(), k), ranks[k], seed, stream_id(StreamRole::baseline, k));
    Matrix u = leading_left_vectors(unfolding_times(b, k, x), ranks[k]);
    b = mode_product(b, k, u.transpose());
    t.factors.push_back(std::move(u));
  }
  t.core = std::move(b);
  return t;
}

}  // namespace mln
