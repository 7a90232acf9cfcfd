#include "mln/bench/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "mln/rng.hpp"

namespace mln::bench {

std::vector<double> Decay::sigmas(std::size_t n) const {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double idx = static_cast<double>(i + 1);
    s[i] = kind == Kind::exponential ? std::pow(value, idx) : std::pow(idx, -value);
  }
  return s;
}

DenseTensor cp_superdiag(std::span<const double> sigmas, std::span<const Matrix> factors) {
  const std::size_t n = sigmas.size();
  const std::size_t d = factors.size();
  if (n == 0 || d == 0) throw DimensionError("cp_superdiag needs at least one sigma and one factor");
  for (const Matrix& q : factors) {
    if (static_cast<std::size_t>(q.cols()) != n) throw DimensionError("cp_superdiag factor width must equal sigmas");
  }
  DenseTensor s(Dims(d, n));
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    s(idx) = sigmas[i];
  }
  return multi_mode_product(s, factors);
}

DenseTensor cp_superdiag(std::size_t n, std::size_t d, const Decay& decay, std::uint64_t seed) {
  std::vector<Matrix> qs;
  qs.reserve(d);
  for (std::size_t k = 0; k < d; ++k) qs.push_back(haar_orthogonal(n, seed, stream_id(StreamRole::generator, k)));
  const std::vector<double> sigmas = decay.sigmas(n);
  return cp_superdiag(sigmas, qs);
}

DenseTensor hilbert(std::size_t d, std::size_t n) {
  if (d == 0 || n == 0) throw DimensionError("hilbert needs d >= 1 and n >= 1");
  DenseTensor t(Dims(d, n));
  std::vector<std::size_t> idx(d, 0);
  auto values = t.values();
  for (std::size_t lin = 0; lin < values.size(); ++lin) {
    std::size_t sum = 0;
    for (std::size_t v : idx) sum += v;
    // 0-based indices: sum_t (j_t + 1) - (d - 1) = sum_t j_t + 1.
    values[lin] = 1.0 / static_cast<double>(sum + 1);
    for (std::size_t k = 0; k < d && ++idx[k] == n; ++k) idx[k] = 0;
  }
  return t;
}

DenseTensor random_lowrank(const Dims& dims, const Dims& ranks, std::uint64_t seed) {
  if (dims.size() != ranks.size()) throw DimensionError("random_lowrank: dims and ranks differ in length");
  const Matrix core = gaussian_matrix(product(ranks), 1, seed, stream_id(StreamRole::generator, 0));
  DenseTensor c(ranks, std::vector<double>(core.data(), core.data() + core.size()));
  std::vector<Matrix> factors;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    factors.push_back(gaussian_matrix(dims[k], ranks[k], seed, stream_id(StreamRole::generator, k + 1)));
  }
  return multi_mode_product(c, std::span<const Matrix>(factors));
}

AdversarialCase adversarial(std::uint64_t seed, const AdversarialOptions& opt) {
  if (opt.identity_block >= opt.n) throw DimensionError("adversarial: identity block must be smaller than n");
  const std::size_t rest = opt.n - opt.identity_block;
  Matrix q = Matrix::Identity(opt.n, opt.n);
  q.bottomRightCorner(rest, rest) = haar_orthogonal(rest, seed, stream_id(StreamRole::generator, 0));

  AdversarialCase c;
  c.sigmas = Decay::exponential(opt.rate).sigmas(opt.n);
  const std::vector<Matrix> qs(opt.d, q);
  c.tensor = cp_superdiag(c.sigmas, qs);

  c.x.kind = SketchKind::srht;
  c.x.rows = static_cast<std::size_t>(std::pow(static_cast<double>(opt.n), static_cast<double>(opt.d - 1)) + 0.5);
  c.x.cols = opt.rank;
  c.x.seed = seed;
  c.x.stream = stream_id(StreamRole::sketch_x, 0);
  c.y.kind = SketchKind::srht;
  c.y.rows = opt.n;
  c.y.cols = opt.rank + opt.oversample;
  c.y.seed = seed;
  c.y.stream = stream_id(StreamRole::sketch_y, 0);
  return c;
}

}  // namespace mln::bench
