#include "mln/tucker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mln/errors.hpp"

namespace mln {

Dims TuckerTensor::dims() const {
  Dims d(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) d[k] = static_cast<std::size_t>(factors[k].rows());
  return d;
}

void validate(const TuckerTensor& t) {
  if (t.factors.size() != t.core.order()) {
    throw DimensionError("Tucker tensor has " + std::to_string(t.factors.size()) + " factors for an order-" +
                         std::to_string(t.core.order()) + " core");
  }
  for (std::size_t k = 0; k < t.factors.size(); ++k) {
    if (static_cast<std::size_t>(t.factors[k].cols()) != t.core.dim(k) || t.factors[k].rows() == 0) {
      throw DimensionError("Tucker factor " + std::to_string(k) + " is " + std::to_string(t.factors[k].rows()) +
                           "x" + std::to_string(t.factors[k].cols()) + ", core dim is " +
                           std::to_string(t.core.dim(k)));
    }
  }
}

DenseTensor densify(const TuckerTensor& t) {
  validate(t);
  return multi_mode_product(t.core, std::span<const Matrix>(t.factors));
}

bool has_orthonormal_factors(const TuckerTensor& t, double tol) {
  for (const Matrix& u : t.factors) {
    const Matrix gram = u.transpose() * u;
    if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > tol) return false;
  }
  return true;
}

double frobenius_norm(const TuckerTensor& t) {
  validate(t);
  if (has_orthonormal_factors(t)) return frobenius_norm(t.core);
  std::vector<Matrix> grams;
  grams.reserve(t.factors.size());
  for (const Matrix& u : t.factors) grams.push_back(u.transpose() * u);
  const DenseTensor g = multi_mode_product(t.core, std::span<const Matrix>(grams));
  double sq = 0.0;
  const auto c = t.core.values();
  const auto v = g.values();
  for (std::size_t i = 0; i < c.size(); ++i) sq += c[i] * v[i];
  return std::sqrt(std::max(sq, 0.0));
}

}  // namespace mln
