#pragma once

#include <vector>

#include "mln/tensor.hpp"

namespace mln {

// core x_1 factors[0] x_2 ... x_d factors[d-1]; factor k is dims[k] x core.dim(k).
struct TuckerTensor {
  DenseTensor core{Dims{1}};
  std::vector<Matrix> factors;

  std::size_t order() const { return factors.size(); }
  Dims dims() const;
  Dims ranks() const { return core.dims(); }
};

// Throws DimensionError unless the factor shapes conform to the core.
void validate(const TuckerTensor& t);

// Full tensor; modes are multiplied in ascending order of factor size.
DenseTensor densify(const TuckerTensor& t);

// ||densify(t)||_F from the core and the factor Gram matrices, without
// densifying. Reduces to ||core||_F when every factor has orthonormal columns.
double frobenius_norm(const TuckerTensor& t);

// True when every factor satisfies ||U^T U - I||_F <= tol.
bool has_orthonormal_factors(const TuckerTensor& t, double tol = 1e-12);

}  // namespace mln
