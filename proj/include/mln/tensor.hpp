#pragma once

// Dense tensors stored in generalized column-major order (mode 0 varies
// fastest), with mode-k matricization, folding, mode-k products and
// Kronecker helpers. Modes are 0-based throughout the C++ API.

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace mln {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

std::size_t product(std::span<const std::size_t> dims);
std::size_t product_excluding(std::span<const std::size_t> dims, std::size_t k);

class DenseTensor {
 public:
  // Zero-filled tensor.
  explicit DenseTensor(Dims dims);
  DenseTensor(Dims dims, std::vector<double> values);

  const Dims& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_[k]; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Linear offset of a multi-index (0-based).
  std::size_t offset(std::span<const std::size_t> index) const;

  double operator()(std::span<const std::size_t> index) const { return values_[offset(index)]; }
  double& operator()(std::span<const std::size_t> index) { return values_[offset(index)]; }
  double operator()(std::initializer_list<std::size_t> index) const {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
  }
  double& operator()(std::initializer_list<std::size_t> index) {
    return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
  }

  // Column-major view of the tensor as a dims[0] x (rest) matrix (the mode-0
  // unfolding without a copy).
  Eigen::Map<const Matrix> as_mode0_matrix() const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  Dims dims_;
  std::vector<double> values_;
};

// Mode-k matricization: dims[k] rows, prod_{j != k} dims[j] columns, remaining
// indices linearized in ascending mode order with the lowest fastest.
Matrix mode_unfold(const DenseTensor& t, std::size_t k);

// Inverse of mode_unfold.
DenseTensor mode_fold(const Matrix& m, std::size_t k, const Dims& dims);

// t x_k x, where x has t.dim(k) columns.
DenseTensor mode_product(const DenseTensor& t, std::size_t k, const Matrix& x);

// Applies x_k for every non-null entry of mats; modes are visited in ascending
// order of t.dim(k) (ties by index).
DenseTensor multi_mode_product(const DenseTensor& t, std::span<const Matrix* const> mats);
DenseTensor multi_mode_product(const DenseTensor& t, std::span<const Matrix> mats);

// A_k * x without forming A_k; x has prod_{j != k} dims[j] rows.
Matrix unfolding_times(const DenseTensor& t, std::size_t k, const Matrix& x);

Matrix kronecker(const Matrix& a, const Matrix& b);

// X_{d-1} (x) ... (x) X_{k+1} (x) X_{k-1} (x) ... (x) X_0.
Matrix kron_chain_excluding(std::span<const Matrix> mats, std::size_t k);

double frobenius_norm(const DenseTensor& t);
double frobenius_distance(const DenseTensor& a, const DenseTensor& b);

}  // namespace mln
