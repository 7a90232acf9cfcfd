#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls the library routine it is checking.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mln/sketch.hpp"
#include "mln/tensor.hpp"

namespace oracle {

using mln::Dims;
using mln::Matrix;
using mln::Vector;

// Mode-k unfolding straight from the index formula: column index is
// sum_{j != k} i_j * prod_{m < j, m != k} n_m.
inline Matrix unfold_by_index(const mln::DenseTensor& t, std::size_t k) {
  const Dims& dims = t.dims();
  const std::size_t d = dims.size();
  std::size_t cols = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (j != k) cols *= dims[j];
  }
  Matrix out(dims[k], cols);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    std::size_t rem = lin;
    for (std::size_t j = 0; j < d; ++j) {
      idx[j] = rem % dims[j];
      rem /= dims[j];
    }
    std::size_t col = 0, stride = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == k) continue;
      col += idx[j] * stride;
      stride *= dims[j];
    }
    out(idx[k], col) = t.values()[lin];
  }
  return out;
}

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = n(gen);
  }
  return m;
}

inline Matrix orthonormal_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rows, cols, gen));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

inline mln::DenseTensor random_tensor(const Dims& dims, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  mln::DenseTensor t(dims);
  for (double& v : t.values()) v = n(gen);
  return t;
}

// A matrix with prescribed singular values and its exact eps-pseudoinverse,
// built from the factors rather than from a decomposition.
struct PinvCase {
  Matrix a;
  Matrix expected;
  double eps = 0.0;
};

// Kept singular values are log-uniform in [1e-2, 10]; dropped ones sit in
// [1e-7, 1e-4] so nothing lies near the cutoff eps = 1e-3.
inline PinvCase pinv_case(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> dim(1, 14);
  const Eigen::Index m = dim(gen), n = dim(gen);
  const Eigen::Index p = std::min(m, n);
  std::uniform_int_distribution<Eigen::Index> keep_dist(0, p);
  const Eigen::Index keep = keep_dist(gen);
  std::uniform_real_distribution<double> kept_exp(-2.0, 1.0), dropped_exp(-7.0, -4.0);
  Vector s(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    s(i) = std::pow(10.0, i < keep ? kept_exp(gen) : dropped_exp(gen));
  }
  if (p > 0 && std::uniform_int_distribution<int>(0, 4)(gen) == 0) s(p - 1) = 0.0;
  const Matrix u = orthonormal_columns(m, p, gen);
  const Matrix v = orthonormal_columns(n, p, gen);
  PinvCase c;
  c.eps = 1e-3;
  c.a = u * s.asDiagonal() * v.transpose();
  c.expected = Matrix::Zero(n, m);
  for (Eigen::Index i = 0; i < p; ++i) {
    if (s(i) > c.eps) c.expected += v.col(i) * u.col(i).transpose() / s(i);
  }
  return c;
}

// Dense Kronecker product of two column vectors, b index fastest.
inline Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Kronecker product of matrices, last factor varying fastest in row and
// column index: mats = {M_0, ..., M_p} gives M_p (x) ... (x) M_0.
inline Matrix kron_all_reversed(const std::vector<Matrix>& mats) {
  Matrix out = Matrix::Ones(1, 1);
  for (const Matrix& m : mats) {
    Matrix next(out.rows() * m.rows(), out.cols() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) = m(i, j) * out;
      }
    }
    out = std::move(next);
  }
  return out;
}

// Relative Frobenius distance, with the reference in the denominator.
inline double rel_diff(const Matrix& got, const Matrix& ref) {
  const double n = ref.norm();
  return n > 0.0 ? (got - ref).norm() / n : (got - ref).norm();
}

// A x_k M_k for every k via the unfolding identity
// (A x_k M_k)_k = M_k A_k (M_{d-1} (x) ... (x) M_0 without k)^T.
inline mln::DenseTensor all_mode_product(const mln::DenseTensor& a, const std::vector<Matrix>& ms) {
  std::vector<Matrix> others;
  for (std::size_t j = 1; j < ms.size(); ++j) others.push_back(ms[j]);
  const Matrix m0 = ms[0] * unfold_by_index(a, 0) * kron_all_reversed(others).transpose();
  Dims out_dims;
  for (const Matrix& m : ms) out_dims.push_back(m.rows());
  return mln::DenseTensor(out_dims, std::vector<double>(m0.data(), m0.data() + m0.size()));
}

// B (M)^+ from Eigen's Jacobi SVD with the usual max(m, n) * eps * sigma_max
// cutoff.
inline Matrix times_pinv_jacobi(const Matrix& b, const Matrix& m, double cutoff = -1.0) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (cutoff < 0.0) {
    cutoff = static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon() *
             (s.size() ? s(0) : 0.0);
  }
  Matrix out = Matrix::Zero(b.rows(), m.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) out += (b * svd.matrixV().col(i)) * svd.matrixU().col(i).transpose() / s(i);
  }
  return out;
}

}  // namespace oracle
