#include "mln/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "mln/errors.hpp"
#include "mln/simd.hpp"

namespace mln {

namespace {

struct ModeLayout {
  std::size_t left;   // product of dims before k
  std::size_t extent; // dims[k]
  std::size_t right;  // product of dims after k
};

ModeLayout layout(const Dims& dims, std::size_t k) {
  ModeLayout l{1, dims[k], 1};
  for (std::size_t s = 0; s < k; ++s) l.left *= dims[s];
  for (std::size_t s = k + 1; s < dims.size(); ++s) l.right *= dims[s];
  return l;
}

void check_mode(const Dims& dims, std::size_t k) {
  if (k >= dims.size()) {
    throw ModeIndexError("mode " + std::to_string(k) + " out of range for order-" +
                         std::to_string(dims.size()) + " tensor");
  }
}

using ConstMap = Eigen::Map<const Matrix>;
using MutMap = Eigen::Map<Matrix>;

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t product_excluding(std::span<const std::size_t> dims, std::size_t k) {
  std::size_t p = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (s != k) p *= dims[s];
  }
  return p;
}

DenseTensor::DenseTensor(Dims dims) : DenseTensor(dims, std::vector<double>(product(dims), 0.0)) {}

DenseTensor::DenseTensor(Dims dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  if (dims_.empty()) throw DimensionError("tensor order must be at least 1");
  if (std::find(dims_.begin(), dims_.end(), std::size_t{0}) != dims_.end()) {
    throw DimensionError("tensor dimensions must be positive");
  }
  if (values_.size() != product(dims_)) {
    throw DimensionError("tensor has " + std::to_string(values_.size()) + " values, dims require " +
                         std::to_string(product(dims_)));
  }
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw DimensionError("index arity does not match tensor order");
  std::size_t off = 0;
  std::size_t stride = 1;
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    if (index[t] >= dims_[t]) throw DimensionError("index out of range");
    off += index[t] * stride;
    stride *= dims_[t];
  }
  return off;
}

Eigen::Map<const Matrix> DenseTensor::as_mode0_matrix() const {
  return ConstMap(values_.data(), idx(dims_[0]), idx(values_.size() / dims_[0]));
}

Matrix mode_unfold(const DenseTensor& t, std::size_t k) {
  check_mode(t.dims(), k);
  const ModeLayout l = layout(t.dims(), k);
  const double* src = t.values().data();
  if (l.left == 1) return ConstMap(src, idx(l.extent), idx(l.right));

  Matrix out(idx(l.extent), idx(l.left * l.right));
  for (std::size_t r = 0; r < l.right; ++r) {
    ConstMap slab(src + l.left * l.extent * r, idx(l.left), idx(l.extent));
    out.middleCols(idx(l.left * r), idx(l.left)) = slab.transpose();
  }
  return out;
}

DenseTensor mode_fold(const Matrix& m, std::size_t k, const Dims& dims) {
  check_mode(dims, k);
  const ModeLayout l = layout(dims, k);
  if (static_cast<std::size_t>(m.rows()) != l.extent ||
      static_cast<std::size_t>(m.cols()) != l.left * l.right) {
    throw DimensionError("mode_fold: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", dims require " + std::to_string(l.extent) +
                         "x" + std::to_string(l.left * l.right));
  }
  DenseTensor out(dims);
  double* dst = out.values().data();
  if (l.left == 1) {
    MutMap(dst, m.rows(), m.cols()) = m;
    return out;
  }
  for (std::size_t r = 0; r < l.right; ++r) {
    MutMap slab(dst + l.left * l.extent * r, idx(l.left), idx(l.extent));
    slab = m.middleCols(idx(l.left * r), idx(l.left)).transpose();
  }
  return out;
}

DenseTensor mode_product(const DenseTensor& t, std::size_t k, const Matrix& x) {
  check_mode(t.dims(), k);
  const ModeLayout l = layout(t.dims(), k);
  if (static_cast<std::size_t>(x.cols()) != l.extent) {
    throw DimensionError("mode_product: matrix has " + std::to_string(x.cols()) +
                         " columns, mode " + std::to_string(k) + " has extent " +
                         std::to_string(l.extent));
  }
  Dims out_dims = t.dims();
  out_dims[k] = static_cast<std::size_t>(x.rows());
  DenseTensor out(out_dims);
  const std::size_t j = out_dims[k];
  const double* src = t.values().data();
  double* dst = out.values().data();
  if (l.left == 1) {
    MutMap(dst, idx(j), idx(l.right)).noalias() = x * ConstMap(src, idx(l.extent), idx(l.right));
    return out;
  }
  const Matrix xt = x.transpose();
  for (std::size_t r = 0; r < l.right; ++r) {
    ConstMap in(src + l.left * l.extent * r, idx(l.left), idx(l.extent));
    MutMap res(dst + l.left * j * r, idx(l.left), idx(j));
    res.noalias() = in * xt;
  }
  return out;
}

DenseTensor multi_mode_product(const DenseTensor& t, std::span<const Matrix* const> mats) {
  if (mats.size() != t.order()) throw DimensionError("multi_mode_product: need one slot per mode");
  std::vector<std::size_t> order(t.order());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t.dim(a) < t.dim(b); });
  DenseTensor cur = t;
  for (std::size_t k : order) {
    if (mats[k] != nullptr) cur = mode_product(cur, k, *mats[k]);
  }
  return cur;
}

DenseTensor multi_mode_product(const DenseTensor& t, std::span<const Matrix> mats) {
  std::vector<const Matrix*> ptrs;
  ptrs.reserve(mats.size());
  for (const Matrix& m : mats) ptrs.push_back(&m);
  return multi_mode_product(t, std::span<const Matrix* const>(ptrs));
}

Matrix unfolding_times(const DenseTensor& t, std::size_t k, const Matrix& x) {
  check_mode(t.dims(), k);
  const ModeLayout l = layout(t.dims(), k);
  if (static_cast<std::size_t>(x.rows()) != l.left * l.right) {
    throw DimensionError("unfolding_times: sketch has " + std::to_string(x.rows()) +
                         " rows, unfolding has " + std::to_string(l.left * l.right) + " columns");
  }
  const double* src = t.values().data();
  if (l.left == 1) return ConstMap(src, idx(l.extent), idx(l.right)) * x;

  Matrix out = Matrix::Zero(idx(l.extent), x.cols());
  for (std::size_t r = 0; r < l.right; ++r) {
    ConstMap slab(src + l.left * l.extent * r, idx(l.left), idx(l.extent));
    out.noalias() += slab.transpose() * x.middleRows(idx(l.left * r), idx(l.left));
  }
  return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  Matrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index c = 0; c < bc; ++c) {
      double* dst_col = out.col(j * bc + c).data();
      const double* src_col = b.col(c).data();
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        simd::scaled_copy(a(i, j), {src_col, static_cast<std::size_t>(br)},
                          {dst_col + i * br, static_cast<std::size_t>(br)});
      }
    }
  }
  return out;
}

Matrix kron_chain_excluding(std::span<const Matrix> mats, std::size_t k) {
  if (mats.size() < 2) throw DimensionError("kron_chain_excluding needs at least two factors");
  if (k >= mats.size()) throw ModeIndexError("kron_chain_excluding: mode out of range");
  Matrix out;
  bool first = true;
  for (std::size_t s = mats.size(); s-- > 0;) {
    if (s == k) continue;
    if (first) {
      out = mats[s];
      first = false;
    } else {
      out = kronecker(out, mats[s]);
    }
  }
  return out;
}

double frobenius_norm(const DenseTensor& t) { return std::sqrt(simd::sum_squares(t.values())); }

double frobenius_distance(const DenseTensor& a, const DenseTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("frobenius_distance: dims differ");
  return std::sqrt(simd::squared_distance(a.values(), b.values()));
}

}  // namespace mln
