#pragma once

// Small dense kernels: economy QR, thin SVD, epsilon-truncated pseudoinverse,
// triangular right-solve and spectral norm. Backed by Eigen's Householder QR
// and divide-and-conquer SVD.

#include <cstdint>
#include <limits>

#include "mln/tensor.hpp"

namespace mln {

// Unit roundoff of IEEE double (half of machine epsilon).
inline constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;

struct QRFactors {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular with nonnegative diagonal
};

struct SVDFactors {
  Matrix u;  // rows x p
  Vector s;  // p = min(rows, cols), nonincreasing
  Matrix v;  // cols x p
};

// Householder QR without pivoting. Requires rows >= cols.
QRFactors economy_qr(const Matrix& m);

// Q factor of economy_qr.
Matrix orth(const Matrix& m);

// Orthonormal basis of the orthogonal complement of range(q), q with
// orthonormal columns, taken from a full QR. Returns rows x (rows - cols).
Matrix orthogonal_complement(const Matrix& q);

// Thin SVD. The first nonzero entry of every left singular vector is made
// nonnegative (and the matching right vector flipped with it).
SVDFactors svd(const Matrix& m);

// Singular values only.
Vector singular_values(const Matrix& m);

// V_1 S_1^{-1} U_1^T keeping only singular values strictly greater than eps.
Matrix eps_pseudoinverse(const Matrix& m, double eps);

// Moore-Penrose pseudoinverse with the usual numerical-rank cutoff
// max(rows, cols) * machine_epsilon * sigma_max.
Matrix pseudoinverse(const Matrix& m);

// b * eps_pseudoinverse(m, eps), evaluated as ((b V_1) S_1^{-1}) U_1^T. Forming
// the pseudoinverse first and multiplying afterwards loses accuracy when m is
// ill conditioned; this order keeps the intermediate b V_1 S_1^{-1} bounded.
Matrix times_eps_pseudoinverse(const Matrix& b, const Matrix& m, double eps);

// Same with the numerical-rank cutoff of pseudoinverse().
Matrix times_pseudoinverse(const Matrix& b, const Matrix& m);

// Solves X R = B for X (right-division by an upper-triangular R) by
// substitution. Throws SingularTriangularError when some |r_ii| is at most
// 1e2 * u * max_j |r_jj|.
Matrix solve_upper_triangular(const Matrix& r, const Matrix& b);

// Largest singular value: exact SVD when min(rows, cols) <= 1024, otherwise
// power iteration on m^T m (tolerance 1e-8, at most 200 iterations).
double spectral_norm(const Matrix& m);

// Uniformly random orthogonal n x n matrix from the QR of a Gaussian matrix.
Matrix haar_orthogonal(std::size_t n, std::uint64_t seed, std::uint64_t stream);

}  // namespace mln
