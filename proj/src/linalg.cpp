#include "mln/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mln/errors.hpp"
#include "mln/sketch.hpp"

namespace mln {

namespace {

void fix_qr_signs(Matrix& q, Matrix& r) {
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) *= -1.0;
      q.col(j) *= -1.0;
    }
  }
}

void fix_svd_signs(SVDFactors& f) {
  for (Eigen::Index j = 0; j < f.u.cols(); ++j) {
    const double scale = f.u.col(j).cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Eigen::Index i = 0; i < f.u.rows(); ++i) {
      if (std::abs(f.u(i, j)) > 1e-10 * scale) {
        if (f.u(i, j) < 0.0) {
          f.u.col(j) *= -1.0;
          if (f.v.cols() > j) f.v.col(j) *= -1.0;
        }
        break;
      }
    }
  }
}

SVDFactors direct_svd(const Matrix& m, bool compute_v) {
  const unsigned opts = compute_v ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : Eigen::ComputeThinU;
  Eigen::BDCSVD<Matrix> dec(m, opts);
  SVDFactors f{dec.matrixU(), dec.singularValues(), compute_v ? Matrix(dec.matrixV()) : Matrix()};
  return f;
}

Eigen::Index kept(const SVDFactors& f, double cutoff) {
  Eigen::Index keep = 0;
  while (keep < f.s.size() && f.s(keep) > cutoff) ++keep;
  return keep;
}

Matrix truncated_inverse(const SVDFactors& f, double cutoff, Eigen::Index rows, Eigen::Index cols) {
  const Eigen::Index keep = kept(f, cutoff);
  if (keep == 0) return Matrix::Zero(cols, rows);
  const Vector inv = f.s.head(keep).cwiseInverse();
  return f.v.leftCols(keep) * inv.asDiagonal() * f.u.leftCols(keep).transpose();
}

Matrix times_truncated_inverse(const Matrix& b, const SVDFactors& f, double cutoff, Eigen::Index rows) {
  const Eigen::Index keep = kept(f, cutoff);
  if (keep == 0) return Matrix::Zero(b.rows(), rows);
  const Vector inv = f.s.head(keep).cwiseInverse();
  const Matrix scaled = (b * f.v.leftCols(keep)) * inv.asDiagonal();
  return scaled * f.u.leftCols(keep).transpose();
}

double numerical_rank_cutoff(const Matrix& m, const SVDFactors& f) {
  const double smax = f.s.size() > 0 ? f.s(0) : 0.0;
  return static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon() * smax;
}

}  // namespace

QRFactors economy_qr(const Matrix& m) {
  if (m.rows() < m.cols()) {
    throw DimensionError("economy_qr needs rows >= cols, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  QRFactors f;
  f.q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  f.r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  fix_qr_signs(f.q, f.r);
  return f;
}

Matrix orth(const Matrix& m) { return economy_qr(m).q; }

Matrix orthogonal_complement(const Matrix& q) {
  if (q.rows() < q.cols()) throw DimensionError("orthogonal_complement needs rows >= cols");
  Eigen::HouseholderQR<Matrix> qr(q);
  const Matrix full = qr.householderQ();
  return full.rightCols(q.rows() - q.cols());
}

SVDFactors svd(const Matrix& m) {
  SVDFactors f;
  if (m.rows() == 0 || m.cols() == 0) {
    f.u = Matrix(m.rows(), 0);
    f.v = Matrix(m.cols(), 0);
    f.s = Vector(0);
    return f;
  }
  // Strongly rectangular inputs go through a QR first so the SVD runs on a
  // square triangular factor.
  if (m.cols() > 2 * m.rows()) {
    Eigen::HouseholderQR<Matrix> qr(m.transpose());
    const Matrix r = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
    SVDFactors inner = direct_svd(r.transpose(), true);
    f.u = std::move(inner.u);
    f.s = std::move(inner.s);
    f.v = qr.householderQ() * (Matrix(m.cols(), m.rows()) << inner.v, Matrix::Zero(m.cols() - m.rows(), m.rows())).finished();
  } else if (m.rows() > 2 * m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    const Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    SVDFactors inner = direct_svd(r, true);
    f.u = qr.householderQ() * (Matrix(m.rows(), m.cols()) << inner.u, Matrix::Zero(m.rows() - m.cols(), m.cols())).finished();
    f.s = std::move(inner.s);
    f.v = std::move(inner.v);
  } else {
    f = direct_svd(m, true);
  }
  fix_svd_signs(f);
  return f;
}

Vector singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Vector(0);
  if (m.cols() > 2 * m.rows()) {
    Eigen::HouseholderQR<Matrix> qr(m.transpose());
    const Matrix r = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
    return Eigen::BDCSVD<Matrix>(r).singularValues();
  }
  if (m.rows() > 2 * m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    const Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    return Eigen::BDCSVD<Matrix>(r).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

Matrix eps_pseudoinverse(const Matrix& m, double eps) {
  if (eps < 0.0) throw DimensionError("eps_pseudoinverse: eps must be nonnegative");
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  return truncated_inverse(svd(m), eps, m.rows(), m.cols());
}

Matrix pseudoinverse(const Matrix& m) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  const SVDFactors f = svd(m);
  return truncated_inverse(f, numerical_rank_cutoff(m, f), m.rows(), m.cols());
}

Matrix times_eps_pseudoinverse(const Matrix& b, const Matrix& m, double eps) {
  if (eps < 0.0) throw DimensionError("times_eps_pseudoinverse: eps must be nonnegative");
  if (b.cols() != m.cols()) throw DimensionError("times_eps_pseudoinverse: inner dimensions differ");
  if (m.size() == 0) return Matrix::Zero(b.rows(), m.rows());
  return times_truncated_inverse(b, svd(m), eps, m.rows());
}

Matrix times_pseudoinverse(const Matrix& b, const Matrix& m) {
  if (b.cols() != m.cols()) throw DimensionError("times_pseudoinverse: inner dimensions differ");
  if (m.size() == 0) return Matrix::Zero(b.rows(), m.rows());
  const SVDFactors f = svd(m);
  return times_truncated_inverse(b, f, numerical_rank_cutoff(m, f), m.rows());
}

Matrix solve_upper_triangular(const Matrix& r, const Matrix& b) {
  if (r.rows() != r.cols()) throw DimensionError("solve_upper_triangular: R must be square");
  if (b.cols() != r.rows()) {
    throw DimensionError("solve_upper_triangular: B has " + std::to_string(b.cols()) +
                         " columns, R is " + std::to_string(r.rows()) + "x" + std::to_string(r.cols()));
  }
  if (r.rows() == 0) return Matrix(b.rows(), 0);
  const Vector diag = r.diagonal().cwiseAbs();
  const double tol = 1e2 * unit_roundoff * diag.maxCoeff();
  Eigen::Index worst;
  const double dmin = diag.minCoeff(&worst);
  if (dmin <= tol) {
    throw SingularTriangularError("triangular factor is numerically singular: |r_" + std::to_string(worst) +
                                  "| = " + std::to_string(dmin));
  }
  return r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(b);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= 1024) return singular_values(m)(0);

  Vector v = Vector::Ones(m.cols()) / std::sqrt(static_cast<double>(m.cols()));
  double estimate = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    Vector w = m.transpose() * (m * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const double next = std::sqrt(norm);
    if (std::abs(next - estimate) <= 1e-8 * next) return next;
    estimate = next;
  }
  return estimate;
}

Matrix haar_orthogonal(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  return economy_qr(gaussian_matrix(n, n, seed, stream)).q;
}

}  // namespace mln
