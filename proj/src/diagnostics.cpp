#include "mln/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"

namespace mln {

namespace {

constexpr double kSlack = 1.0 + 1e-8;
constexpr double kRankThreshold = 1e-10;

struct RankInfo {
  double pinv_norm = 0.0;
  bool full_rank = false;
};

// ||M^+||_2 for a matrix expected to have full column rank.
RankInfo column_rank_info(const Matrix& m) {
  const Vector s = singular_values(m);
  RankInfo info;
  if (s.size() == 0 || s(0) == 0.0) return info;
  const double smin = s(s.size() - 1);
  info.full_rank = s.size() == m.cols() && smin > kRankThreshold * s(0);
  info.pinv_norm = smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
  return info;
}

}  // namespace

ErrorDecomposition error_decomposition(const DenseTensor& a, const MlnRun& run) {
  const std::size_t d = a.order();
  if (run.modes.size() != d) throw DimensionError("run does not match the tensor order");
  ErrorDecomposition dec;
  dec.norm = frobenius_norm(a);
  DenseTensor previous = a;
  double sum = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    DenseTensor next = mode_product(previous, k, run.projector(k));
    dec.terms.push_back(frobenius_distance(previous, next));
    dec.cumulative.push_back(frobenius_distance(a, next));
    sum += dec.terms.back();
    previous = std::move(next);
  }
  for (std::size_t k = 0; k + 1 < d; ++k) {
    dec.ratios.push_back(dec.terms[k] > 0.0 ? dec.terms[k + 1] / dec.terms[k]
                                            : std::numeric_limits<double>::infinity());
  }
  dec.total = dec.cumulative.back();
  dec.sum_bound_holds = dec.total <= sum * kSlack;
  return dec;
}

BoundReport evaluate_bound(const DenseTensor& a, const MlnRun& run, std::span<const std::size_t> rhat) {
  const std::size_t d = a.order();
  if (run.modes.size() != d) throw DimensionError("run does not match the tensor order");
  if (!rhat.empty() && rhat.size() != d) throw RankError("rhat needs one entry per mode");
  for (std::size_t k = 0; k < d; ++k) {
    if (a.dim(k) > kMaxDiagnosticsDim) {
      throw DiagnosticsScaleError("mode " + std::to_string(k) + " has dimension " + std::to_string(a.dim(k)) +
                                  ", complements are only formed up to " + std::to_string(kMaxDiagnosticsDim));
    }
    if (run.modes[k].x.size() == 0) throw DimensionError("run carries no X sketch for mode " + std::to_string(k));
  }

  BoundReport rep;
  rep.decomposition = error_decomposition(a, run);
  rep.measured_error = frobenius_distance(a, densify(run.tucker));
  const double norm = rep.decomposition.norm;

  rep.single_mode_holds = true;
  rep.sequential_holds = true;
  for (std::size_t k = 0; k < d; ++k) {
    const ModeRun& m = run.modes[k];
    ModeBound mb;
    const Matrix ak = mode_unfold(a, k);

    const Matrix q = orth(m.sketch);
    const Matrix q_perp = orthogonal_complement(q);
    const RankInfo f_info = column_rank_info(m.sketch);
    if (!f_info.full_rank) rep.flags.push_back("mode " + std::to_string(k) + ": A_k X_k is rank deficient");

    const RankInfo ytq = column_rank_info(m.y.transpose() * q);
    mb.ytq_full_rank = ytq.full_rank;
    mb.ytq_pinv_norm = ytq.pinv_norm;
    mb.ytq_perp_norm = q_perp.cols() > 0 ? spectral_norm(m.y.transpose() * q_perp) : 0.0;
    mb.tau = std::sqrt(1.0 + std::pow(mb.ytq_pinv_norm * mb.ytq_perp_norm, 2));
    if (!ytq.full_rank) rep.flags.push_back("mode " + std::to_string(k) + ": Y_k^T Q_k is rank deficient");

    mb.hmt_error = (ak - q * (q.transpose() * ak)).norm();

    const std::size_t r = rhat.empty() ? static_cast<std::size_t>(m.x.cols()) : rhat[k];
    const SVDFactors f = svd(ak);
    const std::size_t keep = std::min<std::size_t>(r, f.s.size());
    mb.tail = keep < static_cast<std::size_t>(f.s.size()) ? f.s.tail(f.s.size() - keep).norm() : 0.0;
    const Matrix v = f.v.leftCols(keep);
    const Matrix vx = v.transpose() * m.x;
    const RankInfo vxi = column_rank_info(vx.transpose());
    mb.vx_full_rank = vxi.full_rank;
    mb.vx_pinv_norm = vxi.pinv_norm;
    // ||V_perp^T X||_2 = ||(I - V V^T) X||_2, so the complement of V is never formed.
    mb.vperp_x_norm = spectral_norm(m.x - v * vx);
    mb.rho = std::sqrt(1.0 + std::pow(mb.vperp_x_norm * mb.vx_pinv_norm, 2));
    if (!vxi.full_rank) rep.flags.push_back("mode " + std::to_string(k) + ": V_k^T X_k is rank deficient");

    mb.single_mode_error = (ak - run.projector(k) * ak).norm();
    mb.single_mode_bound = mb.hmt_error * mb.tau;
    const double before = k == 0 ? 0.0 : rep.decomposition.cumulative[k - 1];
    mb.sequential_bound = (mb.hmt_error + before) * mb.tau;
    rep.single_mode_holds = rep.single_mode_holds && mb.single_mode_error <= mb.single_mode_bound * kSlack;
    rep.sequential_holds = rep.sequential_holds && rep.decomposition.terms[k] <= mb.sequential_bound * kSlack;

    rep.tau = std::max(rep.tau, mb.tau);
    rep.rho = std::max(rep.rho, mb.rho);
    rep.eps = std::max(rep.eps, mb.tail);
    rep.modes.push_back(mb);
  }

  rep.bound_value = rep.eps * rep.rho * (std::pow(1.0 + rep.tau, static_cast<double>(d)) - 1.0);
  rep.satisfied = rep.measured_error <= rep.bound_value * kSlack;
  // The bound is exact arithmetic; when the tail sits at roundoff level the
  // measured error is dominated by floating point and the comparison says
  // nothing about the bound.
  if (rep.eps <= 1e3 * unit_roundoff * norm) rep.flags.push_back("tail epsilon is at roundoff level");
  return rep;
}

double projector_norm(const MlnRun& run, std::size_t k) {
  if (k >= run.modes.size()) throw ModeIndexError("projector_norm: mode out of range");
  return spectral_norm(run.projector(k));
}

}  // namespace mln
