#include "mln/mln.hpp"

#include <cmath>
#include <string>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "mln/rng.hpp"

namespace mln {

double EpsilonSetting::resolve(double norm) const {
  switch (preset) {
    case EpsilonPreset::unit: return unit_roundoff * norm;
    case EpsilonPreset::ten_unit: return 10.0 * unit_roundoff * norm;
    case EpsilonPreset::absolute: return value;
  }
  return value;
}

std::size_t default_oversample(std::size_t r) { return (r + 1) / 2; }

std::size_t MlnParams::oversample_for(std::size_t k) const {
  return oversample ? (*oversample)[k] : default_oversample(ranks[k]);
}

void validate(const MlnParams& p, const Dims& dims) {
  const std::size_t d = dims.size();
  if (d < 2) throw DimensionError("multilinear Nystrom needs a tensor of order >= 2");
  if (p.ranks.size() != d) {
    throw RankError("expected " + std::to_string(d) + " ranks, got " + std::to_string(p.ranks.size()));
  }
  if (p.oversample && p.oversample->size() != d) {
    throw RankError("expected " + std::to_string(d) + " oversampling values, got " +
                    std::to_string(p.oversample->size()));
  }
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t r = p.ranks[k];
    const std::size_t ell = p.oversample_for(k);
    if (r == 0) throw RankError("rank of mode " + std::to_string(k) + " must be positive");
    if (r + ell > dims[k]) {
      throw RankError("mode " + std::to_string(k) + ": rank " + std::to_string(r) + " plus oversampling " +
                      std::to_string(ell) + " exceeds dimension " + std::to_string(dims[k]));
    }
    if (r > product_excluding(dims, k)) {
      throw RankError("mode " + std::to_string(k) + ": rank " + std::to_string(r) +
                      " exceeds the column count of the unfolding");
    }
  }
}

SketchSpec x_sketch_spec(const MlnParams& p, const Dims& dims, std::size_t k) {
  SketchSpec s;
  s.kind = p.x_kind;
  s.rows = product_excluding(dims, k);
  s.cols = p.ranks[k];
  s.seed = p.seed;
  s.stream = stream_id(StreamRole::sketch_x, k);
  if (s.kind == SketchKind::kron_subsampled || s.kind == SketchKind::khatri_rao) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i != k) s.factor_dims.push_back(dims[i]);
    }
  }
  return s;
}

SketchSpec y_sketch_spec(const MlnParams& p, const Dims& dims, std::size_t k) {
  SketchSpec s;
  s.kind = p.y_kind;
  s.rows = dims[k];
  s.cols = p.ranks[k] + p.oversample_for(k);
  s.seed = p.seed;
  s.stream = stream_id(StreamRole::sketch_y, k);
  if (s.kind == SketchKind::kron_subsampled || s.kind == SketchKind::khatri_rao) s.factor_dims = {dims[k]};
  return s;
}

namespace {

// Fills factor and core_map of one mode from F_k and Y_k^T F_k. Returns Z_k^T
// on the plain path and an empty matrix on the stabilized one.
Matrix solve_mode(ModeRun& m, const Matrix& ytf, bool stabilized, double eps, bool fallback, std::size_t k,
                  std::vector<std::string>& warnings) {
  if (!stabilized) {
    if (ytf.rows() < ytf.cols()) {
      throw RankError("mode " + std::to_string(k) + ": plain path needs Y_k with at least as many columns as X_k");
    }
    QRFactors qr = economy_qr(ytf);
    try {
      m.factor = fallback ? solve_upper_triangular(qr.r, m.sketch)
                          : Matrix(qr.r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(m.sketch));
      Matrix zt = qr.q.transpose();
      m.core_map = zt * m.y.transpose();
      m.stabilized = false;
      return zt;
    } catch (const SingularTriangularError& e) {
      warnings.push_back("mode " + std::to_string(k) + ": " + e.what() + "; using eps-pseudoinverse");
    }
  }
  m.factor = times_eps_pseudoinverse(m.sketch, ytf, eps);
  m.core_map = m.y.transpose();
  m.stabilized = true;
  return Matrix();
}

// core_after_y is A x_k Y_k^T over all modes (or its equivalent through a
// Tucker core); this applies the Z_k^T of the plain modes.
DenseTensor finish_core(const DenseTensor& core_after_y, const std::vector<Matrix>& zts) {
  std::vector<const Matrix*> ptrs(zts.size(), nullptr);
  bool any = false;
  for (std::size_t k = 0; k < zts.size(); ++k) {
    if (zts[k].size() > 0) {
      ptrs[k] = &zts[k];
      any = true;
    }
  }
  return any ? multi_mode_product(core_after_y, ptrs) : core_after_y;
}

}  // namespace

MlnRun mln_run_with_sketches(const DenseTensor& a, std::span<const Matrix> xs, std::span<const Matrix> ys,
                             bool stabilized, double eps, bool fallback) {
  const std::size_t d = a.order();
  if (d < 2) throw DimensionError("multilinear Nystrom needs a tensor of order >= 2");
  if (xs.size() != d || ys.size() != d) throw DimensionError("need one X and one Y sketch per mode");

  MlnRun run;
  run.eps = eps;
  run.modes.resize(d);
  std::vector<Matrix> zts(d);
  std::vector<Matrix> yts(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (static_cast<std::size_t>(xs[k].rows()) != product_excluding(a.dims(), k) ||
        static_cast<std::size_t>(ys[k].rows()) != a.dim(k)) {
      throw DimensionError("sketches of mode " + std::to_string(k) + " do not conform to the tensor");
    }
    ModeRun& m = run.modes[k];
    m.x = xs[k];
    m.y = ys[k];
    m.sketch = unfolding_times(a, k, m.x);
    yts[k] = m.y.transpose();
    zts[k] = solve_mode(m, yts[k] * m.sketch, stabilized, eps, fallback, k, run.warnings);
  }

  const DenseTensor after_y = multi_mode_product(a, std::span<const Matrix>(yts));
  run.tucker.core = finish_core(after_y, zts);
  run.tucker.factors.reserve(d);
  for (const ModeRun& m : run.modes) run.tucker.factors.push_back(m.factor);
  return run;
}

MlnRun mln_run(const DenseTensor& a, const MlnParams& p) {
  validate(p, a.dims());
  const std::size_t d = a.order();
  std::vector<Matrix> xs, ys;
  xs.reserve(d);
  ys.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    xs.push_back(draw_sketch(x_sketch_spec(p, a.dims(), k)));
    ys.push_back(draw_sketch(y_sketch_spec(p, a.dims(), k)));
  }
  return mln_run_with_sketches(a, xs, ys, p.stabilized, p.eps.resolve(frobenius_norm(a)), p.fallback);
}

TuckerTensor mln_approximate(const DenseTensor& a, const MlnParams& p) { return mln_run(a, p).tucker; }

TuckerTensor mln_single_sketch_with(const DenseTensor& a, std::span<const Matrix> xs) {
  const std::size_t d = a.order();
  if (d < 2) throw DimensionError("single-sketch variant needs a tensor of order >= 2");
  if (xs.size() != d) throw DimensionError("need one sketch per mode");
  std::vector<Matrix> xts(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (static_cast<std::size_t>(xs[k].rows()) != a.dim(k)) {
      throw DimensionError("sketch of mode " + std::to_string(k) + " does not conform to the tensor");
    }
    xts[k] = xs[k].transpose();
  }

  TuckerTensor t;
  t.core = multi_mode_product(a, std::span<const Matrix>(xts));
  t.factors.reserve(d);
  std::vector<const Matrix*> ptrs(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) ptrs[i] = i == k ? nullptr : &xts[i];
    const Matrix partial = mode_unfold(multi_mode_product(a, ptrs), k);
    t.factors.push_back(times_pseudoinverse(partial, mode_unfold(t.core, k)));
  }
  return t;
}

TuckerTensor mln_single_sketch(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed,
                               SketchKind kind) {
  const std::size_t d = a.order();
  if (ranks.size() != d) throw RankError("expected " + std::to_string(d) + " ranks");
  std::vector<Matrix> xs;
  xs.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (ranks[k] == 0 || ranks[k] > a.dim(k)) {
      throw RankError("mode " + std::to_string(k) + ": rank " + std::to_string(ranks[k]) + " infeasible for dimension " +
                      std::to_string(a.dim(k)));
    }
    SketchSpec s{kind, a.dim(k), ranks[k], seed, stream_id(StreamRole::sketch_x, k), {}};
    if (kind == SketchKind::kron_subsampled || kind == SketchKind::khatri_rao) s.factor_dims = {a.dim(k)};
    xs.push_back(draw_sketch(s));
  }
  return mln_single_sketch_with(a, xs);
}

MlnRun tucker_recompress_run(const TuckerTensor& t, const MlnParams& p) {
  validate(t);
  const Dims dims = t.dims();
  validate(p, dims);
  if (p.x_kind != SketchKind::kron_subsampled && p.x_kind != SketchKind::khatri_rao) {
    throw SketchSpecError("Tucker recompression needs a kron_subsampled or khatri_rao X sketch");
  }
  const std::size_t d = dims.size();
  for (std::size_t k = 0; k < d; ++k) {
    if (p.ranks[k] > t.core.dim(k)) {
      throw RankError("mode " + std::to_string(k) + ": target rank " + std::to_string(p.ranks[k]) +
                      " exceeds the Tucker rank " + std::to_string(t.core.dim(k)));
    }
  }

  std::vector<Matrix> uts(d);
  for (std::size_t k = 0; k < d; ++k) uts[k] = t.factors[k].transpose();

  MlnRun run;
  run.eps = p.eps.resolve(frobenius_norm(t));
  run.modes.resize(d);
  std::vector<Matrix> zts(d);
  std::vector<Matrix> ytus(d);
  for (std::size_t k = 0; k < d; ++k) {
    ModeRun& m = run.modes[k];
    // U_{(x)k}^T X_k, contracted factor by factor; X_k itself is never formed.
    const Matrix reduced = apply_structured_sketch(uts, x_sketch_spec(p, dims, k), k);
    const Matrix core_sketch = unfolding_times(t.core, k, reduced);
    m.y = draw_sketch(y_sketch_spec(p, dims, k));
    m.sketch = t.factors[k] * core_sketch;
    ytus[k] = m.y.transpose() * t.factors[k];
    zts[k] = solve_mode(m, ytus[k] * core_sketch, p.stabilized, run.eps, p.fallback, k, run.warnings);
  }

  const DenseTensor after_y = multi_mode_product(t.core, std::span<const Matrix>(ytus));
  run.tucker.core = finish_core(after_y, zts);
  for (const ModeRun& m : run.modes) run.tucker.factors.push_back(m.factor);
  return run;
}

TuckerTensor tucker_recompress(const TuckerTensor& t, const MlnParams& p) { return tucker_recompress_run(t, p).tucker; }

}  // namespace mln
