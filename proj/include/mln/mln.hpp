#pragma once

// Multilinear Nystrom: per-mode sketch pairs (X_k, Y_k) give oblique
// projectors P_k = A_k X_k (Y_k^T A_k X_k)^+ Y_k^T, assembled into a Tucker
// tensor A x_1 P_1 ... x_d P_d.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mln/sketch.hpp"
#include "mln/tucker.hpp"

namespace mln {

enum class EpsilonPreset { unit, ten_unit, absolute };

// Truncation threshold of the stabilized path. unit and ten_unit scale with
// ||A||_F; absolute uses value as is.
struct EpsilonSetting {
  EpsilonPreset preset = EpsilonPreset::ten_unit;
  double value = 0.0;

  double resolve(double norm) const;
};

struct MlnParams {
  std::vector<std::size_t> ranks;
  // Per-mode oversampling; nullopt means ceil(r_k / 2).
  std::optional<std::vector<std::size_t>> oversample;
  SketchKind x_kind = SketchKind::gaussian;
  SketchKind y_kind = SketchKind::gaussian;
  std::uint64_t seed = 0;
  bool stabilized = false;
  EpsilonSetting eps;
  // Plain path only: when R_k is numerically singular, switch that mode to
  // the eps-pseudoinverse (true) or run the triangular solve regardless.
  bool fallback = true;

  std::size_t oversample_for(std::size_t k) const;
};

std::size_t default_oversample(std::size_t r);

// Sketch specs used for mode k of a tensor with the given dims.
SketchSpec x_sketch_spec(const MlnParams& p, const Dims& dims, std::size_t k);
SketchSpec y_sketch_spec(const MlnParams& p, const Dims& dims, std::size_t k);

// Throws RankError / DimensionError when params are infeasible for dims.
void validate(const MlnParams& p, const Dims& dims);

struct ModeRun {
  Matrix x;          // prod_{i != k} n_i x r_k; empty after Tucker recompression
  Matrix y;          // n_k x (r_k + l_k)
  Matrix sketch;     // F_k = A_k X_k
  Matrix factor;     // W_k
  Matrix core_map;   // M_k: Z_k^T Y_k^T (plain) or Y_k^T (stabilized); P_k = W_k M_k
  bool stabilized = false;
};

struct MlnRun {
  TuckerTensor tucker;
  std::vector<ModeRun> modes;
  double eps = 0.0;
  std::vector<std::string> warnings;

  // Realized oblique projector of mode k (n_k x n_k).
  Matrix projector(std::size_t k) const { return modes[k].factor * modes[k].core_map; }
};

MlnRun mln_run(const DenseTensor& a, const MlnParams& p);

TuckerTensor mln_approximate(const DenseTensor& a, const MlnParams& p);

// MLN with caller-supplied sketches (xs[k] is prod_{i != k} n_i x c_k, ys[k]
// is n_k x c'_k). eps is absolute.
MlnRun mln_run_with_sketches(const DenseTensor& a, std::span<const Matrix> xs, std::span<const Matrix> ys,
                             bool stabilized, double eps, bool fallback = true);

// Single-sketch variant with X_k of size n_k x r_k:
// core = A x_k X_k^T, factor k = (A x_{i != k} X_i^T)_k (core)_k^+.
TuckerTensor mln_single_sketch(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed,
                               SketchKind kind = SketchKind::gaussian);
TuckerTensor mln_single_sketch_with(const DenseTensor& a, std::span<const Matrix> xs);

// MLN of densify(t) computed through the core. The X side must be
// kron_subsampled or khatri_rao over the outer dims so it can be contracted
// factor by factor; matches mln_approximate(densify(t), p) with the same p.
MlnRun tucker_recompress_run(const TuckerTensor& t, const MlnParams& p);
TuckerTensor tucker_recompress(const TuckerTensor& t, const MlnParams& p);

}  // namespace mln
