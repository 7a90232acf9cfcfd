#pragma once

// Dimensionality-reduction maps. All draws are pure functions of the
// SketchSpec: identical specs give bit-identical matrices.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mln/tensor.hpp"

namespace mln {

enum class SketchKind { gaussian, srht, kron_subsampled, khatri_rao };

std::string_view to_string(SketchKind kind);
std::optional<SketchKind> parse_sketch_kind(std::string_view name);

struct SketchSpec {
  SketchKind kind = SketchKind::gaussian;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  // Required for kron_subsampled and khatri_rao; product must equal rows.
  // Listed in ascending mode order: entry 0 indexes the fastest-varying part
  // of the row index, i.e. the right-most Kronecker factor.
  std::vector<std::size_t> factor_dims;
};

// Throws SketchSpecError if the spec violates its invariants.
void validate(const SketchSpec& spec);

// Materialized rows x cols sketch.
//   gaussian:        i.i.d. N(0, 1).
//   srht:            D H P restricted to the first `rows` rows, with H the
//                    orthonormal Walsh-Hadamard matrix of the next power of two,
//                    D random signs and P a uniform column sample.
//   kron_subsampled: uniform sample (without replacement) of `cols` columns of
//                    Omega_last (x) ... (x) Omega_0, Omega_i Gaussian of size
//                    factor_dims[i] x min(factor_dims[i], cols).
//   khatri_rao:      column j is Omega_last[:, j] (x) ... (x) Omega_0[:, j],
//                    Omega_i Gaussian of size factor_dims[i] x cols.
Matrix draw_sketch(const SketchSpec& spec);

// Factored form of a kron_subsampled or khatri_rao sketch.
struct StructuredSketch {
  std::vector<Matrix> omegas;                     // one per factor, ascending
  std::vector<std::vector<std::size_t>> columns;  // per sketch column, the column of each omega
};

StructuredSketch draw_structured(const SketchSpec& spec);

// kron_chain_excluding(factors, k) * draw_sketch(spec), evaluated factor by
// factor without forming the Kronecker chain. spec.factor_dims must list the
// column counts of the factors other than k, in ascending mode order.
Matrix apply_structured_sketch(std::span<const Matrix> factors, const SketchSpec& spec, std::size_t k);

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint64_t stream);

}  // namespace mln
