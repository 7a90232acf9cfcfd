#include "mln/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "mln/errors.hpp"
#include "mln/rng.hpp"

namespace mln {

namespace {

bool is_structured(SketchKind kind) {
  return kind == SketchKind::kron_subsampled || kind == SketchKind::khatri_rao;
}

std::size_t omega_cols(const SketchSpec& spec, std::size_t i) {
  return spec.kind == SketchKind::kron_subsampled ? std::min(spec.factor_dims[i], spec.cols) : spec.cols;
}

std::size_t kron_column_count(const SketchSpec& spec) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < spec.factor_dims.size(); ++i) {
    const std::size_t c = omega_cols(spec, i);
    if (total > std::numeric_limits<std::size_t>::max() / c) return std::numeric_limits<std::size_t>::max();
    total *= c;
  }
  return total;
}

void fill_gaussian(Matrix& m, CounterRng& rng) {
  double* p = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i) p[i] = rng.normal();
}

// `count` distinct values from [0, population), sorted (Floyd's algorithm).
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t count, CounterRng& rng) {
  std::set<std::size_t> chosen;
  for (std::size_t j = population - count; j < population; ++j) {
    const std::size_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

Matrix draw_srht(const SketchSpec& spec) {
  const std::size_t padded = std::bit_ceil(spec.rows);
  CounterRng rng(spec.seed, spec.stream);
  std::vector<double> signs(spec.rows);
  for (auto& s : signs) s = rng.sign();
  const std::vector<std::size_t> picked = sample_without_replacement(padded, spec.cols, rng);

  // Orthonormal Hadamard entries times sqrt(padded / rows), so each column has
  // unit norm and E[X^T X] = I.
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.rows));
  Matrix x(spec.rows, spec.cols);
  for (std::size_t j = 0; j < spec.cols; ++j) {
    const std::size_t c = picked[j];
    for (std::size_t i = 0; i < spec.rows; ++i) {
      const bool odd = std::popcount(i & c) & 1;
      x(i, j) = (odd ? -scale : scale) * signs[i];
    }
  }
  return x;
}

}  // namespace

std::string_view to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::gaussian: return "gaussian";
    case SketchKind::srht: return "srht";
    case SketchKind::kron_subsampled: return "kron_subsampled";
    case SketchKind::khatri_rao: return "khatri_rao";
  }
  return "unknown";
}

std::optional<SketchKind> parse_sketch_kind(std::string_view name) {
  for (auto kind : {SketchKind::gaussian, SketchKind::srht, SketchKind::kron_subsampled, SketchKind::khatri_rao}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void validate(const SketchSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw SketchSpecError("sketch rows and cols must be positive");
  if (spec.cols > spec.rows) {
    throw SketchSpecError("sketch has more columns (" + std::to_string(spec.cols) + ") than rows (" +
                          std::to_string(spec.rows) + ")");
  }
  if (!is_structured(spec.kind)) return;
  if (spec.factor_dims.empty()) throw SketchSpecError(std::string(to_string(spec.kind)) + " sketch needs factor_dims");
  std::size_t prod = 1;
  for (std::size_t f : spec.factor_dims) {
    if (f == 0) throw SketchSpecError("factor_dims entries must be positive");
    prod *= f;
  }
  if (prod != spec.rows) {
    throw SketchSpecError("product of factor_dims (" + std::to_string(prod) + ") differs from rows (" +
                          std::to_string(spec.rows) + ")");
  }
  if (spec.kind == SketchKind::kron_subsampled && kron_column_count(spec) < spec.cols) {
    throw SketchSpecError("kron_subsampled sketch cannot supply " + std::to_string(spec.cols) + " distinct columns");
  }
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, std::uint64_t stream) {
  Matrix m(rows, cols);
  CounterRng rng(seed, stream);
  fill_gaussian(m, rng);
  return m;
}

StructuredSketch draw_structured(const SketchSpec& spec) {
  validate(spec);
  if (!is_structured(spec.kind)) throw SketchSpecError("draw_structured needs kron_subsampled or khatri_rao");
  CounterRng rng(spec.seed, spec.stream);
  const std::size_t nf = spec.factor_dims.size();

  StructuredSketch s;
  s.omegas.reserve(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    Matrix omega(spec.factor_dims[i], omega_cols(spec, i));
    fill_gaussian(omega, rng);
    s.omegas.push_back(std::move(omega));
  }

  s.columns.resize(spec.cols, std::vector<std::size_t>(nf));
  if (spec.kind == SketchKind::khatri_rao) {
    for (std::size_t j = 0; j < spec.cols; ++j) std::fill(s.columns[j].begin(), s.columns[j].end(), j);
    return s;
  }
  const std::vector<std::size_t> picked = sample_without_replacement(kron_column_count(spec), spec.cols, rng);
  for (std::size_t j = 0; j < spec.cols; ++j) {
    std::size_t c = picked[j];
    for (std::size_t i = 0; i < nf; ++i) {
      const std::size_t ci = omega_cols(spec, i);
      s.columns[j][i] = c % ci;
      c /= ci;
    }
  }
  return s;
}

namespace {

// Kronecker product of the given columns (entry 0 fastest) into out.
void kron_columns(const std::vector<const double*>& cols, const std::vector<std::size_t>& lens, double* out) {
  out[0] = 1.0;
  std::size_t filled = 1;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    // Block b of the new vector is cols[i][b] times the current prefix.
    for (std::size_t b = lens[i]; b-- > 0;) {
      const double v = cols[i][b];
      for (std::size_t t = 0; t < filled; ++t) out[b * filled + t] = v * out[t];
    }
    filled *= lens[i];
  }
}

Matrix assemble_structured(const std::vector<Matrix>& mats, const StructuredSketch& s, std::size_t rows) {
  Matrix out(rows, s.columns.size());
  std::vector<std::size_t> lens(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) lens[i] = mats[i].rows();
  std::vector<const double*> cols(mats.size());
  for (std::size_t j = 0; j < s.columns.size(); ++j) {
    for (std::size_t i = 0; i < mats.size(); ++i) cols[i] = mats[i].col(s.columns[j][i]).data();
    kron_columns(cols, lens, out.col(j).data());
  }
  return out;
}

}  // namespace

Matrix draw_sketch(const SketchSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case SketchKind::gaussian: return gaussian_matrix(spec.rows, spec.cols, spec.seed, spec.stream);
    case SketchKind::srht: return draw_srht(spec);
    case SketchKind::kron_subsampled:
    case SketchKind::khatri_rao: {
      const StructuredSketch s = draw_structured(spec);
      return assemble_structured(s.omegas, s, spec.rows);
    }
  }
  throw SketchSpecError("unknown sketch kind");
}

Matrix apply_structured_sketch(std::span<const Matrix> factors, const SketchSpec& spec, std::size_t k) {
  if (k >= factors.size()) throw ModeIndexError("apply_structured_sketch: mode out of range");
  if (factors.size() - 1 != spec.factor_dims.size()) {
    throw DimensionError("apply_structured_sketch: expected " + std::to_string(spec.factor_dims.size() + 1) +
                         " factors, got " + std::to_string(factors.size()));
  }
  const StructuredSketch s = draw_structured(spec);
  std::vector<Matrix> psi;
  psi.reserve(spec.factor_dims.size());
  std::size_t rows = 1;
  for (std::size_t i = 0, f = 0; i < factors.size(); ++i) {
    if (i == k) continue;
    if (static_cast<std::size_t>(factors[i].cols()) != spec.factor_dims[f]) {
      throw DimensionError("apply_structured_sketch: factor " + std::to_string(i) + " has " +
                           std::to_string(factors[i].cols()) + " columns, sketch expects " +
                           std::to_string(spec.factor_dims[f]));
    }
    psi.push_back(factors[i] * s.omegas[f]);
    rows *= factors[i].rows();
    ++f;
  }
  return assemble_structured(psi, s, rows);
}

}  // namespace mln
