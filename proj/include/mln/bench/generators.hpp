#pragma once

// Synthetic test tensors.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mln/sketch.hpp"
#include "mln/tensor.hpp"

namespace mln::bench {

struct Decay {
  enum class Kind { exponential, polynomial };
  Kind kind = Kind::exponential;
  double value = 0.5;  // sigma_i = value^i, or i^{-value}

  static Decay exponential(double rate) { return {Kind::exponential, rate}; }
  static Decay polynomial(double power) { return {Kind::polynomial, power}; }

  // sigma_1 .. sigma_n (1-based in the formulas).
  std::vector<double> sigmas(std::size_t n) const;
};

// S x_1 Q_1 ... x_d Q_d with S superdiagonal (S_{i..i} = sigmas[i]) and
// Q_k of size n x n, n = sigmas.size().
DenseTensor cp_superdiag(std::span<const double> sigmas, std::span<const Matrix> factors);

// Same with independent Haar orthogonal factors.
DenseTensor cp_superdiag(std::size_t n, std::size_t d, const Decay& decay, std::uint64_t seed);

// H(i_1, ..., i_d) = 1 / (i_1 + ... + i_d - (d - 1)), 1-based indices.
DenseTensor hilbert(std::size_t d, std::size_t n);

// Gaussian core of the given ranks times Gaussian factors: multilinear rank
// equal to ranks almost surely.
DenseTensor random_lowrank(const Dims& dims, const Dims& ranks, std::uint64_t seed);

// Block-diagonal construction in which one shared SRHT pair (X, Y) is used for
// every mode: A = S x_i Q with Q = diag(I_identity_block, U), U Haar.
struct AdversarialCase {
  DenseTensor tensor{Dims{1}};
  std::vector<double> sigmas;
  SketchSpec x;  // n^(d-1) x rank
  SketchSpec y;  // n x (rank + oversample)
};

struct AdversarialOptions {
  std::size_t d = 4;
  std::size_t n = 32;
  std::size_t identity_block = 7;
  double rate = 0.3;
  std::size_t rank = 8;
  std::size_t oversample = 0;
};

AdversarialCase adversarial(std::uint64_t seed, const AdversarialOptions& opt = {});

}  // namespace mln::bench
