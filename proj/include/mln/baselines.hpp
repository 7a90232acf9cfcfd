#pragma once

// HOSVD-family baselines.

#include <cstdint>
#include <span>

#include "mln/tucker.hpp"

namespace mln {

// Truncated HOSVD: leading r_k left singular vectors of every unfolding.
TuckerTensor hosvd(const DenseTensor& a, std::span<const std::size_t> ranks);

// Randomized HOSVD: U_k from the SVD of A_k X_k with Gaussian X_k.
TuckerTensor rhosvd(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed);

// Randomized sequentially truncated HOSVD, modes processed in order 0..d-1.
TuckerTensor rsthosvd(const DenseTensor& a, std::span<const std::size_t> ranks, std::uint64_t seed);

}  // namespace mln
