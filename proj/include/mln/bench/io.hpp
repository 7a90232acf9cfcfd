#pragma once

// Binary tensor files, little-endian.
//   TNSR: "TNSR", u8 version, u8 d, d x u64 dims, prod(dims) f64 values.
//   TUCK: "TUCK", u8 version, u8 d, d x u64 core dims, d x (u64 rows, u64 cols)
//         factor shapes, core values, then each factor column-major.

#include <filesystem>

#include "mln/tucker.hpp"

namespace mln::bench {

inline constexpr unsigned char kFormatVersion = 1;

void write_tensor(const std::filesystem::path& path, const DenseTensor& t);
DenseTensor read_tensor(const std::filesystem::path& path);

void write_tucker(const std::filesystem::path& path, const TuckerTensor& t);
TuckerTensor read_tucker(const std::filesystem::path& path);

}  // namespace mln::bench
