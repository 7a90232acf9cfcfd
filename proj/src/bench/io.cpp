#include "mln/bench/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "mln/errors.hpp"

namespace mln::bench {

namespace {

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw FormatError("cannot open " + path.string() + " for writing");
  }

  void bytes(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }
  void u8(unsigned char v) { out_.put(static_cast<char>(v)); }
  void u64(std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(buf, 8);
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64s(const double* v, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
      bytes(reinterpret_cast<const char*>(v), n * sizeof(double));
    } else {
      for (std::size_t i = 0; i < n; ++i) f64(v[i]);
    }
  }
  void finish() {
    out_.flush();
    if (!out_) throw FormatError("write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw FormatError("cannot open " + path.string());
  }

  void bytes(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw FormatError(path_.string() + ": unexpected end of file");
  }
  unsigned char u8() {
    char c;
    bytes(&c, 1);
    return static_cast<unsigned char>(c);
  }
  std::uint64_t u64() {
    unsigned char buf[8];
    bytes(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
  }
  void f64s(double* v, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
      bytes(reinterpret_cast<char*>(v), n * sizeof(double));
    } else {
      for (std::size_t i = 0; i < n; ++i) v[i] = std::bit_cast<double>(u64());
    }
  }
  void header(const char* magic) {
    char got[4];
    bytes(got, 4);
    if (std::memcmp(got, magic, 4) != 0) throw FormatError(path_.string() + ": bad magic, expected " + magic);
    const unsigned char version = u8();
    if (version != kFormatVersion) {
      throw FormatError(path_.string() + ": unsupported version " + std::to_string(version));
    }
  }
  std::size_t dim() {
    const std::uint64_t v = u64();
    if (v == 0 || v > (std::uint64_t{1} << 40)) throw FormatError(path_.string() + ": implausible dimension");
    return static_cast<std::size_t>(v);
  }
  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) throw FormatError(path_.string() + ": trailing bytes");
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
};

unsigned char order_byte(std::size_t d) {
  if (d == 0 || d > 255) throw FormatError("tensor order " + std::to_string(d) + " does not fit the file format");
  return static_cast<unsigned char>(d);
}

}  // namespace

void write_tensor(const std::filesystem::path& path, const DenseTensor& t) {
  Writer w(path);
  w.bytes("TNSR", 4);
  w.u8(kFormatVersion);
  w.u8(order_byte(t.order()));
  for (std::size_t n : t.dims()) w.u64(n);
  w.f64s(t.values().data(), t.size());
  w.finish();
}

DenseTensor read_tensor(const std::filesystem::path& path) {
  Reader r(path);
  r.header("TNSR");
  const std::size_t d = r.u8();
  if (d == 0) throw FormatError(path.string() + ": order 0");
  Dims dims(d);
  for (auto& n : dims) n = r.dim();
  std::vector<double> values(product(dims));
  r.f64s(values.data(), values.size());
  r.expect_end();
  return DenseTensor(std::move(dims), std::move(values));
}

void write_tucker(const std::filesystem::path& path, const TuckerTensor& t) {
  validate(t);
  Writer w(path);
  w.bytes("TUCK", 4);
  w.u8(kFormatVersion);
  w.u8(order_byte(t.order()));
  for (std::size_t n : t.core.dims()) w.u64(n);
  for (const Matrix& u : t.factors) {
    w.u64(static_cast<std::uint64_t>(u.rows()));
    w.u64(static_cast<std::uint64_t>(u.cols()));
  }
  w.f64s(t.core.values().data(), t.core.size());
  for (const Matrix& u : t.factors) w.f64s(u.data(), static_cast<std::size_t>(u.size()));
  w.finish();
}

TuckerTensor read_tucker(const std::filesystem::path& path) {
  Reader r(path);
  r.header("TUCK");
  const std::size_t d = r.u8();
  if (d == 0) throw FormatError(path.string() + ": order 0");
  Dims core_dims(d);
  for (auto& n : core_dims) n = r.dim();
  std::vector<std::pair<std::size_t, std::size_t>> shapes(d);
  for (auto& [rows, cols] : shapes) {
    rows = r.dim();
    cols = r.dim();
  }
  std::vector<double> core(product(core_dims));
  r.f64s(core.data(), core.size());
  TuckerTensor t;
  t.core = DenseTensor(core_dims, std::move(core));
  for (const auto& [rows, cols] : shapes) {
    Matrix u(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    r.f64s(u.data(), rows * cols);
    t.factors.push_back(std::move(u));
  }
  r.expect_end();
  try {
    validate(t);
  } catch (const DimensionError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return t;
}

}  // namespace mln::bench
