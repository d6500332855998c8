#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "fsx/lattice.hpp"

namespace fsx {

// FSX1 layout: "FSX1", u8 dim, i8 K, u32 N (little-endian), then N^dim (re, im) float64 pairs.

namespace detail {

inline void put_u32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char *>(b), 4);
}

inline void put_f64(std::ostream &os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i)
    b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char *>(b), 8);
}

inline std::uint32_t get_u32(std::istream &is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char *>(b), 4))
    throw FormatError("truncated FSX1 header");
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
         (std::uint32_t(b[3]) << 24);
}

inline double get_f64(std::istream &is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char *>(b), 8))
    throw FormatError("truncated FSX1 payload");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= std::uint64_t(b[i]) << (8 * i);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

} // namespace detail

inline void write_fsx(std::ostream &os, const SampledFunction &f) {
  os.write("FSX1", 4);
  const auto dim = static_cast<std::uint8_t>(f.grid.dim);
  const auto K = static_cast<std::int8_t>(f.grid.K);
  os.put(static_cast<char>(dim));
  os.put(static_cast<char>(K));
  detail::put_u32(os, static_cast<std::uint32_t>(f.grid.N));
  for (const auto &z : f.values) {
    detail::put_f64(os, z.real());
    detail::put_f64(os, z.imag());
  }
}

inline SampledFunction read_fsx(std::istream &is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FSX1", 4) != 0)
    throw FormatError("missing FSX1 magic");
  int dim = is.get();
  int kraw = is.get();
  if (!is)
    throw FormatError("truncated FSX1 header");
  const int K = static_cast<std::int8_t>(static_cast<unsigned char>(kraw));
  const std::uint32_t N = detail::get_u32(is);
  Grid g = Grid::make(dim, K, static_cast<int>(N));
  SampledFunction f(g);
  for (auto &z : f.values) {
    double re = detail::get_f64(is);
    double im = detail::get_f64(is);
    z = cplx(re, im);
  }
  return f;
}

inline void save_fsx(const std::string &path, const SampledFunction &f) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw FormatError("cannot open " + path + " for writing");
  write_fsx(os, f);
}

inline SampledFunction load_fsx(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw FormatError("cannot open " + path);
  return read_fsx(is);
}

} // namespace fsx
