#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fsx/errors.hpp"

namespace fsx {

using cplx = std::complex<double>;

inline int exact_log2(long long n) {
  if (n <= 0 || (n & (n - 1)) != 0)
    return -1;
  int e = 0;
  while ((1LL << e) < n)
    ++e;
  return e;
}

/**
 * @brief Periodic dyadic grid on the torus [-2^K, 2^K)^dim with N points per axis.
 *
 * Sample i sits at x_i = -2^K + i*spacing and is the center of its cell.
 */
struct Grid {
  int dim = 1;
  int K = 4;
  int N = 4096;

  static Grid make(int dim, int K, int N) {
    if (dim != 1 && dim != 2)
      throw RangeError("grid dimension must be 1 or 2");
    if (N < 16 || exact_log2(N) < 0)
      throw RangeError("samples per axis must be a power of two >= 16");
    if (K < -40 || K > 40)
      throw RangeError("halfwidth exponent out of range");
    return Grid{dim, K, N};
  }

  static Grid default_for(int dim) { return dim == 1 ? make(1, 4, 4096) : make(2, 3, 256); }

  int log2N() const { return exact_log2(N); }
  // spacing = 2^e with e = K + 1 - log2 N
  int spacing_log2() const { return K + 1 - log2N(); }
  double spacing() const { return std::ldexp(1.0, spacing_log2()); }
  double cell_volume() const { return std::ldexp(1.0, dim * spacing_log2()); }
  double halfwidth() const { return std::ldexp(1.0, K); }
  std::size_t size() const { return dim == 1 ? std::size_t(N) : std::size_t(N) * std::size_t(N); }
  double coord(int i) const { return -halfwidth() + i * spacing(); }
  // angular frequency spacing of the dual lattice, 2*pi / 2^{K+1}
  double freq_spacing() const { return std::ldexp(std::numbers::pi, -K); }

  bool operator==(const Grid &o) const { return dim == o.dim && K == o.K && N == o.N; }
  bool operator!=(const Grid &o) const { return !(*this == o); }

  std::string describe() const {
    return "dim=" + std::to_string(dim) + " K=" + std::to_string(K) + " N=" + std::to_string(N);
  }
};

struct SampledFunction {
  Grid grid;
  std::vector<cplx> values;

  SampledFunction() = default;
  explicit SampledFunction(const Grid &g) : grid(g), values(g.size(), cplx(0.0, 0.0)) {}
  SampledFunction(const Grid &g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw RangeError("sample count does not match grid");
  }

  std::size_t size() const { return values.size(); }
  cplx &operator[](std::size_t i) { return values[i]; }
  const cplx &operator[](std::size_t i) const { return values[i]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto &z : values)
      m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    for (const auto &z : values)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return false;
    return true;
  }
};

inline SampledFunction scaled(const SampledFunction &f, cplx c) {
  SampledFunction g = f;
  for (auto &z : g.values)
    z *= c;
  return g;
}

inline SampledFunction add(const SampledFunction &f, const SampledFunction &g) {
  if (f.grid != g.grid)
    throw RangeError("grid mismatch in add");
  SampledFunction h = f;
  for (std::size_t i = 0; i < h.size(); ++i)
    h.values[i] += g.values[i];
  return h;
}

inline SampledFunction subtract(const SampledFunction &f, const SampledFunction &g) {
  if (f.grid != g.grid)
    throw RangeError("grid mismatch in subtract");
  SampledFunction h = f;
  for (std::size_t i = 0; i < h.size(); ++i)
    h.values[i] -= g.values[i];
  return h;
}

inline std::vector<double> abs_values(const SampledFunction &f) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    a[i] = std::abs(f.values[i]);
  return a;
}

/// Integer geometry shared by every grid with the same (dim, N).
struct GridGeometry {
  int dim = 1;
  int N = 16;
  int max_shell = 0;            // shell index of the outermost full annulus, log2(N/2)
  std::vector<std::int64_t> d2; // squared distance to the origin in cells
  std::vector<int> shell;       // annulus index relative to spacing; -1 origin, -2 outside
};

namespace detail {

inline int shell_of(std::int64_t d2, int max_shell) {
  if (d2 == 0)
    return -1;
  // smallest j >= 0 with d2 <= 4^j
  int j = 0;
  std::int64_t t = 1;
  while (d2 > t) {
    t *= 4;
    ++j;
  }
  return j <= max_shell ? j : -2;
}

} // namespace detail

inline std::shared_ptr<const GridGeometry> geometry(const Grid &g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GridGeometry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.dim, g.N);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  auto geo = std::make_shared<GridGeometry>();
  geo->dim = g.dim;
  geo->N = g.N;
  geo->max_shell = g.log2N() - 1;
  geo->d2.resize(g.size());
  geo->shell.resize(g.size());
  const int c = g.N / 2;
  if (g.dim == 1) {
    for (int i = 0; i < g.N; ++i) {
      std::int64_t d = i - c;
      geo->d2[i] = d * d;
    }
  } else {
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        std::int64_t a = i - c, b = j - c;
        geo->d2[std::size_t(i) * g.N + j] = a * a + b * b;
      }
  }
  for (std::size_t i = 0; i < geo->d2.size(); ++i)
    geo->shell[i] = detail::shell_of(geo->d2[i], geo->max_shell);
  cache.emplace(key, geo);
  return geo;
}

/// Annulus index k of each cell (C_k = {2^{k-1} < |x| <= 2^k}); sentinel for none.
inline constexpr int kNoAnnulus = -1000000;

inline int cell_annulus(const Grid &g, const GridGeometry &geo, std::size_t i) {
  int s = geo.shell[i];
  return s < 0 ? kNoAnnulus : g.spacing_log2() + s;
}

struct AnnulusRange {
  int k_min = 0;
  int k_max = 0;

  static AnnulusRange full(const Grid &g) { return {g.spacing_log2(), g.K}; }

  void validate(const Grid &g) const {
    if (k_min > k_max)
      throw RangeError("annulus range is empty");
    if (k_max > g.K)
      throw RangeError("annulus range exceeds the domain");
  }
};

inline SampledFunction annulus_mask(const Grid &g, int k) {
  if (k > g.K)
    throw RangeError("annulus C_" + std::to_string(k) + " exceeds the domain");
  auto geo = geometry(g);
  SampledFunction m(g);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (cell_annulus(g, *geo, i) == k)
      m.values[i] = 1.0;
  return m;
}

/**
 * @brief g(x) = f(2^m x) by relabelling the lattice.
 *
 * The sample array is reused unchanged on the grid with halfwidth exponent K - m,
 * whose points are 2^{-m} times the original ones. No resampling takes place, so
 * the identity holds at every sample and dilate_dyadic(dilate_dyadic(f, m), -m)
 * returns f bitwise.
 */
inline SampledFunction dilate_dyadic(const SampledFunction &f, int m) {
  const int K2 = f.grid.K - m;
  return SampledFunction(Grid::make(f.grid.dim, K2, f.grid.N), f.values);
}

using Offset = std::array<int, 2>;

inline std::size_t wrap_index(long long i, int N) {
  long long r = i % N;
  return std::size_t(r < 0 ? r + N : r);
}

/// g(x) = f(x - h): the bump at 0 moves to h.
inline SampledFunction translate(const SampledFunction &f, Offset h) {
  const Grid &g = f.grid;
  SampledFunction out(g);
  const int N = g.N;
  if (g.dim == 1) {
    for (int i = 0; i < N; ++i)
      out.values[wrap_index((long long)i + h[0], N)] = f.values[i];
  } else {
    for (int i = 0; i < N; ++i) {
      std::size_t ti = wrap_index((long long)i + h[0], N);
      for (int j = 0; j < N; ++j)
        out.values[ti * N + wrap_index((long long)j + h[1], N)] = f.values[std::size_t(i) * N + j];
    }
  }
  return out;
}

} // namespace fsx
