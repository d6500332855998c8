#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "fsx/lattice.hpp"

namespace fsx {

namespace detail {

struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

inline FftPlans fft_plans(int dim, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FftPlans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, N);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  const std::size_t n = dim == 1 ? std::size_t(N) : std::size_t(N) * N;
  fftw_complex *buf = fftw_alloc_complex(n);
  FftPlans p;
  if (dim == 1) {
    p.forward = fftw_plan_dft_1d(N, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_1d(N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    p.forward = fftw_plan_dft_2d(N, N, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_2d(N, N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

// Plans are executed on a per-thread buffer from fftw_alloc so the alignment always
// matches the planning buffer.
struct ScratchBuffer {
  fftw_complex *data = nullptr;
  std::size_t n = 0;
  ~ScratchBuffer() {
    if (data)
      fftw_free(data);
  }
  fftw_complex *get(std::size_t want) {
    if (want > n) {
      if (data)
        fftw_free(data);
      data = fftw_alloc_complex(want);
      n = want;
    }
    return data;
  }
};

inline void unitary_fft(std::vector<cplx> &v, int dim, int N, bool forward) {
  FftPlans p = fft_plans(dim, N);
  thread_local ScratchBuffer scratch;
  fftw_complex *buf = scratch.get(v.size());
  std::memcpy(buf, v.data(), v.size() * sizeof(cplx));
  fftw_execute_dft(forward ? p.forward : p.backward, buf, buf);
  std::memcpy(static_cast<void *>(v.data()), buf, v.size() * sizeof(cplx));
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto &z : v)
    z *= scale;
}

} // namespace detail

/// Signed frequency index of FFT bin k.
inline int signed_bin(int k, int N) { return k < N / 2 ? k : k - N; }

/// Angular frequency vector of spectrum entry i.
inline std::array<double, 2> bin_frequency(const Grid &g, std::size_t i) {
  const double d = g.freq_spacing();
  if (g.dim == 1)
    return {d * signed_bin(int(i), g.N), 0.0};
  return {d * signed_bin(int(i / g.N), g.N), d * signed_bin(int(i % g.N), g.N)};
}

/// |xi| for every spectrum entry, in FFT order.
inline std::vector<double> frequency_magnitudes(const Grid &g) {
  std::vector<double> r(g.size());
  const double d = g.freq_spacing();
  if (g.dim == 1) {
    for (int k = 0; k < g.N; ++k)
      r[k] = d * std::abs(signed_bin(k, g.N));
  } else {
    for (int a = 0; a < g.N; ++a)
      for (int b = 0; b < g.N; ++b) {
        const double ka = signed_bin(a, g.N), kb = signed_bin(b, g.N);
        r[std::size_t(a) * g.N + b] = d * std::sqrt(ka * ka + kb * kb);
      }
  }
  return r;
}

/// Unitary DFT. The spectrum is stored in FFT order on the same Grid value.
inline SampledFunction dft(const SampledFunction &f) {
  SampledFunction out = f;
  detail::unitary_fft(out.values, f.grid.dim, f.grid.N, true);
  return out;
}

inline SampledFunction idft(const SampledFunction &spectrum) {
  SampledFunction out = spectrum;
  detail::unitary_fft(out.values, spectrum.grid.dim, spectrum.grid.N, false);
  return out;
}

inline double smooth_rho(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

inline double smooth_step(double t) {
  if (t <= 0.0)
    return 0.0;
  if (t >= 1.0)
    return 1.0;
  const double a = smooth_rho(t), b = smooth_rho(1.0 - t);
  return a / (a + b);
}

/// Cutoff profile: 1 on |xi| <= 1, 0 on |xi| >= 3/2.
inline double phi0(double r) { return smooth_step(3.0 - 2.0 * r); }

/**
 * @brief Smooth dyadic resolution of unity on the dual lattice of a grid.
 *
 * j_max is the smallest j with 2^j at least the largest grid frequency, so
 * phi0(2^{-j_max} xi) = 1 on every bin and the blocks sum to one on the whole grid.
 */
struct DyadicSystem {
  Grid grid;
  int j_max = 0;
  int j_min_hom = 0;

  static DyadicSystem make(const Grid &g) { return make(g, -g.K); }

  static DyadicSystem make(const Grid &g, int j_min_hom) {
    DyadicSystem s;
    s.grid = g;
    const double top = max_frequency(g);
    int j = -200;
    while (std::ldexp(1.0, j) < top)
      ++j;
    s.j_max = j;
    s.j_min_hom = j_min_hom;
    if (j_min_hom > s.j_max)
      throw RangeError("homogeneous block range is empty");
    return s;
  }

  static double max_frequency(const Grid &g) {
    const double nyq = g.freq_spacing() * (g.N / 2);
    return g.dim == 1 ? nyq : nyq * std::sqrt(2.0);
  }

  /// Largest j whose block support |xi| <= 3*2^{j-1} stays inside the per-axis Nyquist band.
  int resolved_j_max() const {
    const double nyq = grid.freq_spacing() * (grid.N / 2);
    int j = j_max;
    while (j > 0 && 1.5 * std::ldexp(1.0, j) > nyq)
      --j;
    return j;
  }

  int j_lo(bool homogeneous) const { return homogeneous ? j_min_hom : 0; }

  void check(int j, bool homogeneous) const {
    if (j < j_lo(homogeneous) || j > j_max)
      throw RangeError("block index " + std::to_string(j) + " outside [" +
                       std::to_string(j_lo(homogeneous)) + ", " + std::to_string(j_max) + "]");
  }

  static double block_value(int j, bool homogeneous, double r) {
    if (j == 0 && !homogeneous)
      return phi0(r);
    return phi0(std::ldexp(r, -j)) - phi0(std::ldexp(r, 1 - j));
  }

  std::vector<double> multiplier(int j, bool homogeneous) const {
    check(j, homogeneous);
    auto r = frequency_magnitudes(grid);
    for (auto &x : r)
      x = block_value(j, homogeneous, x);
    return r;
  }
};

namespace detail {

inline SampledFunction apply_table(const SampledFunction &spectrum, const std::vector<double> &m) {
  SampledFunction s = spectrum;
  for (std::size_t i = 0; i < s.size(); ++i)
    s.values[i] *= m[i];
  return idft(s);
}

inline void check_system(const DyadicSystem &sys, const SampledFunction &f) {
  if (sys.grid != f.grid)
    throw RangeError("dyadic system built for a different grid");
}

} // namespace detail

inline SampledFunction lp_block(const DyadicSystem &sys, const SampledFunction &f, int j,
                                bool homogeneous) {
  detail::check_system(sys, f);
  return detail::apply_table(dft(f), sys.multiplier(j, homogeneous));
}

/// All blocks j_lo..j_max from a single forward transform.
inline std::vector<SampledFunction> lp_blocks(const DyadicSystem &sys, const SampledFunction &f,
                                              bool homogeneous) {
  detail::check_system(sys, f);
  const SampledFunction spec = dft(f);
  std::vector<SampledFunction> out;
  for (int j = sys.j_lo(homogeneous); j <= sys.j_max; ++j)
    out.push_back(detail::apply_table(spec, sys.multiplier(j, homogeneous)));
  return out;
}

/// Q_J f = sum_{j<=J} blocks, applied as the single multiplier phi0(2^{-J} xi).
inline SampledFunction partial_sum(const DyadicSystem &sys, const SampledFunction &f, int J) {
  detail::check_system(sys, f);
  if (J < 0 || J > sys.j_max)
    throw RangeError("partial sum index out of range");
  auto m = frequency_magnitudes(f.grid);
  for (auto &x : m)
    x = phi0(std::ldexp(x, -J));
  return detail::apply_table(dft(f), m);
}

/// (1 + |xi|^2)^{s/2} as a Fourier multiplier.
inline SampledFunction bessel_multiplier(const SampledFunction &f, double s) {
  auto m = frequency_magnitudes(f.grid);
  for (auto &x : m)
    x = std::pow(1.0 + x * x, 0.5 * s);
  return detail::apply_table(dft(f), m);
}

/// |xi|^s, i.e. (-Delta)^{s/2}. The zero bin maps to 0 for s > 0.
inline SampledFunction riesz_multiplier(const SampledFunction &f, double s) {
  if (s == 0.0)
    return f;
  SampledFunction spec = dft(f);
  if (s < 0.0) {
    double l2 = 0.0;
    for (const auto &z : spec.values)
      l2 += std::norm(z);
    l2 = std::sqrt(l2);
    if (std::abs(spec.values[0]) > 1e-12 * l2)
      throw SingularMultiplierError("negative-order Riesz multiplier on a function with nonzero mean");
  }
  auto m = frequency_magnitudes(f.grid);
  for (auto &x : m)
    x = x == 0.0 ? 0.0 : std::pow(x, s);
  return detail::apply_table(spec, m);
}

/// Spectral derivative with multiplier (i xi)^beta.
inline SampledFunction spectral_derivative(const SampledFunction &f, std::array<int, 2> beta) {
  if (beta[0] == 0 && beta[1] == 0)
    return f;
  SampledFunction spec = dft(f);
  const cplx I(0.0, 1.0);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto xi = bin_frequency(f.grid, i);
    cplx factor = 1.0;
    for (int a = 0; a < 2; ++a)
      for (int k = 0; k < beta[a]; ++k)
        factor *= I * xi[a];
    spec.values[i] *= factor;
  }
  return idft(spec);
}

} // namespace fsx
