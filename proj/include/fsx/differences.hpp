#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "fsx/lattice.hpp"
#include "fsx/quasinorms.hpp"

namespace fsx {

struct DifferenceConfig {
  int M = 2;
  // number of levels t = 2^{-l}, l = 0..levels-1; -1 keeps every level with t >= 2*spacing
  int levels = -1;
};

namespace detail {

inline long long binomial(int M, int j) {
  long long c = 1;
  for (int i = 1; i <= j; ++i)
    c = c * (M - j + i) / i;
  return c;
}

inline std::size_t shifted_index(const Grid &g, std::size_t i, Offset d) {
  if (g.dim == 1)
    return wrap_index((long long)i + d[0], g.N);
  const long long r = (long long)(i / g.N), c = (long long)(i % g.N);
  return wrap_index(r + d[0], g.N) * g.N + wrap_index(c + d[1], g.N);
}

/// Integer coefficients of Delta_h^M grouped by distinct shift k*h, k = M..0.
inline std::vector<std::pair<Offset, long long>> difference_stencil(Offset h, int M) {
  std::vector<std::pair<Offset, long long>> st;
  for (int j = 0; j <= M; ++j) {
    const int k = M - j;
    Offset d{k * h[0], k * h[1]};
    const long long c = (j % 2 ? -1 : 1) * binomial(M, j);
    auto it = std::find_if(st.begin(), st.end(), [&](const auto &e) { return e.first == d; });
    if (it == st.end())
      st.push_back({d, c});
    else
      it->second += c;
  }
  std::erase_if(st, [](const auto &e) { return e.second == 0; });
  return st;
}

inline void apply_stencil(const SampledFunction &f, const std::vector<std::pair<Offset, long long>> &st,
                          std::vector<cplx> &out) {
  const Grid &g = f.grid;
  std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
  for (const auto &[d, c] : st) {
    const double w = double(c);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += w * f.values[shifted_index(g, i, d)];
  }
}

struct OffsetRing {
  Offset o;
  long long r2;
};

/// On-grid offsets with |o|^2 <= r2max, sorted by |o|^2 then lexicographically.
inline std::vector<OffsetRing> offsets_within(int dim, long long r2max) {
  std::vector<OffsetRing> v;
  long long R = (long long)std::sqrt(double(r2max)) + 1;
  for (long long a = -R; a <= R; ++a) {
    if (dim == 1) {
      if (a * a <= r2max)
        v.push_back({{int(a), 0}, a * a});
      continue;
    }
    for (long long b = -R; b <= R; ++b)
      if (a * a + b * b <= r2max)
        v.push_back({{int(a), int(b)}, a * a + b * b});
  }
  std::sort(v.begin(), v.end(), [](const OffsetRing &x, const OffsetRing &y) {
    return x.r2 != y.r2 ? x.r2 < y.r2 : x.o < y.o;
  });
  return v;
}

/// Ball radius in cells: largest integer-squared radius with |o| h <= t.
inline long long radius2_cells(const Grid &g, double t) {
  const double r = t / g.spacing();
  return (long long)std::floor(r * r + 1e-9);
}

} // namespace detail

/// Delta_h^M f(x) = sum_j (-1)^j C(M,j) f(x + (M-j)h) for an on-grid offset h.
inline SampledFunction difference(const SampledFunction &f, Offset h, int M) {
  if (M < 1)
    throw ParameterError("difference order must be >= 1");
  SampledFunction out(f.grid);
  detail::apply_stencil(f, detail::difference_stencil(h, M), out.values);
  return out;
}

/// Geometric levels t_l = 2^{-l} down to the finest t >= 2*spacing.
inline std::vector<double> difference_levels(const Grid &g, const DifferenceConfig &cfg) {
  std::vector<double> ts;
  const double tmin = 2.0 * g.spacing();
  for (int l = 0; cfg.levels < 0 || l < cfg.levels; ++l) {
    const double t = std::ldexp(1.0, -l);
    if (t < tmin)
      break;
    ts.push_back(t);
  }
  if (ts.empty())
    throw ResolutionError("no difference level t <= 1 is resolved by the grid");
  return ts;
}

/**
 * @brief d_t^M f for several radii at once.
 *
 * Offsets are visited once in order of increasing |o|; each level takes the running sum of
 * |Delta_o^M f| once all offsets inside its ball are in, times t^{-n} * cell volume.
 */
inline std::vector<SampledFunction> ball_means_levels(const SampledFunction &f,
                                                      const std::vector<double> &ts, int M) {
  const Grid &g = f.grid;
  for (double t : ts)
    if (t < 2.0 * g.spacing())
      throw ResolutionError("ball radius below two grid spacings");
  std::vector<std::size_t> order(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ts[a] < ts[b]; });
  long long r2max = 0;
  for (double t : ts)
    r2max = std::max(r2max, detail::radius2_cells(g, t));
  const auto offs = detail::offsets_within(g.dim, r2max);

  std::vector<SampledFunction> out(ts.size(), SampledFunction(g));
  std::vector<double> acc(g.size(), 0.0);
  std::vector<cplx> diff(g.size());
  std::size_t next = 0;
  auto flush = [&](std::size_t lvl) {
    const double w = std::pow(ts[lvl], -double(g.dim)) * g.cell_volume();
    for (std::size_t i = 0; i < acc.size(); ++i)
      out[lvl].values[i] = w * acc[i];
  };
  for (const auto &ring : offs) {
    while (next < order.size() && detail::radius2_cells(g, ts[order[next]]) < ring.r2)
      flush(order[next++]);
    detail::apply_stencil(f, detail::difference_stencil(ring.o, M), diff);
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += std::abs(diff[i]);
  }
  while (next < order.size())
    flush(order[next++]);
  return out;
}

/// t^{-n} int_{|h|<=t} |Delta_h^M f(x)| dh over on-grid offsets with cell-volume weights.
inline SampledFunction ball_means(const SampledFunction &f, double t, int M) {
  return ball_means_levels(f, {t}, M).front();
}

/// Base and smoothness parts of a difference norm, kept apart for dilation fits.
struct DifferenceParts {
  double base = 0.0;
  double smooth = 0.0;
  std::vector<double> levels;
  std::vector<double> level_terms; // t^{-s} times the per-level quantity
  double truncation_diag = 0.0;
  std::vector<std::string> warnings;

  NormValue total() const {
    NormValue v;
    v.value = base + smooth;
    v.truncation_diag = truncation_diag;
    v.warnings = warnings;
    return v;
  }
};

namespace detail {

/// ln 2 * (1/2, 1, ..., 1, 1/2): trapezoid rule for dt/t on t = 2^{-l}.
inline std::vector<double> log_trapezoid_weights(std::size_t L) {
  std::vector<double> w(L, std::numbers::ln2);
  if (L > 1) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

/// (sum_l w_l x_l^beta)^{1/beta}, sup for beta = inf.
inline double weighted_aggregate(const std::vector<double> &x, const std::vector<double> &w, double beta) {
  std::vector<double> y(x.size());
  if (std::isinf(beta))
    return lp_aggregate(x, beta);
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = x[i] * std::pow(w[i], 1.0 / beta);
  return lp_aggregate(y, beta);
}

inline void difference_window(const Grid &g, const HerzParams &hp, const SmoothnessParams &sp, int M,
                              bool tl, std::vector<std::string> &warn) {
  const double n = g.dim;
  const double iq = std::isinf(hp.q) ? 0.0 : 1.0 / hp.q;
  const double ip = std::isinf(hp.p) ? 0.0 : 1.0 / hp.p;
  double sigma = n * std::max(iq - 1.0, 0.0);
  if (tl)
    sigma = n * std::max({ip - 1.0, iq - 1.0, 0.0});
  const double alpha0 = n - n * iq;
  if (!(sp.s > std::max(sigma, hp.alpha - alpha0)))
    warn.push_back("smoothness below the difference-characterisation window");
  if (!(sp.s < M))
    warn.push_back("s >= M: difference characterisation hypothesis fails");
}

} // namespace detail

inline DifferenceParts besov_diff_parts(const SampledFunction &f, const HerzParams &hp,
                                        const SmoothnessParams &sp, const DifferenceConfig &cfg) {
  DifferenceParts out;
  out.levels = difference_levels(f.grid, cfg);
  detail::difference_window(f.grid, hp, sp, cfg.M, false, out.warnings);
  out.base = herz_norm(f, hp).value;
  const auto d = ball_means_levels(f, out.levels, cfg.M);
  for (std::size_t l = 0; l < d.size(); ++l)
    out.level_terms.push_back(std::pow(out.levels[l], -sp.s) * herz_norm(d[l], hp).value);
  out.smooth = detail::weighted_aggregate(out.level_terms, detail::log_trapezoid_weights(d.size()), sp.beta);
  out.truncation_diag = out.level_terms.back();
  return out;
}

/// Herz norm plus (int_0^1 t^{-s beta} ||d_t^M f||^beta dt/t)^{1/beta}, geometric t grid.
inline NormValue besov_diff_norm(const SampledFunction &f, const HerzParams &hp, const SmoothnessParams &sp,
                                 const DifferenceConfig &cfg) {
  return besov_diff_parts(f, hp, sp, cfg).total();
}

inline DifferenceParts tl_diff_parts(const SampledFunction &f, const HerzParams &hp,
                                     const SmoothnessParams &sp, const DifferenceConfig &cfg) {
  if (std::isinf(hp.p) || std::isinf(hp.q))
    throw ParameterError("Triebel-Lizorkin type norms need finite p and q");
  DifferenceParts out;
  out.levels = difference_levels(f.grid, cfg);
  detail::difference_window(f.grid, hp, sp, cfg.M, true, out.warnings);
  out.base = herz_norm(f, hp).value;
  const auto d = ball_means_levels(f, out.levels, cfg.M);
  const auto w = detail::log_trapezoid_weights(d.size());
  SampledFunction G(f.grid);
  std::vector<double> x(d.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t l = 0; l < d.size(); ++l)
      x[l] = std::pow(out.levels[l], -sp.s) * d[l].values[i].real();
    G.values[i] = detail::weighted_aggregate(x, w, sp.beta);
  }
  out.smooth = herz_norm(G, hp).value;
  for (std::size_t l = 0; l < d.size(); ++l)
    out.level_terms.push_back(std::pow(out.levels[l], -sp.s) * herz_norm(d[l], hp).value);
  out.truncation_diag = out.level_terms.back();
  return out;
}

/// Herz norm plus the Herz norm of the pointwise t-integral of t^{-s} d_t^M f.
inline NormValue tl_diff_norm(const SampledFunction &f, const HerzParams &hp, const SmoothnessParams &sp,
                              const DifferenceConfig &cfg) {
  return tl_diff_parts(f, hp, sp, cfg).total();
}

inline DifferenceParts besov_supdiff_parts(const SampledFunction &f, const HerzParams &hp,
                                           const SmoothnessParams &sp, const DifferenceConfig &cfg) {
  DifferenceParts out;
  out.levels = difference_levels(f.grid, cfg);
  if (!(std::abs(hp.alpha) < sp.s && sp.s < cfg.M))
    out.warnings.push_back("outside |alpha| < s < M");
  if (!(hp.p > 1.0 && hp.q > 1.0 && std::isfinite(hp.p) && std::isfinite(hp.q) && sp.beta >= 1.0))
    out.warnings.push_back("outside 1 < p, q < inf, beta >= 1");
  out.base = herz_norm(f, hp).value;

  long long r2max = 0;
  for (double t : out.levels)
    r2max = std::max(r2max, detail::radius2_cells(f.grid, t));
  const auto offs = detail::offsets_within(f.grid.dim, r2max);
  std::vector<double> sup_at(offs.size());
  SampledFunction tmp(f.grid);
  double running = 0.0;
  for (std::size_t i = 0; i < offs.size(); ++i) {
    detail::apply_stencil(f, detail::difference_stencil(offs[i].o, cfg.M), tmp.values);
    running = std::max(running, herz_norm(tmp, hp).value);
    sup_at[i] = running;
  }
  for (double t : out.levels) {
    const long long r2 = detail::radius2_cells(f.grid, t);
    double s = 0.0;
    for (std::size_t i = 0; i < offs.size() && offs[i].r2 <= r2; ++i)
      s = sup_at[i];
    out.level_terms.push_back(std::pow(t, -sp.s) * s);
  }
  out.smooth = detail::weighted_aggregate(out.level_terms, detail::log_trapezoid_weights(out.levels.size()),
                                          sp.beta);
  out.truncation_diag = out.level_terms.back();
  return out;
}

/// Herz norm plus (int_0^1 t^{-s beta} sup_{|h|<=t} ||Delta_h^M f||^beta dt/t)^{1/beta}.
inline NormValue besov_supdiff_norm(const SampledFunction &f, const HerzParams &hp,
                                    const SmoothnessParams &sp, const DifferenceConfig &cfg) {
  return besov_supdiff_parts(f, hp, sp, cfg).total();
}

/// t^{-n} times the cell count times cell volume: discrete measure of the ball relative to t^n.
inline double ball_volume_factor(const Grid &g, double t) {
  const auto offs = detail::offsets_within(g.dim, detail::radius2_cells(g, t));
  return std::pow(t, -double(g.dim)) * double(offs.size()) * g.cell_volume();
}

} // namespace fsx
