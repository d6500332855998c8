#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fsx/lattice.hpp"
#include "fsx/spectral.hpp"

namespace fsx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct HerzParams {
  double alpha = 0.0;
  double p = 2.0; // outer, over annuli
  double q = 2.0; // inner, on each annulus
};

struct SmoothnessParams {
  double s = 0.0;
  double beta = 2.0;
};

struct MorreyParams {
  double u = 2.0;
  double p = 2.0;
};

struct NormValue {
  double value = 0.0;
  double truncation_diag = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

inline void require_positive(double x, const char *name) {
  if (!(x > 0.0))
    throw ParameterError(std::string(name) + " must be positive");
}

/// (sum t_i^p)^{1/p} for t_i >= 0, or max for p = inf. Scaled by the max to avoid overflow.
inline double lp_aggregate(const std::vector<double> &t, double p) {
  double m = 0.0;
  for (double x : t)
    m = std::max(m, x);
  if (m == 0.0 || std::isinf(p))
    return m;
  double acc = 0.0;
  for (double x : t)
    acc += std::pow(x / m, p);
  return m * std::pow(acc, 1.0 / p);
}

/// Discrete L^q norm of |values| restricted to cells where select(i) holds.
template <class Select>
double masked_lq(const std::vector<double> &a, double q, double cell_volume, Select select) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (select(i))
      m = std::max(m, a[i]);
  if (m == 0.0 || std::isinf(q))
    return m;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (select(i))
      acc += std::pow(a[i] / m, q);
  return m * std::pow(acc * cell_volume, 1.0 / q);
}

} // namespace detail

/// (sum |f|^p * cell volume)^{1/p} over the region (nonzero mask entries), max for p = inf.
inline NormValue lebesgue_norm(const SampledFunction &f, double p,
                               const SampledFunction *region = nullptr) {
  detail::require_positive(p, "p");
  if (region && region->grid != f.grid)
    throw RangeError("region mask on a different grid");
  NormValue out;
  const auto a = abs_values(f);
  if (region) {
    bool any = false;
    for (const auto &z : region->values)
      any = any || z != cplx(0.0, 0.0);
    if (!any) {
      out.warnings.push_back("empty region");
      return out;
    }
    out.value = detail::masked_lq(a, p, f.grid.cell_volume(),
                                  [&](std::size_t i) { return region->values[i] != cplx(0.0, 0.0); });
  } else {
    out.value = detail::masked_lq(a, p, f.grid.cell_volume(), [](std::size_t) { return true; });
  }
  return out;
}

/// ||f chi_k||_q for k = range.k_min .. range.k_max.
inline std::vector<double> annulus_norms(const SampledFunction &f, double q, const AnnulusRange &range) {
  detail::require_positive(q, "q");
  range.validate(f.grid);
  const Grid &g = f.grid;
  auto geo = geometry(g);
  const int count = range.k_max - range.k_min + 1;
  std::vector<int> slot(g.size(), -1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int k = cell_annulus(g, *geo, i);
    if (k != kNoAnnulus && k >= range.k_min && k <= range.k_max)
      slot[i] = k - range.k_min;
  }
  const auto a = abs_values(f);
  std::vector<double> mx(count, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (slot[i] >= 0)
      mx[slot[i]] = std::max(mx[slot[i]], a[i]);
  if (std::isinf(q))
    return mx;
  std::vector<double> acc(count, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (slot[i] >= 0 && mx[slot[i]] > 0.0)
      acc[slot[i]] += std::pow(a[i] / mx[slot[i]], q);
  std::vector<double> out(count, 0.0);
  for (int k = 0; k < count; ++k)
    if (mx[k] > 0.0)
      out[k] = mx[k] * std::pow(acc[k] * g.cell_volume(), 1.0 / q);
  return out;
}

/// Weighted annulus terms 2^{k alpha} ||f chi_k||_q.
inline std::vector<double> herz_terms(const SampledFunction &f, const HerzParams &hp,
                                      const AnnulusRange &range) {
  auto t = annulus_norms(f, hp.q, range);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] > 0.0)
      t[i] *= std::exp2(double(range.k_min + int(i)) * hp.alpha);
  return t;
}

inline NormValue herz_norm(const SampledFunction &f, const HerzParams &hp, const AnnulusRange &range) {
  detail::require_positive(hp.p, "p");
  NormValue out;
  const auto t = herz_terms(f, hp, range);
  out.value = detail::lp_aggregate(t, hp.p);
  out.truncation_diag = t.front() + (t.size() > 1 ? t.back() : 0.0);
  return out;
}

inline NormValue herz_norm(const SampledFunction &f, const HerzParams &hp) {
  return herz_norm(f, hp, AnnulusRange::full(f.grid));
}

/// (int |f(x)|^p |x|^{alpha p} dx)^{1/p} with cell-center weights; the origin cell is skipped for alpha < 0.
inline NormValue weighted_lp_norm(const SampledFunction &f, double alpha, double p) {
  detail::require_positive(p, "p");
  const Grid &g = f.grid;
  auto geo = geometry(g);
  std::vector<double> a = abs_values(f);
  const double h = g.spacing();
  if (alpha != 0.0)
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (geo->d2[i] == 0)
        a[i] = 0.0;
      else
        a[i] *= std::pow(h * std::sqrt(double(geo->d2[i])), alpha);
    }
  NormValue out;
  const bool skip_origin = alpha < 0.0;
  out.value = detail::masked_lq(a, p, g.cell_volume(),
                                [&](std::size_t i) { return !(skip_origin && geo->d2[i] == 0); });
  return out;
}

/**
 * @brief Morrey quasi-norm sup_B |B|^{1/p - 1/u} ||f chi_B||_u over a finite ball family.
 *
 * Radii are spacing * 2^l for l = 0..log2(N/2), centers on a lattice of stride max(1, N/64)
 * cells, and the whole torus is included as one more ball. Balls use minimal-image distance
 * so no cell is counted twice, and |B| is the discrete volume (cell count times cell volume).
 */
inline NormValue morrey_norm(const SampledFunction &f, const MorreyParams &mp) {
  detail::require_positive(mp.u, "u");
  detail::require_positive(mp.p, "p");
  if (std::isinf(mp.u) || std::isinf(mp.p))
    throw ParameterError("Morrey exponents must be finite");
  if (mp.u > mp.p)
    throw ParameterError("Morrey norm needs u <= p");
  const Grid &g = f.grid;
  const int N = g.N;
  const int rows = g.dim == 1 ? 1 : N;
  const auto a = abs_values(f);
  double M = 0.0;
  for (double x : a)
    M = std::max(M, x);
  NormValue out;
  if (M == 0.0)
    return out;
  const double expo = 1.0 / mp.p - 1.0 / mp.u;
  const double cv = g.cell_volume();

  // whole domain, summed in the same order as lebesgue_norm
  {
    const double whole = detail::masked_lq(a, mp.u, cv, [](std::size_t) { return true; });
    out.value = std::pow(double(g.size()) * cv, expo) * whole;
  }

  // doubled per-row prefix sums of (|f|/M)^u so wrapped intervals are contiguous
  std::vector<double> pre(std::size_t(rows) * (2 * N + 1), 0.0);
  for (int r = 0; r < rows; ++r) {
    double *P = &pre[std::size_t(r) * (2 * N + 1)];
    for (int c = 0; c < 2 * N; ++c)
      P[c + 1] = P[c] + std::pow(a[std::size_t(r) * N + (c % N)] / M, mp.u);
  }
  auto row_sum = [&](int r, int c0, int len) {
    const double *P = &pre[std::size_t(r) * (2 * N + 1)];
    return std::max(0.0, P[c0 + len] - P[c0]);
  };

  const int stride = std::max(1, N / 64);
  const int lmax = g.log2N() - 1;
  const int lo = -N / 2, hi = N / 2 - 1;
  for (int l = 0; l <= lmax; ++l) {
    const long long R = 1LL << l;
    const long long R2 = R * R;
    for (int cy = 0; cy < (g.dim == 1 ? 1 : N); cy += (g.dim == 1 ? 1 : stride))
      for (int cx = 0; cx < N; cx += stride) {
        double acc = 0.0;
        long long cnt = 0;
        const int dylo = g.dim == 1 ? 0 : int(std::max<long long>(lo, -R));
        const int dyhi = g.dim == 1 ? 0 : int(std::min<long long>(hi, R));
        for (int dy = dylo; dy <= dyhi; ++dy) {
          const long long rem = R2 - (long long)dy * dy;
          long long w = (long long)std::sqrt(double(rem));
          while (w * w > rem)
            --w;
          while ((w + 1) * (w + 1) <= rem)
            ++w;
          const int a0 = int(std::max<long long>(lo, -w));
          const int a1 = int(std::min<long long>(hi, w));
          const int len = a1 - a0 + 1;
          const int r = g.dim == 1 ? 0 : int(wrap_index((long long)cy + dy, N));
          acc += row_sum(r, int(wrap_index((long long)cx + a0, N)), len);
          cnt += len;
        }
        const double vol = double(cnt) * cv;
        const double val = std::pow(vol, expo) * M * std::pow(acc * cv, 1.0 / mp.u);
        out.value = std::max(out.value, val);
      }
  }
  return out;
}

namespace detail {

// Block samples below this fraction of max|f| are FFT roundoff. Norms with an exponent
// below one would otherwise pick up a noise term that does not scale with f.
inline constexpr double kBlockRoundoffFloor = 1e-14;

inline std::vector<SampledFunction> norm_blocks(const DyadicSystem &sys, const SampledFunction &f,
                                                bool homogeneous) {
  auto blocks = lp_blocks(sys, f, homogeneous);
  const double floor = kBlockRoundoffFloor * f.max_abs();
  for (auto &b : blocks)
    for (auto &z : b.values)
      if (std::abs(z) < floor)
        z = 0.0;
  return blocks;
}

inline void require_finite_tl(const HerzParams &hp) {
  if (std::isinf(hp.p) || std::isinf(hp.q))
    throw ParameterError("Triebel-Lizorkin type norms need finite p and q");
}

/// x -> (sum_j (2^{js} |b_j(x)|)^beta)^{1/beta}, or the pointwise max for beta = inf.
inline SampledFunction square_function(const std::vector<SampledFunction> &blocks, int j0, double s,
                                       double beta) {
  SampledFunction g(blocks.front().grid);
  const std::size_t n = g.size();
  std::vector<double> w(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    w[b] = std::exp2(double(j0 + int(b)) * s);
  std::vector<double> t(blocks.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      t[b] = w[b] * std::abs(blocks[b].values[i]);
    g.values[i] = lp_aggregate(t, beta);
  }
  return g;
}

template <class BaseNorm>
NormValue besov_pattern(const DyadicSystem &sys, const SampledFunction &f, const SmoothnessParams &sp,
                        bool homogeneous, BaseNorm base) {
  detail::require_positive(sp.beta, "beta");
  const auto blocks = detail::norm_blocks(sys, f, homogeneous);
  const int j0 = sys.j_lo(homogeneous);
  std::vector<double> t(blocks.size());
  NormValue out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const double v = base(blocks[b]);
    t[b] = v > 0.0 ? std::exp2(double(j0 + int(b)) * sp.s) * v : 0.0;
  }
  out.value = lp_aggregate(t, sp.beta);
  out.truncation_diag = homogeneous ? std::max(t.front(), t.back()) : t.back();
  return out;
}

template <class BaseNorm>
NormValue tl_pattern(const DyadicSystem &sys, const SampledFunction &f, const SmoothnessParams &sp,
                     bool homogeneous, BaseNorm base) {
  detail::require_positive(sp.beta, "beta");
  const auto blocks = detail::norm_blocks(sys, f, homogeneous);
  const int j0 = sys.j_lo(homogeneous);
  NormValue out;
  out.value = base(square_function(blocks, j0, sp.s, sp.beta));
  const double top = std::exp2(double(sys.j_max) * sp.s);
  double diag = base(blocks.back()) * top;
  if (homogeneous)
    diag = std::max(diag, base(blocks.front()) * std::exp2(double(j0) * sp.s));
  out.truncation_diag = diag;
  return out;
}

} // namespace detail

/// Herz-type Besov norm: l^beta over blocks of 2^{js} ||block_j||_{Herz}.
inline NormValue herz_besov_norm(const SampledFunction &f, const HerzParams &hp,
                                 const SmoothnessParams &sp, const DyadicSystem &sys,
                                 bool homogeneous) {
  return detail::besov_pattern(sys, f, sp, homogeneous,
                               [&](const SampledFunction &b) { return herz_norm(b, hp).value; });
}

/// Per-block terms 2^{js} ||block_j||_{Herz}, j from j_lo upward.
inline std::vector<double> herz_besov_terms(const SampledFunction &f, const HerzParams &hp,
                                            const SmoothnessParams &sp, const DyadicSystem &sys,
                                            bool homogeneous) {
  const auto blocks = detail::norm_blocks(sys, f, homogeneous);
  const int j0 = sys.j_lo(homogeneous);
  std::vector<double> t(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    t[b] = std::exp2(double(j0 + int(b)) * sp.s) * herz_norm(blocks[b], hp).value;
  return t;
}

/// Herz-type Triebel-Lizorkin norm: Herz norm of the pointwise l^beta square function.
inline NormValue herz_tl_norm(const SampledFunction &f, const HerzParams &hp, const SmoothnessParams &sp,
                              const DyadicSystem &sys, bool homogeneous) {
  detail::require_finite_tl(hp);
  return detail::tl_pattern(sys, f, sp, homogeneous,
                            [&](const SampledFunction &b) { return herz_norm(b, hp).value; });
}

inline NormValue besov_morrey_norm(const SampledFunction &f, const MorreyParams &mp,
                                   const SmoothnessParams &sp, const DyadicSystem &sys,
                                   bool homogeneous) {
  return detail::besov_pattern(sys, f, sp, homogeneous,
                               [&](const SampledFunction &b) { return morrey_norm(b, mp).value; });
}

inline NormValue tl_morrey_norm(const SampledFunction &f, const MorreyParams &mp,
                                const SmoothnessParams &sp, const DyadicSystem &sys, bool homogeneous) {
  return detail::tl_pattern(sys, f, sp, homogeneous,
                            [&](const SampledFunction &b) { return morrey_norm(b, mp).value; });
}

namespace detail {

inline void herz_window_warning(const Grid &g, const HerzParams &hp, NormValue &out) {
  const double n = g.dim;
  const bool ok = hp.q > 1.0 && std::isfinite(hp.q) && hp.alpha > -n / hp.q &&
                  hp.alpha < n * (1.0 - 1.0 / hp.q);
  if (!ok)
    out.warnings.push_back("outside 1<q<inf, -n/q<alpha<n(1-1/q)");
}

} // namespace detail

/// Herz norm of (1 + |xi|^2)^{s/2} f.
inline NormValue bessel_potential_norm(const SampledFunction &f, const HerzParams &hp, double s) {
  NormValue out = herz_norm(bessel_multiplier(f, s), hp);
  detail::herz_window_warning(f.grid, hp, out);
  return out;
}

/// sum over |beta| <= m of ||d^beta f||_{Herz}.
inline NormValue sobolev_herz_norm(const SampledFunction &f, const HerzParams &hp, int m) {
  if (m < 0)
    throw ParameterError("Sobolev order must be nonnegative");
  NormValue out;
  for (int k = 0; k <= m; ++k) {
    if (f.grid.dim == 1) {
      out.value += herz_norm(spectral_derivative(f, {k, 0}), hp).value;
    } else {
      for (int b0 = k; b0 >= 0; --b0)
        out.value += herz_norm(spectral_derivative(f, {b0, k - b0}), hp).value;
    }
  }
  if (m > 0)
    detail::herz_window_warning(f.grid, hp, out);
  return out;
}

/// A named quasi-norm family with its parameters, used by interpolation and the CLI.
struct SpaceBundle {
  enum class Family { herz, besov, tl };
  Family family = Family::herz;
  HerzParams hp;
  SmoothnessParams sp;
  bool homogeneous = false;
};

inline double bundle_norm(const SampledFunction &f, const SpaceBundle &b, const DyadicSystem &sys) {
  switch (b.family) {
  case SpaceBundle::Family::herz:
    return herz_norm(f, b.hp).value;
  case SpaceBundle::Family::besov:
    return herz_besov_norm(f, b.hp, b.sp, sys, b.homogeneous).value;
  case SpaceBundle::Family::tl:
    return herz_tl_norm(f, b.hp, b.sp, sys, b.homogeneous).value;
  }
  return 0.0;
}

namespace detail {

inline double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }
inline double from_inv(double y) { return y == 0.0 ? kInf : 1.0 / y; }

} // namespace detail

/// Parameters at theta: alpha and s affine, 1/p, 1/q, 1/beta affine.
inline SpaceBundle interpolate_bundle(const SpaceBundle &a, const SpaceBundle &b, double theta) {
  if (a.family != b.family || a.homogeneous != b.homogeneous)
    throw ParameterError("interpolation needs bundles of the same family");
  using detail::from_inv;
  using detail::inv;
  SpaceBundle c = a;
  const double t = theta, u = 1.0 - theta;
  c.hp.alpha = u * a.hp.alpha + t * b.hp.alpha;
  c.hp.p = from_inv(u * inv(a.hp.p) + t * inv(b.hp.p));
  c.hp.q = from_inv(u * inv(a.hp.q) + t * inv(b.hp.q));
  c.sp.s = u * a.sp.s + t * b.sp.s;
  c.sp.beta = from_inv(u * inv(a.sp.beta) + t * inv(b.sp.beta));
  return c;
}

struct InterpolationResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// ||f||_theta against ||f||_0^{1-theta} ||f||_1^theta.
inline InterpolationResult interpolation_check(const SampledFunction &f, const SpaceBundle &a,
                                               const SpaceBundle &b, double theta,
                                               const DyadicSystem &sys) {
  if (!(theta > 0.0 && theta < 1.0))
    throw ParameterError("theta must lie in (0, 1)");
  const SpaceBundle c = interpolate_bundle(a, b, theta);
  InterpolationResult r;
  r.lhs = bundle_norm(f, c, sys);
  const double n0 = bundle_norm(f, a, sys), n1 = bundle_norm(f, b, sys);
  r.rhs = (n0 == 0.0 || n1 == 0.0) ? 0.0 : std::pow(n0, 1.0 - theta) * std::pow(n1, theta);
  return r;
}

} // namespace fsx
