#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "fsx/errors.hpp"
#include "fsx/lattice.hpp"
#include "fsx/quasinorms.hpp"
#include "fsx/spectral.hpp"

namespace fsx {

enum class TestKind { gaussian, bump, annulus_indicator, power_cutoff, bandlimited_kernel, harmonic, polynomial_window };

inline const std::vector<std::pair<TestKind, std::string>> &test_kind_names() {
  static const std::vector<std::pair<TestKind, std::string>> v{
      {TestKind::gaussian, "gaussian"},
      {TestKind::bump, "bump"},
      {TestKind::annulus_indicator, "annulus_indicator"},
      {TestKind::power_cutoff, "power_cutoff"},
      {TestKind::bandlimited_kernel, "bandlimited_kernel"},
      {TestKind::harmonic, "harmonic"},
      {TestKind::polynomial_window, "polynomial_window"}};
  return v;
}

inline std::string kind_name(TestKind k) {
  for (const auto &[kk, s] : test_kind_names())
    if (kk == k)
      return s;
  return "?";
}

inline TestKind parse_kind(const std::string &s) {
  for (const auto &[kk, name] : test_kind_names())
    if (name == s)
      return kk;
  throw SpecificationError("unknown test function kind '" + s + "'");
}

/**
 * @brief Analytic test function.
 *
 * Scalar parameters live in params; polynomial_window keeps its coefficients in coeffs
 * and harmonic its frequency bins in bins (pairs in 2D).
 *
 * - gaussian: exp(-a |x|^2)
 * - bump: exp(1 - 1/(1 - (|x|/radius)^2)) inside the ball, so the peak is 1
 * - annulus_indicator: indicator of C_k = {2^{k-1} < |x| <= 2^k}
 * - power_cutoff: amplitude |x|^a on 2^{k1-1} < |x| <= 2^{k2}
 * - bandlimited_kernel: inverse Fourier transform of phi0(xi / R)
 * - harmonic: sum of cos(xi_b . x) over the listed grid bins
 * - polynomial_window: P(x_1) prod_a phi0(|x_a| / w)
 */
struct TestFunction {
  TestKind kind = TestKind::gaussian;
  std::map<std::string, double> params;
  std::vector<double> coeffs;
  std::vector<int> bins;

  double param(const std::string &k) const {
    auto it = params.find(k);
    if (it == params.end())
      throw SpecificationError(kind_name(kind) + " needs parameter '" + k + "'");
    return it->second;
  }

  static TestFunction gaussian(double a) { return {TestKind::gaussian, {{"a", a}}, {}, {}}; }
  static TestFunction bump(double radius) { return {TestKind::bump, {{"radius", radius}}, {}, {}}; }
  static TestFunction annulus_indicator(int k) { return {TestKind::annulus_indicator, {{"k", k}}, {}, {}}; }
  static TestFunction power_cutoff(double a, int k1, int k2, double amplitude = 1.0) {
    return {TestKind::power_cutoff, {{"a", a}, {"k1", k1}, {"k2", k2}, {"amplitude", amplitude}}, {}, {}};
  }
  static TestFunction bandlimited_kernel(double R) { return {TestKind::bandlimited_kernel, {{"R", R}}, {}, {}}; }
  static TestFunction harmonic(std::vector<int> bins) { return {TestKind::harmonic, {}, {}, std::move(bins)}; }
  static TestFunction polynomial_window(std::vector<double> coeffs, double w) {
    return {TestKind::polynomial_window, {{"w", w}}, std::move(coeffs), {}};
  }

  /// Stable identifier such as "gaussian(a=1)", used as the row key in reports.
  std::string id() const {
    auto num = [](double x) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      return std::string(buf);
    };
    std::string s = kind_name(kind) + "(";
    bool first = true;
    for (const auto &[k, v] : params) {
      s += (first ? "" : ",") + k + "=" + num(v);
      first = false;
    }
    if (!coeffs.empty()) {
      s += std::string(first ? "" : ",") + "coeffs=[";
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        s += (i ? ";" : "") + num(coeffs[i]);
      s += "]";
      first = false;
    }
    if (!bins.empty()) {
      s += std::string(first ? "" : ",") + "bins=[";
      for (std::size_t i = 0; i < bins.size(); ++i)
        s += (i ? ";" : "") + std::to_string(bins[i]);
      s += "]";
    }
    return s + ")";
  }

  bool operator==(const TestFunction &) const = default;
};

namespace detail {

inline int int_param(const TestFunction &tf, const std::string &k) {
  const double v = tf.param(k);
  if (v != std::floor(v))
    throw ParameterError(k + " must be an integer");
  return int(v);
}

/// 4^j as an exact squared cell radius relative to the spacing exponent e; -1 when below one cell.
inline long long shell_radius2(const Grid &g, int k) {
  const int j = k - g.spacing_log2();
  if (j < 0)
    return -1;
  if (2 * j > 60)
    return std::numeric_limits<long long>::max();
  return 1LL << (2 * j);
}

inline double cell_radius(const Grid &g, const GridGeometry &geo, std::size_t i) {
  return g.spacing() * std::sqrt(double(geo.d2[i]));
}

inline std::array<double, 2> cell_coords(const Grid &g, std::size_t i) {
  if (g.dim == 1)
    return {g.coord(int(i)), 0.0};
  return {g.coord(int(i / g.N)), g.coord(int(i % g.N))};
}

} // namespace detail

/// Relative L^2 mass of f on cells with max_a |x_a| > (7/8) 2^K.
inline double outer_band_mass(const SampledFunction &f) {
  const Grid &g = f.grid;
  const double edge = 0.875 * g.halfwidth();
  double out = 0.0, all = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = detail::cell_coords(g, i);
    const double w = std::norm(f.values[i]);
    all += w;
    if (std::abs(x[0]) > edge || (g.dim == 2 && std::abs(x[1]) > edge))
      out += w;
  }
  return all == 0.0 ? 0.0 : std::sqrt(out / all);
}

inline void require_decay(const SampledFunction &f, double tol = 1e-12) {
  const double m = outer_band_mass(f);
  if (m > tol)
    throw TruncationError("function is not negligible near the torus boundary (relative mass " +
                          std::to_string(m) + ")");
}

/// Samples tf at the cell centers of g; band-limited kinds are synthesized from their spectrum.
inline SampledFunction render(const TestFunction &tf, const Grid &g) {
  SampledFunction f(g);
  auto geo = geometry(g);
  switch (tf.kind) {
  case TestKind::gaussian: {
    const double a = tf.param("a");
    if (!(a > 0.0))
      throw ParameterError("gaussian needs a > 0");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = detail::cell_radius(g, *geo, i);
      f.values[i] = std::exp(-a * r * r);
    }
    break;
  }
  case TestKind::bump: {
    const double R = tf.param("radius");
    if (!(R > 0.0))
      throw ParameterError("bump needs radius > 0");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double t = detail::cell_radius(g, *geo, i) / R;
      f.values[i] = t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    }
    break;
  }
  case TestKind::annulus_indicator:
    f = annulus_mask(g, detail::int_param(tf, "k"));
    break;
  case TestKind::power_cutoff: {
    const double a = tf.param("a"), amp = tf.param("amplitude");
    const int k1 = detail::int_param(tf, "k1"), k2 = detail::int_param(tf, "k2");
    if (k1 > k2)
      throw ParameterError("power_cutoff needs k1 <= k2");
    if (k2 > g.K)
      throw RangeError("power_cutoff support exceeds the domain");
    // exact integer tests 2^{k1-1} < |x| <= 2^{k2} on squared cell radii
    const long long lo = detail::shell_radius2(g, k1 - 1), hi = detail::shell_radius2(g, k2);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const long long d2 = geo->d2[i];
      if (d2 > lo && hi >= 0 && d2 <= hi && d2 > 0)
        f.values[i] = amp * std::pow(detail::cell_radius(g, *geo, i), a);
    }
    break;
  }
  case TestKind::bandlimited_kernel: {
    const double R = tf.param("R");
    if (!(R > 0.0))
      throw ParameterError("bandlimited_kernel needs R > 0");
    const double nyq = g.freq_spacing() * (g.N / 2);
    if (1.5 * R >= nyq)
      throw ResolutionError("band radius exceeds the grid's Nyquist band");
    // f(x) = (2 pi)^{-n/2} int phi0(xi/R) e^{i x xi} d xi as a Riemann sum; x_i xi_k picks up (-1)^k
    SampledFunction spec(g);
    const auto mags = frequency_magnitudes(g);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      int parity = g.dim == 1 ? int(i) : int(i / g.N) + int(i % g.N);
      spec.values[i] = phi0(mags[i] / R) * ((parity & 1) ? -1.0 : 1.0);
    }
    f = idft(spec);
    const double C = std::pow(2.0 * std::numbers::pi, -0.5 * g.dim) * std::pow(g.freq_spacing(), g.dim) *
                     std::sqrt(double(g.size()));
    for (auto &z : f.values)
      z = cplx(C * z.real(), 0.0);
    break;
  }
  case TestKind::harmonic: {
    if (tf.bins.empty() || (g.dim == 2 && tf.bins.size() % 2 != 0))
      throw ParameterError("harmonic needs bins (pairs in 2D)");
    const double d = g.freq_spacing();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = detail::cell_coords(g, i);
      double v = 0.0;
      if (g.dim == 1)
        for (int b : tf.bins)
          v += std::cos(d * b * x[0]);
      else
        for (std::size_t b = 0; b < tf.bins.size(); b += 2)
          v += std::cos(d * (tf.bins[b] * x[0] + tf.bins[b + 1] * x[1]));
      f.values[i] = v;
    }
    break;
  }
  case TestKind::polynomial_window: {
    const double w = tf.param("w");
    if (!(w > 0.0))
      throw ParameterError("polynomial_window needs w > 0");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = detail::cell_coords(g, i);
      double p = 0.0;
      for (auto it = tf.coeffs.rbegin(); it != tf.coeffs.rend(); ++it)
        p = p * x[0] + *it;
      double win = phi0(std::abs(x[0]) / w);
      if (g.dim == 2)
        win *= phi0(std::abs(x[1]) / w);
      f.values[i] = p * win;
    }
    break;
  }
  }
  if (tf.kind != TestKind::harmonic && tf.kind != TestKind::bandlimited_kernel)
    require_decay(f);
  return f;
}

/// Surface measure of the unit sphere S^{n-1} for n = 1, 2.
inline double unit_sphere_measure(int n) {
  if (n == 1)
    return 2.0;
  if (n == 2)
    return 2.0 * std::numbers::pi;
  throw ParameterError("dimension must be 1 or 2");
}

/// Closed-form int_{C_k} |x|^{aq} dx.
inline double power_annulus_integral(int n, double a, double q, int k) {
  const double w = unit_sphere_measure(n);
  const double e = a * q + n;
  if (e == 0.0)
    return w * std::log(2.0);
  return w * (std::exp2(k * e) - std::exp2((k - 1) * e)) / e;
}

/// Herz norm of a power cutoff in closed form.
inline double oracle_herz_norm(const TestFunction &tf, int n, const HerzParams &hp) {
  if (tf.kind != TestKind::power_cutoff)
    throw ParameterError("closed-form Herz norm needs a power cutoff");
  if (std::isinf(hp.q))
    throw ParameterError("closed-form Herz norm needs finite q");
  const double a = tf.param("a"), amp = std::abs(tf.param("amplitude"));
  const int k1 = detail::int_param(tf, "k1"), k2 = detail::int_param(tf, "k2");
  std::vector<double> terms;
  for (int k = k1; k <= k2; ++k)
    terms.push_back(std::exp2(k * hp.alpha) * std::pow(power_annulus_integral(n, a, hp.q, k), 1.0 / hp.q));
  return amp * detail::lp_aggregate(terms, hp.p);
}

/// Gaussians and bumps, the smooth decaying functions the equivalence runs use.
inline std::vector<TestFunction> smooth_corpus() {
  return {TestFunction::gaussian(1.0), TestFunction::gaussian(2.0), TestFunction::gaussian(4.0),
          TestFunction::bump(2.0), TestFunction::bump(3.0)};
}

/// Gaussians and bumps whose widths span 2^-4 .. 2^1 in factors of two, so that dyadic dilations by
/// |m| <= 2 stay inside the family's range of scales. Equivalence constants are sups over f; a
/// family that covers the scales a dilation moves across measures the same sup at every m.
inline std::vector<TestFunction> multiscale_corpus() {
  std::vector<TestFunction> out;
  for (double a : {0.25, 1.0, 4.0, 16.0, 64.0, 256.0})
    out.push_back(TestFunction::gaussian(a));
  for (double r : {0.5, 2.0, 8.0})
    out.push_back(TestFunction::bump(r));
  return out;
}

/// Twenty functions covering every decaying kind; valid on both default grids.
inline std::vector<TestFunction> standard_corpus() {
  return {TestFunction::gaussian(1.0),
          TestFunction::gaussian(2.0),
          TestFunction::gaussian(4.0),
          TestFunction::gaussian(8.0),
          TestFunction::bump(1.0),
          TestFunction::bump(2.0),
          TestFunction::bump(3.0),
          TestFunction::bump(5.0),
          TestFunction::annulus_indicator(0),
          TestFunction::annulus_indicator(1),
          TestFunction::annulus_indicator(-1),
          TestFunction::power_cutoff(0.5, -1, 1),
          TestFunction::power_cutoff(-0.5, -2, 1),
          TestFunction::power_cutoff(1.0, 0, 2),
          TestFunction::power_cutoff(-1.0, -1, 0, 2.0),
          TestFunction::polynomial_window({1.0, 0.5}, 2.0),
          TestFunction::polynomial_window({0.0, 1.0, -0.25}, 3.0),
          TestFunction::polynomial_window({2.0, 0.0, 0.0, 0.1}, 1.5),
          TestFunction::bandlimited_kernel(2.0),
          TestFunction::bandlimited_kernel(4.0)};
}

} // namespace fsx
