#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "fsx/corpus.hpp"
#include "fsx/json_io.hpp"

using namespace fsx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Gaussian L^2 norm is (pi/2)^{n/4}", "[corpus]") {
  for (int dim : {1, 2}) {
    const Grid g = Grid::default_for(dim);
    const auto f = render(TestFunction::gaussian(1.0), g);
    CHECK_THAT(lebesgue_norm(f, 2.0).value, WithinRel(std::pow(std::numbers::pi / 2.0, dim / 4.0), 1e-10));
  }
}

TEST_CASE("power cutoff is |x|^a on its annuli and zero elsewhere", "[corpus]") {
  const Grid g = Grid::default_for(1);
  const auto f = render(TestFunction::power_cutoff(0.5, -1, 1, 2.0), g);
  for (int i = 0; i < g.N; ++i) {
    const double r = std::abs(g.coord(i));
    const double want = (r > 0.25 && r <= 2.0) ? 2.0 * std::sqrt(r) : 0.0;
    REQUIRE(f.values[i].real() == want);
  }
}

TEST_CASE("band-limited kernel has its spectrum inside |xi| <= 3R/2", "[corpus]") {
  for (int dim : {1, 2}) {
    const Grid g = Grid::default_for(dim);
    for (double R : {1.0, 4.0}) {
      const auto spec = dft(render(TestFunction::bandlimited_kernel(R), g));
      const auto mags = frequency_magnitudes(g);
      double outside = 0.0, inside = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double &slot = mags[i] > 1.5 * R ? outside : inside;
        slot = std::max(slot, std::abs(spec.values[i]));
      }
      CHECK(inside > 0.0);
      CHECK(outside <= 1e-13 * inside);
    }
  }
}

TEST_CASE("band-limited kernel approximates the inverse transform of the cutoff", "[corpus]") {
  // f(0) = (2 pi)^{-1/2} int phi0(xi / R) d xi = 2 R int_0^{3/2} phi0 / sqrt(2 pi) in 1D. The kernel is a
  // Riemann sum over bins of width pi/16, so R must be large enough to resolve the cutoff's transition.
  const Grid g = Grid::default_for(1);
  const double R = 16.0;
  const auto f = render(TestFunction::bandlimited_kernel(R), g);
  double integral = 0.0;
  const int steps = 200000;
  for (int k = 0; k < steps; ++k)
    integral += phi0((k + 0.5) * 1.5 / steps) * 1.5 / steps;
  CHECK_THAT(f.values[g.N / 2].real(), WithinRel(2.0 * R * integral / std::sqrt(2.0 * std::numbers::pi), 1e-6));
}

TEST_CASE("harmonic is a sum of cosines on grid bins", "[corpus]") {
  const Grid g = Grid::make(1, 2, 64);
  const auto f = render(TestFunction::harmonic({0, 3}), g);
  for (int i = 0; i < g.N; ++i)
    CHECK_THAT(f.values[i].real(), WithinAbs(1.0 + std::cos(3 * g.freq_spacing() * g.coord(i)), 1e-15));
  CHECK_THROWS_AS(render(TestFunction::harmonic({1}), Grid::make(2, 2, 32)), ParameterError);
}

TEST_CASE("functions that do not decay are rejected", "[corpus]") {
  const Grid g = Grid::default_for(1);
  CHECK_THROWS_AS(render(TestFunction::gaussian(0.001), g), TruncationError);
  CHECK_THROWS_AS(render(TestFunction::polynomial_window({1.0}, 12.0), g), TruncationError);
  CHECK_THROWS_AS(render(TestFunction::power_cutoff(0.0, 0, g.K + 1), g), RangeError);
  CHECK_THROWS_AS(render(TestFunction::bandlimited_kernel(1000.0), g), ResolutionError);
  CHECK_THROWS_AS(require_decay(render(TestFunction::harmonic({0}), g)), TruncationError);
}

TEST_CASE("closed-form Herz values", "[corpus]") {
  const HerzParams h2{0.7, 1.0, 2.0};
  CHECK_THAT(oracle_herz_norm(TestFunction::power_cutoff(0.0, 0, 0), 1, h2), WithinRel(1.0, 1e-15));
  CHECK_THAT(oracle_herz_norm(TestFunction::power_cutoff(1.0, 0, 0), 1, {0.0, 1.0, 1.0}), WithinRel(0.75, 1e-15));
  for (int k : {-2, 0, 3})
    CHECK_THAT(power_annulus_integral(1, -1.0, 1.0, k), WithinRel(2.0 * std::log(2.0), 1e-15));
  // 2D: int_{C_0} |x|^2 dx = 2 pi (1 - 1/16) / 4
  CHECK_THAT(power_annulus_integral(2, 1.0, 2.0, 0), WithinRel(2.0 * std::numbers::pi * (15.0 / 16.0) / 4.0, 1e-15));
  CHECK_THROWS_AS(oracle_herz_norm(TestFunction::gaussian(1.0), 1, h2), ParameterError);
  CHECK_THROWS_AS(oracle_herz_norm(TestFunction::power_cutoff(0.0, 0, 0), 1, {0.0, 1.0, kInf}), ParameterError);
}

TEST_CASE("closed-form Herz values agree with the computed norm and improve under refinement", "[corpus]") {
  const auto tf = TestFunction::power_cutoff(0.5, -2, 2);
  const HerzParams hp{0.25, 2.0, 2.0};
  const double exact = oracle_herz_norm(tf, 1, hp);
  const double coarse = std::abs(herz_norm(render(tf, Grid::make(1, 4, 4096)), hp).value / exact - 1.0);
  const double fine = std::abs(herz_norm(render(tf, Grid::make(1, 4, 8192)), hp).value / exact - 1.0);
  CHECK(coarse <= 0.005);
  CHECK(fine < coarse);
  CHECK(std::log2(coarse / fine) >= 1.0);
}

TEST_CASE("dilating a power cutoff shifts its annuli and scales its amplitude", "[corpus]") {
  const Grid g = Grid::default_for(1);
  const double a = 0.75;
  const auto f = render(TestFunction::power_cutoff(a, -1, 2), g);
  for (int m : {-1, 1, 2}) {
    const auto lhs = dilate_dyadic(f, m);
    const auto rhs = render(TestFunction::power_cutoff(a, -1 - m, 2 - m, std::exp2(m * a)), lhs.grid);
    double err = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
      err = std::max(err, std::abs(lhs.values[i] - rhs.values[i]));
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("corpus lists render on both default grids", "[corpus]") {
  CHECK(standard_corpus().size() == 20);
  for (int dim : {1, 2}) {
    const Grid g = Grid::default_for(dim);
    for (const auto &tf : standard_corpus()) {
      const auto f = render(tf, g);
      CHECK(f.all_finite());
      CHECK(f.max_abs() > 0.0);
    }
  }
  for (const auto &tf : multiscale_corpus())
    CHECK_NOTHROW(render(tf, Grid::default_for(1)));
}

TEST_CASE("test functions round-trip through JSON and have stable ids", "[corpus]") {
  for (const auto &tf : standard_corpus()) {
    const auto back = test_function_from_json(json::parse(test_function_to_json(tf).dump()));
    CHECK(back.id() == tf.id());
    CHECK(back.kind == tf.kind);
    CHECK(back.params == tf.params);
  }
  const auto h = test_function_from_json(json::parse(R"({"kind":"harmonic","bins":[1,2]})"));
  CHECK(h.bins == std::vector<int>{1, 2});
  CHECK_THROWS_AS(parse_kind("sawtooth"), SpecificationError);
}
