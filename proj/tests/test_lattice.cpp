#include "catch_amalgamated.hpp"

#include <cmath>
#include <filesystem>
#include <random>

#include "fsx/grid_io.hpp"
#include "fsx/lattice.hpp"
#include "fsx/quasinorms.hpp"

using namespace fsx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SampledFunction sample(const Grid &g, auto fn) {
  SampledFunction f(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.N; ++i)
      f.values[i] = fn(g.coord(i), 0.0);
  } else {
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j)
        f.values[std::size_t(i) * g.N + j] = fn(g.coord(i), g.coord(j));
  }
  return f;
}

SampledFunction random_function(const Grid &g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  SampledFunction f(g);
  for (auto &z : f.values)
    z = cplx(d(rng), d(rng));
  return f;
}

} // namespace

TEST_CASE("grid construction validates its arguments", "[lattice]") {
  CHECK_THROWS_AS(Grid::make(3, 4, 64), RangeError);
  CHECK_THROWS_AS(Grid::make(1, 4, 100), RangeError);
  CHECK_THROWS_AS(Grid::make(1, 4, 8), RangeError);
  const Grid g = Grid::make(1, 2, 64);
  CHECK(g.spacing() == 0.125);
  CHECK(g.spacing() * g.N == std::ldexp(1.0, g.K + 1));
  CHECK(g.coord(0) == -4.0);
  CHECK(g.coord(32) == 0.0);
  CHECK(Grid::default_for(1) == Grid::make(1, 4, 4096));
  CHECK(Grid::default_for(2) == Grid::make(2, 3, 256));
}

TEST_CASE("annulus C_0 on a coarse 1D grid holds the cell centers with 1/2 < |x| <= 1", "[lattice]") {
  const Grid g = Grid::make(1, 2, 64);
  const auto m = annulus_mask(g, 0);
  int count = 0, expected = 0;
  for (int i = 0; i < g.N; ++i) {
    const double x = std::abs(g.coord(i));
    const bool inside = x > 0.5 && x <= 1.0;
    expected += inside;
    count += m.values[i].real() == 1.0;
    CHECK(m.values[i].real() == (inside ? 1.0 : 0.0));
  }
  CHECK(expected == 8);
  CHECK(count == 8);
}

TEST_CASE("annulus beyond the domain is rejected", "[lattice]") {
  for (const Grid &g : {Grid::make(1, 2, 64), Grid::make(2, 3, 256), Grid::make(1, -1, 32)})
    CHECK_THROWS_AS(annulus_mask(g, g.K + 1), RangeError);
}

TEST_CASE("annuli partition the punctured ball pointwise in 2D", "[lattice]") {
  const Grid g = Grid::make(2, 3, 256);
  std::vector<int> total(g.size(), 0);
  for (int k = g.spacing_log2(); k <= g.K; ++k) {
    const auto m = annulus_mask(g, k);
    for (std::size_t i = 0; i < g.size(); ++i)
      total[i] += int(m.values[i].real());
  }
  const double R = g.halfwidth();
  for (int a = 0; a < g.N; ++a)
    for (int b = 0; b < g.N; ++b) {
      const double r = std::hypot(g.coord(a), g.coord(b));
      const int want = (r > 0.0 && r <= R) ? 1 : 0;
      REQUIRE(total[std::size_t(a) * g.N + b] == want);
    }
}

TEST_CASE("zero dilation is the identity bitwise", "[lattice]") {
  const Grid g = Grid::make(1, 4, 256);
  const auto f = random_function(g, 3);
  const auto h = dilate_dyadic(f, 0);
  CHECK(h.grid == g);
  CHECK(h.values == f.values);
}

TEST_CASE("dilating a Gaussian reproduces the analytic formula", "[lattice]") {
  for (int dim : {1, 2}) {
    const Grid g = Grid::default_for(dim);
    const auto f = sample(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
    const auto h = dilate_dyadic(f, 1);
    const auto want = sample(h.grid, [](double x, double y) { return std::exp(-4.0 * (x * x + y * y)); });
    double err = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i)
      err = std::max(err, std::abs(h.values[i] - want.values[i]));
    CHECK(err <= 1e-14);
  }
}

TEST_CASE("dilation maps C_0 onto C_{-1}", "[lattice]") {
  for (int dim : {1, 2}) {
    const Grid g = Grid::default_for(dim);
    const auto h = dilate_dyadic(annulus_mask(g, 0), 1);
    const auto want = annulus_mask(h.grid, -1);
    CHECK(h.values == want.values);
  }
}

TEST_CASE("dilation round trip is exact", "[lattice]") {
  const Grid g = Grid::make(2, 3, 64);
  const auto f = random_function(g, 11);
  for (int m : {-2, -1, 1, 2}) {
    const auto back = dilate_dyadic(dilate_dyadic(f, m), -m);
    CHECK(back.grid == g);
    CHECK(back.values == f.values);
  }
}

TEST_CASE("translation by zero is the identity and translations invert", "[lattice]") {
  const Grid g = Grid::make(2, 2, 32);
  const auto f = random_function(g, 5);
  CHECK(translate(f, {0, 0}).values == f.values);
  for (Offset h : {Offset{1, 0}, Offset{-3, 7}, Offset{40, -33}}) {
    const auto back = translate(translate(f, h), {-h[0], -h[1]});
    CHECK(back.values == f.values);
  }
}

TEST_CASE("translation preserves every unweighted L^p norm", "[lattice]") {
  const Grid g = Grid::make(1, 3, 512);
  const auto f = random_function(g, 17);
  for (double p : {0.5, 1.0, 2.0, 3.5, kInf}) {
    const double base = lebesgue_norm(f, p).value;
    for (Offset h : {Offset{1, 0}, Offset{-100, 0}, Offset{511, 0}})
      CHECK_THAT(lebesgue_norm(translate(f, h), p).value, WithinRel(base, 1e-13));
  }
}

TEST_CASE("a single-cell indicator at the origin moves to the offset cell", "[lattice]") {
  const Grid g = Grid::make(2, 2, 32);
  SampledFunction delta(g);
  const std::size_t c = g.N / 2;
  delta.values[c * g.N + c] = 1.0;
  const auto moved = translate(delta, {1, 0});
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(moved.values[i].real() == (i == (c + 1) * g.N + c ? 1.0 : 0.0));
  CHECK(g.coord(int(c + 1)) == g.spacing());
}

TEST_CASE("FSX1 grid files round-trip exactly", "[lattice][io]") {
  for (const Grid &g : {Grid::make(1, -3, 64), Grid::make(2, 5, 16)}) {
    const auto f = random_function(g, 23);
    const auto path = std::filesystem::temp_directory_path() / ("fsx_roundtrip_" + std::to_string(g.dim) + ".fsx");
    save_fsx(path.string(), f);
    const auto back = load_fsx(path.string());
    std::filesystem::remove(path);
    CHECK(back.grid == g);
    CHECK(back.values == f.values);
  }
}

TEST_CASE("FSX1 reader rejects malformed input", "[lattice][io]") {
  const auto path = std::filesystem::temp_directory_path() / "fsx_bad.fsx";
  {
    std::ofstream out(path, std::ios::binary);
    out << "FSX2garbage";
  }
  CHECK_THROWS_AS(load_fsx(path.string()), FormatError);
  {
    std::ofstream out(path, std::ios::binary);
    out.write("FSX1", 4);
    const unsigned char dim = 1;
    const signed char K = 2;
    const std::uint32_t N = 64;
    out.write(reinterpret_cast<const char *>(&dim), 1);
    out.write(reinterpret_cast<const char *>(&K), 1);
    out.write(reinterpret_cast<const char *>(&N), 4);
    const double half = 0.5;
    out.write(reinterpret_cast<const char *>(&half), sizeof half);
  }
  CHECK_THROWS_AS(load_fsx(path.string()), FormatError);
  std::filesystem::remove(path);
}
