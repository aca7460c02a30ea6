#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "opuckit/grid.hpp"
#include "opuckit/measure.hpp"

using namespace opuckit;
using Catch::Approx;

TEST_CASE("unit grid validation", "[grid]") {
  REQUIRE_THROWS_AS(UnitGrid(7), Error);
  REQUIRE_THROWS_AS(UnitGrid(4), Error);
  REQUIRE_THROWS_AS(UnitGrid(-16), Error);
  UnitGrid g(64);
  REQUIRE(g.size() == 64);
  for (int j = 0; j < 64; ++j) REQUIRE(std::abs(std::abs(g.point(j)) - 1.0) < 1e-14);
}

TEST_CASE("atom snapping onto grid nodes", "[grid]") {
  UnitGrid g(256);
  REQUIRE(g.snap_index(Complex{1.0, 0.0}) == 0);
  REQUIRE(g.snap_index(g.point(17)) == 17);
  REQUIRE(g.snap_index(std::polar(1.0, 2.0 * pi * 100 / 256 + 1e-14), 1e-12) == 100);
  REQUIRE_THROWS_AS(g.snap_index(std::polar(1.0, 2.0 * pi * (100.4) / 256)), Error);
}

TEST_CASE("grid functions reject bad samples", "[grid]") {
  auto g = UnitGrid::make(8);
  REQUIRE_THROWS_AS(GridFunction(g, std::vector<Complex>(7)), Error);
  std::vector<Complex> v(8, Complex{0.0, 0.0});
  v[3] = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
  REQUIRE_THROWS_AS(GridFunction(g, v), Error);
}

TEST_CASE("fourier coefficients of simple functions", "[grid]") {
  auto g = UnitGrid::make(64);

  SECTION("constant function") {
    auto f = sample_on_grid(g, [](Complex) { return Complex{1.0, 0.0}; });
    auto c = fourier_coeffs(f, 10);
    REQUIRE(std::abs(c.at(0) - Complex{1.0, 0.0}) < 1e-14);
    for (int k = 1; k <= 10; ++k) {
      REQUIRE(std::abs(c.at(k)) < 1e-14);
      REQUIRE(std::abs(c.at(-k)) < 1e-14);
    }
  }

  SECTION("monomial t^3 concentrates in one coefficient") {
    auto f = sample_on_grid(g, [](Complex t) { return t * t * t; });
    auto c = fourier_coeffs(f, 10);
    // c_k approximates the integral of t^{-k} f, so t^3 lands at k = +3
    REQUIRE(std::abs(c.at(3) - Complex{1.0, 0.0}) < 1e-12);
    for (int k = -10; k <= 10; ++k)
      if (k != 3) REQUIRE(std::abs(c.at(k)) < 1e-12);
  }

  SECTION("squared modulus |1 - t/2|^2") {
    auto f = sample_on_grid(g, [](Complex t) { return Complex{std::norm(1.0 - t / 2.0), 0.0}; });
    auto c = fourier_coeffs(f, 5);
    REQUIRE(std::abs(c.at(0) - Complex{1.25, 0.0}) < 1e-12);
    REQUIRE(std::abs(c.at(1) - Complex{-0.5, 0.0}) < 1e-12);
    REQUIRE(std::abs(c.at(-1) - Complex{-0.5, 0.0}) < 1e-12);
    for (int k = 2; k <= 5; ++k) {
      REQUIRE(std::abs(c.at(k)) < 1e-12);
      REQUIRE(std::abs(c.at(-k)) < 1e-12);
    }
  }

  SECTION("aliasing guard") {
    auto f = sample_on_grid(g, [](Complex) { return Complex{1.0, 0.0}; });
    REQUIRE_THROWS_AS(fourier_coeffs(f, 32), Error);
  }
}

TEST_CASE("mean of sample functions", "[grid]") {
  auto g = UnitGrid::make(512);
  auto c = sample_on_grid(g, [](Complex) { return Complex{0.3, -0.7}; });
  REQUIRE(std::abs(mean(c) - Complex{0.3, -0.7}) < 1e-14);
  auto t1 = sample_on_grid(g, [](Complex t) { return t; });
  REQUIRE(std::abs(mean(t1)) < 1e-14);
  auto poisson = sample_on_grid(g, [](Complex t) { return Complex{((1.0 + t / 2.0) / (1.0 - t / 2.0)).real(), 0.0}; });
  REQUIRE(std::abs(mean(poisson) - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("parseval and synthesis on band-limited data", "[grid]") {
  auto g = UnitGrid::make(256);
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int kmax = 20;
  std::vector<Complex> coeff(2 * kmax + 1);
  for (Complex& z : coeff) z = Complex{u(rng), u(rng)};
  FourierTable table(kmax, coeff);
  GridFunction f = synthesize(table, g);

  auto c2 = fourier_coeffs(f, kmax);
  double sum = 0.0;
  double rec = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    sum += std::norm(c2.at(k));
    rec = std::max(rec, std::abs(c2.at(k) - table.at(k)));
  }
  auto f2 = sample_on_grid(g, [&](Complex) { return Complex{0.0, 0.0}; });
  double m2 = 0.0;
  for (int j = 0; j < 256; ++j) m2 += std::norm(f[j]);
  m2 /= 256.0;
  REQUIRE(std::abs(sum - m2) < 1e-10);  // Parseval
  REQUIRE(rec < 1e-12);                 // analysis inverts synthesis
  (void)f2;
}

TEST_CASE("integration against measures", "[grid][measure]") {
  auto g = UnitGrid::make(512);
  CircleMeasure lebesgue = CircleMeasure::lebesgue(g);
  std::vector<double> half(512, 0.5);
  CircleMeasure mixed(g, half, {Atom{0, 0.5}});

  auto one = sample_on_grid(g, [](Complex) { return Complex{1.0, 0.0}; });
  auto t1 = sample_on_grid(g, [](Complex t) { return t; });

  REQUIRE(std::abs(integrate_measure(one, lebesgue) - Complex{1.0, 0.0}) < 1e-12);
  REQUIRE(std::abs(integrate_measure(one, mixed) - Complex{1.0, 0.0}) < 1e-12);
  REQUIRE(std::abs(integrate_measure(t1, lebesgue)) < 1e-13);
  REQUIRE(std::abs(integrate_measure(t1, mixed) - Complex{0.5, 0.0}) < 1e-13);

  SECTION("linearity in the function and additivity over atoms") {
    auto f = sample_on_grid(g, [](Complex t) { return t * t + Complex{0.25, 0.0}; });
    const Complex a = integrate_measure(f, mixed);
    const Complex b = integrate_measure(t1, mixed);
    auto combo = sample_on_grid(g, [](Complex t) { return t * t + Complex{0.25, 0.0} + 2.0 * t; });
    REQUIRE(std::abs(integrate_measure(combo, mixed) - (a + 2.0 * b)) < 1e-13);

    std::vector<Atom> two_atoms{Atom{0, 0.25}, Atom{256, 0.25}};
    CircleMeasure m2(g, half, two_atoms);
    const Complex density_part = integrate_measure(f, mixed) - 0.5 * f.value_at(0);
    const Complex expect = density_part + 0.25 * f.value_at(0) + 0.25 * f.value_at(256);
    REQUIRE(std::abs(integrate_measure(f, m2) - expect) < 1e-13);
  }
}

TEST_CASE("measure construction guards", "[measure]") {
  auto g = UnitGrid::make(256);
  std::vector<double> w(256, 1.0);
  SECTION("negative density rejected") {
    w[3] = -1e-6;
    REQUIRE_THROWS_AS(CircleMeasure(g, w), Error);
  }
  SECTION("tiny negative clipped") {
    w[3] = -1e-13;
    CircleMeasure mu(g, w);
    REQUIRE(mu.density()[3] == 0.0);
  }
  SECTION("total mass enforced") {
    std::vector<double> big(256, 1.5);
    REQUIRE_THROWS_AS(CircleMeasure(g, big), Error);
  }
  SECTION("atom index range and duplicates") {
    std::vector<double> half(256, 0.5);
    REQUIRE_THROWS_AS(CircleMeasure(g, half, {Atom{300, 0.5}}), Error);
    REQUIRE_THROWS_AS(CircleMeasure(g, half, {Atom{0, 0.25}, Atom{0, 0.25}}), Error);
    REQUIRE_THROWS_AS(CircleMeasure(g, half, {Atom{0, -0.5}}), Error);
  }
}
