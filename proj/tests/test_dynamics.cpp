#include <doctest.h>

#include <random>

#include "imploder/dynamics.hpp"

using namespace imploder;

namespace {
const PolynomialMap z2 = PolynomialMap::from_real({0, 0, 1});
const PolynomialMap z2m2 = PolynomialMap::from_real({-2, 0, 1});
}  // namespace

TEST_CASE("multiplier classification") {
  CHECK(classify_multiplier(Complex(0)).kind == StabilityKind::Superattracting);
  CHECK(classify_multiplier(Complex(1)) ==
        MultiplierClass{StabilityKind::Parabolic, 1});
  CHECK(classify_multiplier(Complex(-1)) ==
        MultiplierClass{StabilityKind::Parabolic, 2});
  CHECK(classify_multiplier(Complex(0.5, 0.1)).kind ==
        StabilityKind::Attracting);
  CHECK(classify_multiplier(Complex(2)).kind == StabilityKind::Repelling);
  Complex lambda = std::exp(Complex(0, M_PI * (std::sqrt(5.0) - 1.0)));
  CHECK(classify_multiplier(lambda).kind == StabilityKind::Elliptic);
  CHECK_THROWS_AS(classify_multiplier(Complex(1), 1e-9, 24, true), Error);
}

TEST_CASE("fixed points of quadratics") {
  auto fps = fixed_points(z2);
  REQUIRE(fps.size() == 2);
  for (const auto& rec : fps) {
    if (std::abs(rec.location) < 0.5) {
      CHECK(rec.cls.kind == StabilityKind::Superattracting);
      CHECK(std::abs(rec.multiplier) < 1e-9);
    } else {
      CHECK(std::abs(rec.location - Complex(1)) < 1e-9);
      CHECK(std::abs(rec.multiplier - Complex(2)) < 1e-9);
      CHECK(rec.cls.kind == StabilityKind::Repelling);
    }
  }

  fps = fixed_points(z2m2);
  REQUIRE(fps.size() == 2);
  for (const auto& rec : fps) {
    if (rec.location.real() > 0) {
      CHECK(std::abs(rec.location - Complex(2)) < 1e-9);
      CHECK(std::abs(rec.multiplier - Complex(4)) < 1e-9);
    } else {
      CHECK(std::abs(rec.location - Complex(-1)) < 1e-9);
      CHECK(std::abs(rec.multiplier - Complex(-2)) < 1e-9);
    }
    CHECK(rec.cls.kind == StabilityKind::Repelling);
  }
}

TEST_CASE("parabolic fixed point of z + z^2") {
  auto fps = fixed_points(PolynomialMap::from_real({0, 1, 1}));
  REQUIRE(fps.size() == 2);  // double root at 0
  for (const auto& rec : fps) {
    CHECK(std::abs(rec.location) < 1e-9);
    CHECK(rec.cls == MultiplierClass{StabilityKind::Parabolic, 1});
  }
}

TEST_CASE("fixed point count matches the degree") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int deg = 2; deg <= 5; ++deg) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Complex> c(size_t(deg) + 1);
      for (auto& x : c) x = Complex(unit(rng), unit(rng));
      c.back() += Complex(2.0);
      CHECK(fixed_points(PolynomialMap(c)).size() == size_t(deg));
    }
  }
}

TEST_CASE("periodic points of z^2, period 2") {
  auto pts = periodic_points(z2, 2);
  REQUIRE(pts.size() == 2);
  Complex omega = std::polar(1.0, 2.0 * M_PI / 3.0);
  for (const auto& rec : pts) {
    CHECK(std::min(std::abs(rec.location - omega),
                   std::abs(rec.location - std::conj(omega))) < 1e-9);
    CHECK(std::abs(rec.multiplier - Complex(4)) < 1e-8);
    CHECK(rec.cls.kind == StabilityKind::Repelling);
    CHECK(rec.period == 2);
  }
}

TEST_CASE("periodic_points at period 1 equals fixed_points") {
  auto a = periodic_points(z2m2, 1);
  auto b = fixed_points(z2m2);
  REQUIRE(a.size() == b.size());
}

TEST_CASE("superattracting 2-cycle of z^2 - 1") {
  auto pts = periodic_points(PolynomialMap::from_real({-1, 0, 1}), 2);
  REQUIRE(pts.size() == 2);
  for (const auto& rec : pts) {
    CHECK(std::min(std::abs(rec.location), std::abs(rec.location + 1.0)) <
          1e-9);
    CHECK(std::abs(rec.multiplier) < 1e-8);
    CHECK(rec.cls.kind == StabilityKind::Superattracting);
  }
}

TEST_CASE("cycle multiplier equals the derivative of the iterate") {
  PolynomialMap p = PolynomialMap::from_real({-1, 0, 1});
  PolynomialMap p2 = compose(p, p);
  PolynomialMap dp2 = deriv(p2);
  for (const auto& rec : periodic_points(p, 2)) {
    Complex direct = dp2(rec.location);
    CHECK(std::abs(rec.multiplier - direct) <=
          1e-8 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("repelling points of z^2 up to period 4 sit on the unit circle") {
  for (int period = 1; period <= 4; ++period) {
    for (const auto& rec : periodic_points(z2, period)) {
      if (rec.cls.kind != StabilityKind::Repelling) continue;
      CHECK(std::abs(std::abs(rec.location) - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("orbit traces") {
  OrbitTrace fixed = orbit(z2, Complex(0), 10, 2.0);
  CHECK(!fixed.escaped);
  CHECK(fixed.points.size() == 11);
  for (Complex z : fixed.points) CHECK(std::abs(z) == 0.0);

  OrbitTrace esc = orbit(z2, Complex(2), 10, 2.0);
  CHECK(esc.escaped);
  CHECK(esc.escape_index == 1);
  CHECK(esc.points.size() == 2);

  OrbitTrace chebyshev = orbit(z2m2, Complex(0.5), 500, 4.0);
  CHECK(!chebyshev.escaped);
  for (Complex z : chebyshev.points) {
    CHECK(std::abs(z.imag()) < 1e-12);
    CHECK(z.real() >= -2.0 - 1e-12);
    CHECK(z.real() <= 2.0 + 1e-12);
  }
}
