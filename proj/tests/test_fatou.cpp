#include <doctest.h>

#include <random>

#include "imploder/fatou.hpp"

using namespace imploder;

namespace {

const PolynomialMap fig_cubic = PolynomialMap::from_real({0, 1, 1, 0.95});

ParabolicModel fig_model() {
  return normalize_parabolic(fig_cubic, Complex(0));
}

}  // namespace

TEST_CASE("normalization of the figure cubic is the identity") {
  ParabolicModel m = fig_model();
  CHECK(std::abs(m.a() - Complex(0.95)) < 1e-12);
  CHECK(std::abs(m.b() - Complex(0.05)) < 1e-12);
  CHECK(std::abs(m.affine().scale - Complex(1)) < 1e-12);
  CHECK(std::abs(m.affine().shift) < 1e-12);
  CHECK(m.trap_radius() > 0);
  CHECK(m.half_plane_bound() == doctest::Approx(1.0 / (2 * m.trap_radius())));
}

TEST_CASE("normalization rescales z + 2z^2") {
  ParabolicModel m =
      normalize_parabolic(PolynomialMap::from_real({0, 1, 2}), Complex(0));
  CHECK(std::abs(m.affine().scale - Complex(2)) < 1e-12);
  CHECK(std::abs(m.a()) < 1e-12);
  CHECK(std::abs(m.b() - Complex(1)) < 1e-12);
  CHECK(m.f().degree() == 2);
  CHECK(std::abs(m.f().coeff(2) - Complex(1)) < 1e-12);
}

TEST_CASE("normalization keeps higher-order terms") {
  ParabolicModel m = normalize_parabolic(
      PolynomialMap::from_real({0, 1, 1, 1, 1}), Complex(0));
  CHECK(std::abs(m.a() - Complex(1)) < 1e-12);
  CHECK(std::abs(m.b()) < 1e-12);

  ParabolicModel quartic = normalize_parabolic(
      PolynomialMap::from_real({0, 1, 1, 0, -0.2}), Complex(0));
  CHECK(std::abs(quartic.a()) < 1e-12);
  CHECK(std::abs(quartic.b() - Complex(1)) < 1e-12);
}

TEST_CASE("normalization rejections") {
  CHECK_THROWS_AS(
      normalize_parabolic(PolynomialMap::from_real({0, 0, 1}), Complex(0)),
      Error);
  CHECK_THROWS_AS(
      normalize_parabolic(PolynomialMap::from_real({0, 1, 0, 1}), Complex(0)),
      Error);
}

TEST_CASE("trap disk maps into itself") {
  ParabolicModel m = fig_model();
  double r = m.trap_radius();
  for (int j = 0; j < 256; ++j) {
    double theta = 2.0 * M_PI * (j + 0.5) / 256;
    Complex w = Complex(-r, 0) + r * Complex(std::cos(theta), std::sin(theta));
    CHECK(std::abs(m.f()(w) + Complex(r, 0)) < r);
  }
}

TEST_CASE("basin verdicts") {
  ParabolicModel m = fig_model();
  CHECK(in_basin(m, Complex(-0.05)).inside());
  CHECK(in_basin(m, Complex(10)).escaped());
  // Both critical points belong to the basin.
  for (Complex c : critical_points(m.f())) {
    CHECK(in_basin(m, c).inside());
  }
}

TEST_CASE("phi against the deep-orbit oracle") {
  ParabolicModel m = fig_model();
  const Complex z(-0.2, 0.0);
  // Independent oracle: Phi_N = Z_N - N - b Log Z_N by direct iteration,
  // carried in long double so the million-step orbit's own rounding noise
  // stays well below the comparison threshold.
  const long N = 1000000;
  std::complex<long double> w(z.real(), z.imag());
  const std::complex<long double> one(1.0L), a(0.95L);
  for (long n = 0; n < N; ++n) w = w * (one + w * (one + a * w));
  std::complex<long double> Z = -one / w;
  std::complex<long double> oracle =
      Z - (long double)(N) - (one - a) * std::log(Z);
  CHECK(std::abs(phi(m, z).value - Complex(double(oracle.real()),
                                           double(oracle.imag()))) < 1e-6);
}

TEST_CASE("abel equation, attracting side") {
  ParabolicModel m = fig_model();
  const double tol = 1e-10;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> re(-0.45, -0.01);
  std::uniform_real_distribution<double> im(-0.2, 0.2);
  int used = 0;
  for (int k = 0; k < 400 && used < 200; ++k) {
    Complex z(re(rng), im(rng));
    if (!in_basin(m, z).inside()) continue;
    ++used;
    Complex lhs = phi(m, m.f()(z), tol).value;
    Complex rhs = phi(m, z, tol).value + 1.0;
    CHECK(std::abs(lhs - rhs) < 10 * tol);
  }
  CHECK(used == 200);
}

TEST_CASE("phi normalization decay along the real axis") {
  ParabolicModel m = fig_model();
  double prev = 1e9;
  for (double X : {50.0, 100.0, 200.0, 400.0}) {
    Complex z(-1.0 / X, 0.0);
    double dev = std::abs(phi(m, z).value - (X - m.b().real() * std::log(X)));
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("phi increments decay quadratically") {
  ParabolicModel m = fig_model();
  std::vector<double> increments;
  phi_with_increments(m, Complex(-0.2), 1e-9, kCoordinateMaxDepth,
                      &increments);
  REQUIRE(increments.size() > 100);
  // Least-squares slope of log d_n against log n over the quadratic regime.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t n = 8; n < increments.size(); ++n) {
    if (increments[n] <= 0) continue;
    double x = std::log(double(n + 1));
    double y = std::log(increments[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  CHECK(slope > -2.5);
  CHECK(slope < -1.5);
}

TEST_CASE("phi rejects points outside the basin") {
  ParabolicModel m = fig_model();
  CHECK_THROWS_AS(phi(m, Complex(10)), Error);
}

TEST_CASE("psi seed asymptotics at Z = -40") {
  ParabolicModel m = fig_model();
  Complex Z(-40.0, 0.0);
  Complex seed = -1.0 / (Z + m.b() * std::log(-Z));
  Complex value = psi(m, Z).value;
  CHECK(std::abs(value - seed) < 1e-3);
  // Self-consistency at increasing depth through the conjugacy.
  Complex pushed = psi(m, Z - 16.0).value;
  for (int i = 0; i < 16; ++i) pushed = m.f()(pushed);
  CHECK(std::abs(value - pushed) < 1e-9);
}

TEST_CASE("abel equation, repelling side") {
  ParabolicModel m = fig_model();
  const double tol = 1e-10;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    Complex Z(coord(rng), coord(rng));
    Complex lhs = psi(m, Z + 1.0, tol).value;
    Complex rhs = m.f()(psi(m, Z, tol).value);
    CHECK(std::abs(lhs - rhs) < 10 * tol);
  }
}
