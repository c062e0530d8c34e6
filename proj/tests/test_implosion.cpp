#include <doctest.h>

#include "imploder/implosion.hpp"

using namespace imploder;

namespace {

ParabolicModel fig_model() {
  return normalize_parabolic(PolynomialMap::from_real({0, 1, 1, 0.95}),
                             Complex(0));
}

SkewMap standard_skew() {
  return SkewMap(PolynomialMap::from_real({0, 1, 1, 0.95}),
                 standard_coupling(), PolynomialMap::from_real({0, 1, -1}));
}

// Real quartic with a tame real Lavaurs image, paired with a g whose
// cubic term aligns the n^2-return phases; used where real test points
// are pinned (the cubic's Lavaurs map sends the real axis far outside
// the basin).
ParabolicModel quartic_model() {
  return normalize_parabolic(
      PolynomialMap::from_real({0, 1, 1, 0, -0.198}), Complex(0));
}

SkewMap quartic_skew() {
  return SkewMap(PolynomialMap::from_real({0, 1, 1, 0, -0.198}),
                 standard_coupling(),
                 PolynomialMap::from_real({0, 1, -1, -0.16}));
}

const LavaursFixedPoint& fig_attractor() {
  static const std::vector<LavaursFixedPoint> fps =
      find_attracting_fixed_points(fig_model());
  REQUIRE(!fps.empty());
  return fps.front();
}

}  // namespace

TEST_CASE("mobius closed forms") {
  CHECK(std::abs(mobius_phi(Complex(-0.5)) - Complex(2)) < 1e-12);
  CHECK(std::abs(mobius_psi(Complex(-5)) - Complex(0.2)) < 1e-12);
  // L = psi . phi is the identity.
  Complex z(-0.3, 0.0);
  CHECK(std::abs(mobius_psi(mobius_phi(z)) - z) < 1e-12);
}

TEST_CASE("mobius_exact fixed point and roots") {
  const double eps = 0.1;
  Complex disc = std::sqrt(Complex(std::pow(eps, 4) - 4 * eps * eps));
  Complex alpha_p = 0.5 * (Complex(eps * eps) + disc);
  for (int N : {1, 10, 100}) {
    CHECK(std::abs(mobius_exact(eps, N, alpha_p) - alpha_p) < 1e-12);
  }
  // alpha+- ~ +-0.1i + 0.005.
  CHECK(std::abs(alpha_p - Complex(0.005, 0.0998749)) < 1e-6);
}

TEST_CASE("mobius_exact equals direct iteration") {
  for (int N : {10, 100, 1000}) {
    double eps = M_PI / N;
    for (int k = 0; k < 50; ++k) {
      Complex z = std::polar(0.4 * (k + 1) / 50.0, 2.0 * M_PI * k / 50.0);
      Complex direct = z;
      bool safe = true;
      for (int i = 0; i < N && safe; ++i) {
        if (std::abs(direct - Complex(1)) < 1e-2) safe = false;
        direct = mobius_step(direct, Complex(eps * eps));
      }
      if (!safe) continue;
      CHECK(std::abs(mobius_exact(eps, N, z) - direct) < 1e-8);
    }
  }
}

TEST_CASE("mobius identity limit") {
  double prev = 1e9;
  for (int N : {64, 128, 256, 512}) {
    double eps = M_PI / N;
    double sup = 0;
    for (int k = 0; k < 20; ++k) {
      Complex z = std::polar(0.3, 2.0 * M_PI * k / 20.0) - Complex(0.1);
      sup = std::max(sup, std::abs(mobius_exact(eps, N, z) - z));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("perturbed orbit with eps = 0 is plain iteration") {
  PolynomialMap f = PolynomialMap::from_real({0, 1, 1, 0.95});
  Complex z(-0.2, 0.1);
  Complex w = z;
  for (int i = 0; i < 7; ++i) w = f(w);
  CHECK(std::abs(perturbed_orbit(f, Complex(0), 7, z) - w) < 1e-15);
}

TEST_CASE("perturbed orbit signals escape") {
  CHECK_THROWS_AS(
      perturbed_orbit(PolynomialMap::from_real({0, 0, 1}), Complex(0), 60,
                      Complex(2)),
      Error);
}

TEST_CASE("implosion error triangle and decay") {
  // Sampled near the attracting fixed point of the Lavaurs map, where the
  // image stays deep in the basin. On the real axis L is the covering of
  // the complement and takes astronomically large values.
  ParabolicModel m = fig_model();
  const Complex z = fig_attractor().xi + Complex(0.01, 0.0);
  const std::vector<Complex> single{z};
  double e64 = implosion_error(m, single, 64);
  Complex direct = perturbed_orbit(m.f(), Complex(M_PI / 64), 64, z);
  CHECK(std::abs(direct - lavaurs(m, z, 1e-8)) <= e64 + 1e-12);
  double e128 = implosion_error(m, single, 128);
  CHECK(e128 < e64);
}

TEST_CASE("skew orbit structure") {
  SkewMap F = standard_skew();
  auto at_zero = skew_orbit(F, Complex(0), Complex(0), 10);
  for (auto [z, w] : at_zero) {
    CHECK(std::abs(z) == 0.0);
    CHECK(std::abs(w) == 0.0);
  }

  // w-components are bitwise independent of the first coordinate. Short
  // horizon: generic first coordinates blow up quickly under the coupling
  // kicks, which is an Errc::Overflow, not a wrong w.
  auto orbit1 = skew_orbit(F, Complex(-0.2), Complex(0.3), 4);
  auto orbit2 = skew_orbit(F, Complex(-0.05, 0.02), Complex(0.3), 4);
  for (size_t k = 0; k < orbit1.size(); ++k) {
    CHECK(orbit1[k].second == orbit2[k].second);
  }

  // Parabolic decay of the second coordinate: n * w_n stays of order 1.
  Complex w = 0.3;
  for (int n = 0; n < 1000; ++n) w = F.g(w);
  double scaled = 1000.0 * std::abs(w);
  CHECK(scaled > 0.5);
  CHECK(scaled < 2.0);
}

TEST_CASE("basin of g through the flipped model") {
  SkewMap F = standard_skew();
  ParabolicModel gm = g_basin_model(F.g);
  CHECK(in_g_basin(gm, Complex(0.25)).inside());
  CHECK(in_g_basin(gm, Complex(0.3, 0.05)).inside());
  CHECK(in_g_basin(gm, Complex(10)).escaped());
}

TEST_CASE("key limit error decreases") {
  SkewMap F = quartic_skew();
  ParabolicModel m = quartic_model();
  double prev = 1e9;
  for (int n : {5, 10, 20, 40}) {
    double err = key_limit_error(F, m, Complex(-0.2), Complex(0.3), n);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.05);

  // The w-part alone shrinks between consecutive square times.
  Complex w5 = 0.3, w6 = 0.3;
  for (int i = 0; i < 25; ++i) w5 = F.g(w5);
  for (int i = 0; i < 36; ++i) w6 = F.g(w6);
  CHECK(std::abs(w6) < std::abs(w5));
}

TEST_CASE("wandering witness runs and is deterministic") {
  SkewMap F = standard_skew();
  ParabolicModel m = fig_model();
  const LavaursFixedPoint& fp = fig_attractor();
  WitnessReport r1 = wandering_witness(F, m, fp, 25, 16);
  WitnessReport r2 = wandering_witness(F, m, fp, 25, 16);
  CHECK(r1.n0 >= 2);
  CHECK(r1.V_radius > 0);
  CHECK(r1.samples_checked == 16);
  CHECK(r1.contained.size() == r1.distances.size());
  CHECK(r1.xi == r2.xi);
  CHECK(r1.V_radius == r2.V_radius);
  CHECK(r1.n0 == r2.n0);
  CHECK(r1.distances == r2.distances);
  CHECK(r1.contained == r2.contained);

  CHECK_THROWS_AS(
      wandering_witness(F, m, LavaursFixedPoint{Complex(0), Complex(0),
                                                Complex(1.5), 0},
                        8, 16),
      Error);
}

TEST_CASE("real quartic scan contract") {
  auto hits = real_quartic_scan(-0.28, -0.05, 3);
  for (const auto& [b, fp] : hits) {
    CHECK(b > -8.0 / 27.0);
    CHECK(b < 0.0);
    CHECK(std::abs(fp.rho) < 1.0);
    CHECK(std::abs(fp.xi.imag()) < 1e-6);
    PolynomialMap f({Complex(0), Complex(1), Complex(1), Complex(0),
                     Complex(b)});
    ParabolicModel m = normalize_parabolic(f, Complex(0));
    CHECK(std::abs(lavaurs(m, fp.xi) - fp.xi) < 1e-6);
  }
}
