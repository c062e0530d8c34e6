#pragma once

#include <span>
#include <utility>

#include "imploder/lavaurs.hpp"

namespace imploder {

// Iterates escaping this modulus raise Errc::Overflow (an escape signal,
// not a numerical failure).
inline constexpr double kOverflowRadius = 1e12;

// N-th iterate of z -> p(z) + eps^2.
Complex perturbed_orbit(const PolynomialMap& p, Complex eps, int N, Complex z);

// Closed forms for the Moebius map g(z) = z/(1-z): Fatou coordinates are
// -1/z on both sides and the Lavaurs map is the identity.
inline Complex mobius_phi(Complex z) { return -1.0 / z; }
inline Complex mobius_psi(Complex Z) { return -1.0 / Z; }
inline Complex mobius_step(Complex z, Complex eps2) {
  return z / (1.0 - z) + eps2;
}

// Exact N-th iterate of g + eps^2 as a Moebius transformation: fixed
// points alpha+- solve z^2 - eps^2 z + eps^2 = 0, the multiplier at
// alpha+ is 1/(1-alpha+)^2, and the iterate multiplies it N times.
// Errc::Pole when z hits the pole of the composed transformation.
Complex mobius_exact(double eps, int N, Complex z);

// max over samples of |(f + (pi/N)^2)^N (z) - L(z)|; the samples must lie
// in the parabolic basin.
double implosion_error(const ParabolicModel& m, std::span<const Complex> samples,
                       int N, double tol = 1e-8);

// Polynomial skew product F(z, w) = (f(z) + coupling * w, g(w)) with both
// coordinates parabolic at 0: f(z) = z + z^2 + O(z^3) and
// g(w) = w - w^2 + O(w^3).
struct SkewMap {
  PolynomialMap f;
  Complex coupling;
  PolynomialMap g;

  SkewMap(PolynomialMap f_in, Complex coupling_in, PolynomialMap g_in);

  std::pair<Complex, Complex> step(Complex z, Complex w) const {
    return {f(z) + coupling * w, g(w)};
  }
};

// Standard coupling pi^2/4 for the n^2-return-time construction.
Complex standard_coupling();

// Records (z, w), F(z, w), ..., F^n(z, w).
std::vector<std::pair<Complex, Complex>> skew_orbit(const SkewMap& F,
                                                    Complex z, Complex w,
                                                    int n);

// Parabolic model for the second coordinate: g is conjugated by w -> -w to
// the + normal form, so the basin of 0 under g is tested through it.
ParabolicModel g_basin_model(const PolynomialMap& g);
Verdict in_g_basin(const ParabolicModel& gm, Complex w,
                   int n_max = kBasinMaxIters);

// |pi_1 F^(2n+1)(z, g^(n^2)(w)) - L_f(z)| + |pi_2 ...|: the displacement
// from the limit (L_f(z), 0) of the orbit segment between consecutive
// n^2 returns.
double key_limit_error(const SkewMap& F, const ParabolicModel& m, Complex z,
                       Complex w, int n, double tol = 1e-8);

struct WitnessReport {
  Complex xi;
  Complex V_center;
  double V_radius = 0;
  Complex W_center;
  double W_radius = 0;
  int n0 = 0;
  int n_cap = 0;
  std::vector<bool> contained;     // index n - n0
  std::vector<double> distances;   // max over samples of |pi1 F^(n^2) - xi|
  int samples_checked = 0;
  bool success = false;
};

// Desk-scale witness of the wandering-domain mechanism: V is a disk
// around the attracting fixed point xi with L(V) inside V, W a fixed disk
// in the basin of g; after the smallest n0 in [2, n_cap] with
// pi1 F^(2n0+1)(V x g^(n0^2)(W)) inside V, a sample grid of V x W is
// propagated through the n^2 return times up to n_cap, recording
// containment in V and the distance to xi.
WitnessReport wandering_witness(const SkewMap& F, const ParabolicModel& m,
                                const LavaursFixedPoint& fp, int n_cap,
                                int samples);

// Samples b in (b_lo, b_hi) and reports, per sampled b, the attracting
// Lavaurs fixed points of z + z^2 + b z^4 whose plane location is real
// (|Im xi| < 1e-6). Empty result is legal.
std::vector<std::pair<double, LavaursFixedPoint>> real_quartic_scan(
    double b_lo, double b_hi, int steps);

}  // namespace imploder
