#include "imploder/implosion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace imploder {

Complex perturbed_orbit(const PolynomialMap& p, Complex eps, int N,
                        Complex z) {
  if (N < 0) fail(Errc::Usage, "perturbed_orbit: N >= 0");
  const Complex eps2 = eps * eps;
  Complex w = z;
  for (int n = 0; n < N; ++n) {
    w = p(w) + eps2;
    if (std::abs(w) > kOverflowRadius) {
      fail(Errc::Overflow, "perturbed_orbit: iterate escaped past 1e12");
    }
  }
  return w;
}

Complex mobius_exact(double eps, int N, Complex z) {
  if (!(eps > 0)) fail(Errc::Usage, "mobius_exact: eps > 0");
  const double e2 = eps * eps;
  const Complex disc = std::sqrt(Complex(e2 * e2 - 4.0 * e2));
  const Complex alpha_p = 0.5 * (Complex(e2) + disc);
  const Complex alpha_m = 0.5 * (Complex(e2) - disc);
  const Complex lambda = 1.0 / ((1.0 - alpha_p) * (1.0 - alpha_p));
  const Complex mu = std::pow(lambda, double(N));
  const Complex denom =
      1.0 - ((mu - 1.0) / (alpha_p - alpha_m)) * (z - alpha_p);
  if (std::abs(denom) < 1e-14) {
    fail(Errc::Pole, "mobius_exact: z maps to the pole of the iterate");
  }
  return alpha_p + mu * (z - alpha_p) / denom;
}

double implosion_error(const ParabolicModel& m, std::span<const Complex> samples,
                       int N, double tol) {
  if (N < 8) fail(Errc::Usage, "implosion_error: N >= 8");
  const Complex eps(M_PI / N, 0.0);
  double worst = 0.0;
  for (Complex z : samples) {
    if (!in_basin(m, z).inside()) {
      fail(Errc::NotInBasin, "implosion_error: sample outside basin");
    }
    Complex approx = perturbed_orbit(m.f(), eps, N, z);
    Complex exact = lavaurs(m, z, tol);
    worst = std::max(worst, std::abs(approx - exact));
  }
  return worst;
}

SkewMap::SkewMap(PolynomialMap f_in, Complex coupling_in, PolynomialMap g_in)
    : f(std::move(f_in)), coupling(coupling_in), g(std::move(g_in)) {
  auto near = [](Complex x, Complex y) { return std::abs(x - y) <= 1e-12; };
  if (!near(f.coeff(0), Complex(0)) || !near(f.coeff(1), Complex(1)) ||
      !near(f.coeff(2), Complex(1))) {
    fail(Errc::Degenerate, "skew map: f must be z + z^2 + O(z^3)");
  }
  if (!near(g.coeff(0), Complex(0)) || !near(g.coeff(1), Complex(1)) ||
      !near(g.coeff(2), Complex(-1))) {
    fail(Errc::Degenerate, "skew map: g must be w - w^2 + O(w^3)");
  }
}

Complex standard_coupling() { return Complex(M_PI * M_PI / 4.0, 0.0); }

std::vector<std::pair<Complex, Complex>> skew_orbit(const SkewMap& F,
                                                    Complex z, Complex w,
                                                    int n) {
  if (n < 0) fail(Errc::Usage, "skew_orbit: n >= 0");
  std::vector<std::pair<Complex, Complex>> out;
  out.reserve(size_t(n) + 1);
  out.emplace_back(z, w);
  for (int k = 0; k < n; ++k) {
    std::tie(z, w) = F.step(z, w);
    if (std::abs(z) > kOverflowRadius || std::abs(w) > kOverflowRadius) {
      fail(Errc::Overflow, "skew_orbit: iterate escaped past 1e12");
    }
    out.emplace_back(z, w);
  }
  return out;
}

ParabolicModel g_basin_model(const PolynomialMap& g) {
  // Conjugate by w -> -w: (-g(-w)) has the + normal form at 0.
  std::vector<Complex> c(g.coeffs().size());
  for (size_t k = 0; k < c.size(); ++k) {
    double sign = (k % 2 == 0) ? -1.0 : 1.0;
    c[k] = sign * g.coeffs()[k];
  }
  return normalize_parabolic(PolynomialMap(std::move(c)), Complex(0));
}

Verdict in_g_basin(const ParabolicModel& gm, Complex w, int n_max) {
  return in_basin(gm, gm.affine().to_model(-w), n_max);
}

double key_limit_error(const SkewMap& F, const ParabolicModel& m, Complex z,
                       Complex w, int n, double tol) {
  if (n < 1) fail(Errc::Usage, "key_limit_error: n >= 1");
  if (!in_basin(m, z).inside()) {
    fail(Errc::NotInBasin, "key_limit_error: z outside basin of f");
  }
  ParabolicModel gm = g_basin_model(F.g);
  if (!in_g_basin(gm, w).inside()) {
    fail(Errc::NotInBasin, "key_limit_error: w outside basin of g");
  }
  Complex wk = w;
  for (long k = 0; k < long(n) * n; ++k) wk = F.g(wk);
  Complex zk = z;
  for (int k = 0; k < 2 * n + 1; ++k) std::tie(zk, wk) = F.step(zk, wk);
  return std::abs(zk - lavaurs(m, z, tol)) + std::abs(wk);
}

namespace {

double lavaurs_image_radius(const ParabolicModel& m, Complex xi, double radius,
                            double tol) {
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    double theta = 2.0 * M_PI * (j + 0.5) / 64;
    Complex x = xi + radius * Complex(std::cos(theta), std::sin(theta));
    if (!in_basin(m, x).inside()) return std::numeric_limits<double>::infinity();
    try {
      worst = std::max(worst, std::abs(lavaurs(m, x, tol) - xi));
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

}  // namespace

WitnessReport wandering_witness(const SkewMap& F, const ParabolicModel& m,
                                const LavaursFixedPoint& fp, int n_cap,
                                int samples) {
  if (!(std::abs(fp.rho) < 1.0)) {
    fail(Errc::NoFixedPoint, "witness: fixed point is not attracting");
  }
  if (n_cap < 2) fail(Errc::Usage, "witness: n_cap >= 2");
  const double tol = 1e-8;

  WitnessReport report;
  report.xi = fp.xi;
  report.V_center = fp.xi;
  report.W_center = Complex(0.25, 0.0);
  report.W_radius = 0.1;
  report.n_cap = n_cap;

  // V is the largest disk on a fine radius ladder with L(V) verified to
  // map inside V. The containment stage needs every bit of this radius:
  // the passage error of the n^2 returns decays like ~1/n against the
  // margin V - sup|L(dV) - xi|, and an undersized V pushes the first
  // containment time past any workable n_cap.
  double best = 0;
  for (double radius = 1e-3; radius < 2.0; radius *= 1.189207115002721) {
    if (lavaurs_image_radius(m, fp.xi, radius, tol) < radius) {
      best = radius;
    } else {
      break;
    }
  }
  if (best == 0) {
    fail(Errc::NoN0, "witness: no verified invariant disk around xi");
  }
  report.V_radius = best;

  // Deterministic sample grid of V x W; the same grid drives the n0
  // search and the propagation, so contained[n0] holds by construction.
  int side = std::max(1, int(std::floor(std::sqrt(double(samples)))));
  std::vector<std::pair<Complex, Complex>> grid;
  for (int i = 0; i < side; ++i) {
    double rv = report.V_radius * (i + 0.5) / side;
    double av = 2.0 * M_PI * i / side + 0.3;
    Complex v = report.V_center + rv * Complex(std::cos(av), std::sin(av));
    for (int j = 0; j < side; ++j) {
      double rw = report.W_radius * (j + 0.5) / side;
      double aw = 2.0 * M_PI * j / side + 0.7;
      Complex w = report.W_center + rw * Complex(std::cos(aw), std::sin(aw));
      grid.emplace_back(v, w);
    }
  }
  report.samples_checked = int(grid.size());

  // Smallest n0 with pi1 F^(2n0+1) of the sampled V x g^(n0^2)(W) inside
  // V. The search runs up to n_cap: the passage error decays like ~1/n,
  // and for the cubic family containment first holds around n ~ 17.
  int n0 = -1;
  for (int n = 2; n <= n_cap && n0 < 0; ++n) {
    bool ok = true;
    for (auto [v, w] : grid) {
      Complex z = v, wcur = w;
      for (int k = 0; k < n * n; ++k) wcur = F.g(wcur);
      for (int k = 0; k < 2 * n + 1; ++k) std::tie(z, wcur) = F.step(z, wcur);
      if (!(std::abs(z - report.V_center) < report.V_radius)) {
        ok = false;
        break;
      }
    }
    if (ok) n0 = n;
  }
  if (n0 < 0) {
    fail(Errc::NoN0, "witness: containment not achieved by n = " +
                         std::to_string(n_cap));
  }
  report.n0 = n0;

  // Start each sample at F^(n0^2)-time: (v, g^(n0^2) w).
  std::vector<std::pair<Complex, Complex>> state;
  state.reserve(grid.size());
  for (auto [v, w] : grid) {
    Complex wn = w;
    for (int k = 0; k < n0 * n0; ++k) wn = F.g(wn);
    state.emplace_back(v, wn);
  }

  bool all_contained = true;
  for (int n = n0; n <= n_cap; ++n) {
    bool contained = true;
    double dist = 0.0;
    for (auto& [z, w] : state) {
      double d = std::abs(z - report.V_center);
      dist = std::max(dist, d);
      if (!(d < report.V_radius)) contained = false;
    }
    report.contained.push_back(contained);
    report.distances.push_back(dist);
    all_contained = all_contained && contained;
    if (n == n_cap) break;
    // Advance from time n^2 to (n+1)^2.
    for (auto& [z, w] : state) {
      for (int k = 0; k < 2 * n + 1; ++k) std::tie(z, w) = F.step(z, w);
    }
  }

  bool tail_decreasing = true;
  size_t cnt = report.distances.size();
  size_t tail = std::min<size_t>(5, cnt);
  for (size_t i = cnt - tail; i + 1 < cnt; ++i) {
    if (report.distances[i + 1] > report.distances[i]) tail_decreasing = false;
  }
  report.success = all_contained && tail_decreasing;
  return report;
}

std::vector<std::pair<double, LavaursFixedPoint>> real_quartic_scan(
    double b_lo, double b_hi, int steps) {
  if (!(b_lo >= -8.0 / 27.0 && b_lo < b_hi && b_hi <= 0.0)) {
    fail(Errc::Usage, "quartic scan: need -8/27 <= b_lo < b_hi <= 0");
  }
  if (steps < 1) fail(Errc::Usage, "quartic scan: steps >= 1");
  std::vector<std::pair<double, LavaursFixedPoint>> hits;
  for (int k = 0; k < steps; ++k) {
    double b = b_lo + (k + 0.5) * (b_hi - b_lo) / steps;
    PolynomialMap f({Complex(0), Complex(1), Complex(1), Complex(0),
                     Complex(b)});
    ParabolicModel m = normalize_parabolic(f, Complex(0));
    std::vector<LavaursFixedPoint> fps;
    try {
      fps = find_attracting_fixed_points(m, 0.4, -1.0, 12);
    } catch (const Error&) {
      continue;
    }
    for (const LavaursFixedPoint& fp : fps) {
      if (std::abs(fp.xi.imag()) < 1e-6) hits.emplace_back(b, fp);
    }
  }
  return hits;
}

}  // namespace imploder
