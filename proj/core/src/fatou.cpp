#include "imploder/fatou.hpp"

#include <cmath>

namespace imploder {

namespace {

constexpr int kTrapBoundarySamples = 256;
constexpr double kTrapMinRadius = 1e-4;

bool trap_invariant(const PolynomialMap& f, double r) {
  // Samples avoid theta = 0: the parabolic point itself sits on the
  // boundary of D(-r, r) and maps to itself.
  for (int j = 0; j < kTrapBoundarySamples; ++j) {
    double theta = 2.0 * M_PI * (j + 0.5) / kTrapBoundarySamples;
    Complex w = Complex(-r, 0) + r * Complex(std::cos(theta), std::sin(theta));
    Complex image = f(w);
    if (!(std::norm(image + Complex(r, 0)) < r * r)) return false;
  }
  return true;
}

}  // namespace

ParabolicModel normalize_parabolic(const PolynomialMap& p, Complex alpha) {
  if (p.degree() < 2) fail(Errc::Degenerate, "normalize: degree >= 2");
  Complex residual = p(alpha) - alpha;
  Complex lambda = deriv(p)(alpha);
  if (std::abs(residual) > 1e-9 * (1.0 + std::abs(alpha)) ||
      std::abs(lambda - Complex(1)) > 1e-9) {
    fail(Errc::NotParabolic,
         "normalize: alpha is not a parabolic fixed point with multiplier 1");
  }

  // Shift the fixed point to the origin: t(z) = p(z + alpha) - alpha.
  PolynomialMap shifted =
      compose(p, PolynomialMap({alpha, Complex(1)}), kDegreeCap) -
      PolynomialMap({alpha});
  std::vector<Complex> t = shifted.coeffs();
  t.resize(size_t(p.degree()) + 1, Complex(0));
  if (std::abs(t[2]) < 1e-12) {
    fail(Errc::Degenerate, "normalize: quadratic coefficient vanishes");
  }

  // Conjugate by w = c z with c = t2; coefficient k maps to t_k / c^(k-1).
  // The constant and linear terms are exactly 0 and 1 within the
  // precondition tolerance; snap them so the model is exactly parabolic.
  Complex c = t[2];
  std::vector<Complex> g(t.size());
  g[0] = Complex(0);
  g[1] = Complex(1);
  Complex cpow = c;  // c^(k-1)
  for (size_t k = 2; k < t.size(); ++k) {
    g[k] = t[k] / cpow;
    cpow *= c;
  }

  ParabolicModel m;
  m.f_ = PolynomialMap(std::move(g));
  m.a_ = m.f_.coeff(3);
  m.b_ = Complex(1) - m.a_;
  m.affine_ = AffineChange{c, alpha};
  m.escape_radius_ = escape_radius(m.f_);

  double r = 0.5;
  while (r >= kTrapMinRadius && !trap_invariant(m.f_, r)) r *= 0.5;
  if (r < kTrapMinRadius) {
    fail(Errc::NotParabolic, "normalize: no invariant trap disk found");
  }
  m.r_ = r;
  m.M_ = 1.0 / (2.0 * r);
  return m;
}

Verdict in_basin(const ParabolicModel& m, Complex z, int n_max) {
  if (n_max < 1) fail(Errc::Usage, "in_basin: n_max >= 1");
  const double R2 = m.escape_radius() * m.escape_radius();
  Complex w = z;
  for (int n = 0; n <= n_max; ++n) {
    if (m.in_trap(w)) return Verdict::make_inside(n);
    if (std::norm(w) > R2) return Verdict::make_escaped(n, n);
    w = m.f()(w);
  }
  return Verdict::make_undetermined(n_max);
}

namespace {

// f(w) - w evaluated without cancellation: w^2 (c2 + c3 w + ...). The
// model has c0 = 0 and c1 = 1 exactly.
Complex orbit_increment(const PolynomialMap& f, Complex w) {
  Complex acc = f.coeffs().back();
  for (int k = f.degree() - 1; k >= 2; --k) acc = acc * w + f.coeff(k);
  return acc * w * w;
}

// Attracting-side limit scheme from a point already inside the trap.
// Phi_n = Z_n - n - b Log Z_n with Z_n = -1/f^n(y0). The value is carried
// as Phi_0 plus a sum of increments, each computed from the orbit
// increment f(w) - w directly; the naive difference of successive Phi_n
// would lose ~|Z| ulps to cancellation, which the tail estimate
// d_n * (Z_{n+1} + 1/2) (increments behave like K/Z_n^2) would then
// amplify.
CoordinateResult phi_in_trap(const ParabolicModel& m, Complex y0, double tol,
                             int n_max, std::vector<double>* increments) {
  const Complex b = m.b();
  const double stop = std::max(tol, 1e-10);
  Complex w = y0;
  const Complex base = -1.0 / w - b * std::log(-1.0 / w);
  Complex sum = 0;
  for (int n = 0; n < n_max; ++n) {
    Complex t = orbit_increment(m.f(), w);
    Complex w_next = w + t;
    Complex dZ = t / (w * w_next);        // Z_{n+1} - Z_n
    Complex ratio = w / w_next;           // Z_{n+1} / Z_n
    Complex d = (dZ - 1.0) - b * std::log(ratio);
    if (increments) increments->push_back(std::abs(d));
    sum += d;
    w = w_next;
    if (std::abs(d) < stop) {
      Complex Zprev = -1.0 / (w - t);
      Complex Zcur = -1.0 / w;
      Complex d_next = d * std::norm(Zprev / Zcur);
      return {base + sum + d_next * (Zcur + 0.5), n + 1, std::abs(d)};
    }
  }
  fail(Errc::NoConvergence, "phi: depth cap reached with residual > tol");
}

}  // namespace

CoordinateResult phi_with_increments(const ParabolicModel& m, Complex z,
                                     double tol, int n_max,
                                     std::vector<double>* increments) {
  Verdict v = in_basin(m, z, n_max);
  if (!v.inside()) {
    fail(Errc::NotInBasin, "phi: point not certified in the parabolic basin");
  }
  // Advance to the trap, then correct by the Abel relation phi(f(z)) = phi(z)+1.
  int k = 0;
  Complex y = z;
  while (!m.in_trap(y)) {
    y = m.f()(y);
    ++k;
  }
  CoordinateResult res = phi_in_trap(m, y, tol, n_max, increments);
  res.value -= double(k);
  res.depth_used += k;
  return res;
}

CoordinateResult phi(const ParabolicModel& m, Complex z, double tol,
                     int n_max) {
  return phi_with_increments(m, z, tol, n_max, nullptr);
}

namespace {

// Repelling coordinate near the parabolic point: for y deep in the
// repelling petal (W = -1/y far left), the coordinate is the normalized
// asymptotic plus the summed tail of the limit scheme. The tail sums the
// increments d(W) ~ K/W^2 of points ever deeper in the petal, which
// telescopes to d * (W + 1/2); d itself comes from one forward step
// through the cancellation-free orbit increment. Smooth in y and O(1) to
// evaluate, so it can be Newton-inverted directly.
Complex deep_repelling_coordinate(const ParabolicModel& m, Complex y,
                                  double* increment) {
  const Complex b = m.b();
  Complex t = orbit_increment(m.f(), y);
  Complex y_fwd = y + t;                 // f(y)
  Complex dW = t / (y * y_fwd);          // W_fwd - W
  Complex ratio = y / y_fwd;             // W_fwd / W
  Complex d = (dW - 1.0) - b * std::log(ratio);
  Complex W = -1.0 / y;
  if (increment) *increment = std::abs(d);
  return W - b * std::log(-W) + d * (W + 0.5);
}

}  // namespace

CoordinateResult psi(const ParabolicModel& m, Complex Z, double tol,
                     int n_max) {
  const Complex b = m.b();
  const double X0 = std::max(2.0 * m.half_plane_bound(), 50.0);
  const int shift = std::max(0, int(std::ceil(Z.real() + X0)));
  const Complex X = Z - double(shift);

  // Depth at which the limit-scheme increment reaches the floor; the
  // orbit constant K is bounded by ~1 for the cubic/quartic families in
  // scope, with headroom here.
  const double floor_e = std::max(0.25 * tol, 2.5e-11);
  double WD = std::min(std::sqrt(2.0 / floor_e), 0.9 * double(n_max));
  int deep = std::max(0, int(std::ceil(WD + X.real())));
  Complex X_deep = X - double(deep);

  // Newton in y on the deep coordinate, seeded by the normalization
  // -1/psi(X) ~ X + b Log(-X).
  Complex y = -1.0 / (X_deep + b * std::log(-X_deep));
  const double newton_tol = std::max(0.5 * tol, 1e-11);
  double residual = 0;
  double increment = 0;
  bool converged = false;
  for (int it = 0; it < 30; ++it) {
    Complex g = deep_repelling_coordinate(m, y, &increment) - X_deep;
    residual = std::abs(g);
    if (residual < newton_tol) {
      converged = true;
      break;
    }
    Complex dcoord = (1.0 + b * y) / (y * y);
    y -= g / dcoord;
  }
  if (!converged) fail(Errc::NoConvergence, "psi: seed inversion stalled");

  int push = deep + shift;
  if (push > 2 * n_max) fail(Errc::NoConvergence, "psi: push budget exceeded");
  Complex w = y;
  for (int i = 0; i < push; ++i) w = m.f()(w);
  return {w, push, std::max(residual, increment)};
}

}  // namespace imploder
