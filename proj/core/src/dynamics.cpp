#include "imploder/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace imploder {

std::string to_string(const MultiplierClass& c) {
  switch (c.kind) {
    case StabilityKind::Superattracting: return "superattracting";
    case StabilityKind::Attracting: return "attracting";
    case StabilityKind::Repelling: return "repelling";
    case StabilityKind::Parabolic: return "parabolic(" + std::to_string(c.q) + ")";
    case StabilityKind::Elliptic: return "elliptic";
  }
  return "?";
}

MultiplierClass classify_multiplier(Complex lambda, double tol, int q_max,
                                    bool strict) {
  if (!(tol > 0.0 && tol < 0.1)) fail(Errc::Usage, "classify: tol out of range");
  if (q_max < 1) fail(Errc::Usage, "classify: q_max < 1");
  double mod = std::abs(lambda);
  if (mod <= tol) return {StabilityKind::Superattracting, 0};
  if (std::abs(mod - 1.0) <= tol) {
    if (strict) fail(Errc::Ambiguous, "classify: |lambda| within tol of 1");
    Complex pw = lambda;
    for (int q = 1; q <= q_max; ++q) {
      if (std::abs(pw - Complex(1)) <= tol) return {StabilityKind::Parabolic, q};
      pw *= lambda;
    }
    return {StabilityKind::Elliptic, 0};
  }
  if (mod < 1.0) return {StabilityKind::Attracting, 0};
  return {StabilityKind::Repelling, 0};
}

namespace {

PolynomialMap identity_poly() { return PolynomialMap({Complex(0), Complex(1)}); }

PolynomialMap iterate_poly(const PolynomialMap& p, int times) {
  PolynomialMap acc = identity_poly();
  for (int i = 0; i < times; ++i) acc = compose(p, acc);
  return acc;
}

}  // namespace

std::vector<FixedPointRecord> fixed_points(const PolynomialMap& p, double tol) {
  if (p.degree() < 2) fail(Errc::Degenerate, "fixed_points: needs degree >= 2");
  PolynomialMap dp = deriv(p);
  std::vector<FixedPointRecord> out;
  for (Complex alpha : roots(p - identity_poly(), tol)) {
    Complex lambda = dp(alpha);
    out.push_back({alpha, lambda, classify_multiplier(lambda), 1});
  }
  return out;
}

std::vector<FixedPointRecord> periodic_points(const PolynomialMap& p,
                                              int period, double tol) {
  if (period < 1) fail(Errc::Usage, "periodic_points: period >= 1");
  if (p.degree() < 2) fail(Errc::Degenerate, "periodic_points: degree >= 2");
  double cap_check = std::pow(double(p.degree()), double(period));
  if (cap_check > double(kDegreeCap)) {
    fail(Errc::Resource, "periodic_points: degree^period exceeds cap");
  }
  if (period == 1) return fixed_points(p, tol);

  PolynomialMap pn = iterate_poly(p, period);
  std::vector<Complex> candidates = roots(pn - identity_poly(), tol);

  // Points of strictly smaller period are roots of p^q(z)-z for q | period.
  const double cluster_tol = 1e-6;
  std::vector<Complex> lower;
  for (int q = 1; q < period; ++q) {
    if (period % q != 0) continue;
    PolynomialMap pq = iterate_poly(p, q);
    auto r = roots(pq - identity_poly(), tol);
    lower.insert(lower.end(), r.begin(), r.end());
  }
  std::erase_if(candidates, [&](Complex z) {
    return std::any_of(lower.begin(), lower.end(), [&](Complex w) {
      return std::abs(z - w) < cluster_tol;
    });
  });

  PolynomialMap dp = deriv(p);
  std::vector<FixedPointRecord> out;
  for (Complex alpha : candidates) {
    Complex lambda = 1;
    Complex z = alpha;
    for (int i = 0; i < period; ++i) {
      lambda *= dp(z);
      z = p(z);
    }
    out.push_back({alpha, lambda, classify_multiplier(lambda), period});
  }
  return out;
}

OrbitTrace orbit(const PolynomialMap& p, Complex z0, int n_max, double R) {
  if (n_max < 0) fail(Errc::Usage, "orbit: n_max >= 0");
  if (!(R > 0)) fail(Errc::Usage, "orbit: R > 0");
  OrbitTrace trace;
  trace.points.reserve(size_t(n_max) + 1);
  Complex z = z0;
  for (int n = 0; n <= n_max; ++n) {
    trace.points.push_back(z);
    if (std::abs(z) > R) {
      trace.escaped = true;
      trace.escape_index = n;
      break;
    }
    if (n < n_max) z = p(z);
  }
  return trace;
}

}  // namespace imploder
