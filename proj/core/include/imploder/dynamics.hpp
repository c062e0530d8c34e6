#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imploder/polynomial.hpp"

namespace imploder {

enum class StabilityKind {
  Superattracting,
  Attracting,
  Repelling,
  Parabolic,
  Elliptic,
};

// Classification of a multiplier. q is the parabolic order (smallest q with
// lambda^q ~ 1); it is 0 for non-parabolic classes.
struct MultiplierClass {
  StabilityKind kind;
  int q = 0;

  bool operator==(const MultiplierClass&) const = default;
};

std::string to_string(const MultiplierClass& c);

// |lambda| <= tol            -> Superattracting
// tol < |lambda| < 1 - tol   -> Attracting
// |lambda| > 1 + tol         -> Repelling
// | |lambda| - 1 | <= tol    -> Parabolic(q) for the smallest q <= q_max with
//                               |lambda^q - 1| <= tol, else Elliptic.
// In strict mode the indifferent annulus is refused (Errc::Ambiguous).
MultiplierClass classify_multiplier(Complex lambda, double tol = 1e-9,
                                    int q_max = 24, bool strict = false);

struct FixedPointRecord {
  Complex location;
  Complex multiplier;
  MultiplierClass cls;
  int period = 1;
};

// The deg(p) roots of p(z)-z, with multiplicity, each classified by its
// multiplier p'(root). Infinity (always superattracting for a polynomial)
// is deliberately not represented; the CLI reports it as an annotation.
std::vector<FixedPointRecord> fixed_points(const PolynomialMap& p,
                                           double tol = 1e-12);

// Periodic points of the exact period given: roots of p^period(z) - z with
// points of strictly smaller period removed (cluster radius 1e-6). One
// record per cycle point; the multiplier is the product of p' along the
// cycle. Fails with Errc::Resource when deg^period exceeds the degree cap.
std::vector<FixedPointRecord> periodic_points(const PolynomialMap& p,
                                              int period, double tol = 1e-12);

struct OrbitTrace {
  std::vector<Complex> points;
  bool escaped = false;
  std::optional<int> escape_index;
};

// Records z0, f(z0), ... until |z| > R (escaped) or n_max points recorded.
OrbitTrace orbit(const PolynomialMap& p, Complex z0, int n_max, double R);

}  // namespace imploder
