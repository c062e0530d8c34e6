#pragma once

#include <vector>

#include "imploder/julia.hpp"

namespace imploder {

// Default coordinate tolerance. Tolerances below the schemes'
// double-precision floor (~1e-10 increments; the Richardson tail estimate
// then carries the remaining accuracy) are clamped; the achieved residual
// is always reported.
inline constexpr double kCoordinateTol = 1e-10;
inline constexpr int kCoordinateMaxDepth = 100000;
inline constexpr int kBasinMaxIters = 100000;
// Default for the composed maps (Lavaurs, horn): the sum of the two legs'
// floors.
inline constexpr double kComposedTol = 1e-9;

// Affine conjugacy w = scale * (z - shift) between the caller's coordinates
// and the normalized model coordinates.
struct AffineChange {
  Complex scale{1.0, 0.0};
  Complex shift{0.0, 0.0};

  Complex to_model(Complex z) const { return scale * (z - shift); }
  Complex from_model(Complex w) const { return shift + w / scale; }
};

// A polynomial with a parabolic fixed point, conjugated to the normal form
//   f(w) = w + w^2 + a w^3 + O(w^4),
// together with a trap disk D(-r, r) verified to map into itself. All
// coordinate operations (in_basin, phi, psi, the Lavaurs and horn maps)
// work in model coordinates; use affine() to convert.
class ParabolicModel {
 public:
  const PolynomialMap& f() const { return f_; }
  Complex a() const { return a_; }
  Complex b() const { return b_; }              // b = 1 - a
  double trap_radius() const { return r_; }
  double half_plane_bound() const { return M_; }  // M = 1/(2r)
  const AffineChange& affine() const { return affine_; }
  double escape_radius() const { return escape_radius_; }

  bool in_trap(Complex w) const {
    // open disk D(-r, r)
    return std::norm(w + Complex(r_, 0)) < r_ * r_;
  }

 private:
  friend ParabolicModel normalize_parabolic(const PolynomialMap&, Complex);
  PolynomialMap f_{{Complex(0), Complex(1)}};
  Complex a_{};
  Complex b_{};
  double r_ = 0;
  double M_ = 0;
  AffineChange affine_{};
  double escape_radius_ = 0;
};

// Conjugates p at its parabolic fixed point alpha (multiplier within 1e-9
// of 1, else Errc::NotParabolic) by w = c (z - alpha) so the quadratic
// coefficient becomes 1 (Errc::Degenerate when it vanishes). The trap
// radius is searched by halving from 0.5 until the 256-sample boundary
// invariance check passes.
ParabolicModel normalize_parabolic(const PolynomialMap& p, Complex alpha);

// Basin-of-0 test in model coordinates: Inside once the orbit enters the
// trap disk, Escaped past the escape radius, else Undetermined.
Verdict in_basin(const ParabolicModel& m, Complex z,
                 int n_max = kBasinMaxIters);

struct CoordinateResult {
  Complex value{};
  int depth_used = 0;
  double residual = 0;  // magnitude of the last limit-scheme increment
};

// Attracting Fatou coordinate: the unique solution of phi(f(z)) = phi(z)+1
// on the basin with phi(z) = -1/z - b log(-1/z) + o(1). Computed by the
// limit scheme Phi_n = Z_n - n - b Log Z_n once the orbit is inside the
// trap (there Z_n stays in a right half-plane, so the principal Log is
// safe), with pre-trap steps folded in through the Abel relation. The
// scheme's increments decay like 1/Z_n^2, so the partial sums are
// Richardson-corrected by the estimated tail increment * (Z_n + 1/2).
CoordinateResult phi(const ParabolicModel& m, Complex z,
                     double tol = kCoordinateTol,
                     int n_max = kCoordinateMaxDepth);

// Repelling Fatou parametrization: entire, psi(Z+1) = f(psi(Z)), with
// -1/psi(Z) = Z + b log(-Z) + o(1) as Re Z -> -infinity. Evaluated by
// shifting Z left of -max(2M, 50), inverting the repelling-petal
// coordinate there (Newton on the inverse-branch limit scheme), and
// pushing forward under f.
CoordinateResult psi(const ParabolicModel& m, Complex Z,
                     double tol = kCoordinateTol,
                     int n_max = kCoordinateMaxDepth);

// phi restricted to a trap point, recording every increment magnitude of
// the limit scheme (for convergence-rate diagnostics).
CoordinateResult phi_with_increments(const ParabolicModel& m, Complex z,
                                     double tol, int n_max,
                                     std::vector<double>* increments);

}  // namespace imploder
