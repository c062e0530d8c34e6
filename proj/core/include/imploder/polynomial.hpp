#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "imploder/error.hpp"

namespace imploder {

using Complex = std::complex<double>;

// Composition results above this degree are refused (Errc::Resource).
inline constexpr int kDegreeCap = 64;

// A polynomial in one complex variable, coefficients in ascending degree
// order. Trailing zero coefficients are trimmed on construction, so the
// leading coefficient of a nonzero polynomial is always nonzero. The zero
// polynomial is represented as {0}.
class PolynomialMap {
 public:
  explicit PolynomialMap(std::vector<Complex> coeffs);
  PolynomialMap(std::initializer_list<Complex> coeffs)
      : PolynomialMap(std::vector<Complex>(coeffs)) {}

  static PolynomialMap from_real(std::initializer_list<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k]
                                                          : Complex(0);
  }

  // Horner evaluation. Overflow to floating infinity is a legal result.
  Complex operator()(Complex z) const;

  bool operator==(const PolynomialMap& other) const = default;

 private:
  std::vector<Complex> coeffs_;
};

inline Complex eval(const PolynomialMap& p, Complex z) { return p(z); }

// Coefficient-wise formal derivative.
PolynomialMap deriv(const PolynomialMap& p);

// p(q(z)). Fails with Errc::Resource if deg(p)*deg(q) > degree_cap.
PolynomialMap compose(const PolynomialMap& p, const PolynomialMap& q,
                      int degree_cap = kDegreeCap);

PolynomialMap operator+(const PolynomialMap& p, const PolynomialMap& q);
PolynomialMap operator-(const PolynomialMap& p, const PolynomialMap& q);
PolynomialMap operator*(const PolynomialMap& p, const PolynomialMap& q);

// All deg(p) roots, with multiplicity (clusters for multiple roots), by
// Aberth-Ehrlich simultaneous iteration. Each returned root satisfies
// |p(root)| <= tol * (1+|root|)^deg * max|coeff|; Errc::NoConvergence if
// that cannot be reached within 200 sweeps.
std::vector<Complex> roots(const PolynomialMap& p, double tol = 1e-12);

// The deg(p)-1 finite critical points (roots of p'), with multiplicity.
std::vector<Complex> critical_points(const PolynomialMap& p);

}  // namespace imploder
