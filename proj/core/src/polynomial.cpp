#include "imploder/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace imploder {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NoConvergence: return "NO_CONVERGENCE";
    case Errc::Resource: return "RESOURCE";
    case Errc::NotParabolic: return "NOT_PARABOLIC";
    case Errc::Degenerate: return "DEGENERATE";
    case Errc::NotInBasin: return "NOT_IN_BASIN";
    case Errc::OutOfDomain: return "OUT_OF_DOMAIN";
    case Errc::Overflow: return "OVERFLOW";
    case Errc::Pole: return "POLE";
    case Errc::Ambiguous: return "AMBIGUOUS";
    case Errc::NoFixedPoint: return "NO_FIXED_POINT";
    case Errc::NoN0: return "NO_N0";
    case Errc::Io: return "IO";
    case Errc::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

PolynomialMap::PolynomialMap(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(Errc::Degenerate, "polynomial needs coefficients");
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0)) {
    coeffs_.pop_back();
  }
}

PolynomialMap PolynomialMap::from_real(std::initializer_list<double> coeffs) {
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  for (double x : coeffs) c.emplace_back(x, 0.0);
  return PolynomialMap(std::move(c));
}

Complex PolynomialMap::operator()(Complex z) const {
  Complex acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

PolynomialMap deriv(const PolynomialMap& p) {
  if (p.degree() < 1) fail(Errc::Degenerate, "derivative needs degree >= 1");
  std::vector<Complex> d(p.degree());
  for (int k = 1; k <= p.degree(); ++k) {
    d[k - 1] = double(k) * p.coeff(k);
  }
  return PolynomialMap(std::move(d));
}

PolynomialMap operator+(const PolynomialMap& p, const PolynomialMap& q) {
  std::vector<Complex> c(std::max(p.coeffs().size(), q.coeffs().size()),
                         Complex(0));
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = p.coeff(int(k)) + q.coeff(int(k));
  }
  return PolynomialMap(std::move(c));
}

PolynomialMap operator-(const PolynomialMap& p, const PolynomialMap& q) {
  std::vector<Complex> c(std::max(p.coeffs().size(), q.coeffs().size()),
                         Complex(0));
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = p.coeff(int(k)) - q.coeff(int(k));
  }
  return PolynomialMap(std::move(c));
}

PolynomialMap operator*(const PolynomialMap& p, const PolynomialMap& q) {
  std::vector<Complex> c(p.coeffs().size() + q.coeffs().size() - 1,
                         Complex(0));
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    for (size_t j = 0; j < q.coeffs().size(); ++j) {
      c[i + j] += p.coeffs()[i] * q.coeffs()[j];
    }
  }
  return PolynomialMap(std::move(c));
}

PolynomialMap compose(const PolynomialMap& p, const PolynomialMap& q,
                      int degree_cap) {
  long result_degree = long(p.degree()) * long(std::max(q.degree(), 0));
  if (result_degree > degree_cap) {
    fail(Errc::Resource, "compose: result degree " +
                             std::to_string(result_degree) +
                             " exceeds cap " + std::to_string(degree_cap));
  }
  // Horner in polynomial arithmetic: ((c_d q + c_{d-1}) q + ...) q + c_0.
  PolynomialMap acc({p.coeffs().back()});
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * q + PolynomialMap({p.coeff(k)});
  }
  return acc;
}

namespace {

double coeff_norm(const PolynomialMap& p) {
  double m = 0.0;
  for (const Complex& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

bool residual_ok(const PolynomialMap& p, Complex z, double tol, double norm) {
  double bound = tol * std::pow(1.0 + std::abs(z), double(p.degree())) * norm;
  return std::abs(p(z)) <= bound;
}

}  // namespace

std::vector<Complex> roots(const PolynomialMap& p, double tol) {
  if (p.degree() < 1) fail(Errc::Degenerate, "roots: needs degree >= 1");

  // Factor out roots at the origin exactly.
  std::vector<Complex> found;
  std::vector<Complex> c = p.coeffs();
  while (c.size() > 1 && c.front() == Complex(0)) {
    found.push_back(Complex(0));
    c.erase(c.begin());
  }
  if (c.size() == 1) return found;
  PolynomialMap q(c);
  const int n = q.degree();
  const PolynomialMap dq = deriv(q);
  const double norm = coeff_norm(q);

  // Initial guesses on a perturbed circle of radius 1 + max|coeff|.
  const double radius = 1.0 + norm;
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    double theta = 2.0 * M_PI * (k + 0.25) / n + 0.42;
    z[k] = radius * Complex(std::cos(theta), std::sin(theta));
  }

  const int max_sweeps = 200;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      Complex pk = q(z[k]);
      if (std::abs(pk) == 0.0) continue;
      Complex dk = dq(z[k]);
      if (dk == Complex(0)) {
        z[k] += Complex(1e-8, 1e-8);
        converged = false;
        continue;
      }
      Complex w = pk / dk;
      Complex sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0);
        sum += 1.0 / diff;
      }
      Complex denom = 1.0 - w * sum;
      Complex step = std::abs(denom) < 1e-300 ? w : w / denom;
      z[k] -= step;
      if (std::abs(step) > tol * (1.0 + std::abs(z[k]))) converged = false;
    }
  }

  // Newton polish; keep the polished value only while the residual improves.
  for (int k = 0; k < n; ++k) {
    for (int it = 0; it < 3; ++it) {
      Complex dk = dq(z[k]);
      if (std::abs(dk) < 1e-300) break;
      Complex next = z[k] - q(z[k]) / dk;
      if (std::abs(q(next)) < std::abs(q(z[k]))) {
        z[k] = next;
      } else {
        break;
      }
    }
  }

  for (int k = 0; k < n; ++k) {
    if (!residual_ok(q, z[k], tol, norm)) {
      fail(Errc::NoConvergence,
           "roots: residual criterion unmet after 200 sweeps");
    }
  }
  found.insert(found.end(), z.begin(), z.end());
  return found;
}

std::vector<Complex> critical_points(const PolynomialMap& p) {
  if (p.degree() < 2) {
    fail(Errc::Degenerate, "critical_points: needs degree >= 2");
  }
  return roots(deriv(p));
}

}  // namespace imploder
