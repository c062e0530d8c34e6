#include "imploder/julia.hpp"

#include <cmath>
#include <optional>

#include "imploder/fatou.hpp"

namespace imploder {

std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "connected";
    case Connectivity::Disconnected: return "disconnected";
    case Connectivity::Undetermined: return "undetermined";
  }
  return "?";
}

double escape_radius(const PolynomialMap& p) {
  if (p.degree() < 2) fail(Errc::Degenerate, "escape_radius: degree >= 2");
  double lower_sum = 0.0;
  for (int i = 0; i < p.degree(); ++i) lower_sum += std::abs(p.coeff(i));
  return std::max(1.0, (2.0 + lower_sum) / std::abs(p.coeff(p.degree())));
}

Verdict membership(const PolynomialMap& p, Complex z, int n_max) {
  if (n_max < 1) fail(Errc::Usage, "membership: n_max >= 1");
  const double R = escape_radius(p);
  const double R2 = R * R;
  Complex w = z;
  for (int n = 0; n <= n_max; ++n) {
    if (std::norm(w) > R2) return Verdict::make_escaped(n, n);
    if (n < n_max) w = p(w);
  }
  return Verdict::make_undetermined(n_max);
}

namespace {

// A disk verified (on 64 boundary samples) to map into itself under the
// period-th iterate, certifying bounded orbits for anything that enters it.
struct TrapDisk {
  Complex center;
  double radius;
  int period;
};

std::optional<double> contracting_radius(const PolynomialMap& fp_iter,
                                         Complex center) {
  for (double rho = 0.5; rho >= 1e-6; rho *= 0.5) {
    bool ok = true;
    for (int j = 0; j < 64 && ok; ++j) {
      double theta = 2.0 * M_PI * (j + 0.5) / 64;
      Complex x = center + rho * Complex(std::cos(theta), std::sin(theta));
      ok = std::abs(fp_iter(x) - center) < rho;
    }
    if (ok) return rho;
  }
  return std::nullopt;
}

struct BoundednessCertificates {
  std::vector<TrapDisk> disks;               // attracting cycle traps
  std::vector<PolynomialMap> iterates;       // f^period per disk (indexed)
  std::optional<ParabolicModel> parabolic;   // trap at a multiplier-1 point
};

BoundednessCertificates build_certificates(const PolynomialMap& p) {
  BoundednessCertificates certs;
  int max_period = 1;
  while (std::pow(double(p.degree()), double(max_period + 1)) <=
         double(kDegreeCap)) {
    ++max_period;
  }
  for (int period = 1; period <= max_period; ++period) {
    std::vector<FixedPointRecord> records;
    try {
      records = periodic_points(p, period);
    } catch (const Error&) {
      continue;
    }
    PolynomialMap iter = p;
    for (int i = 1; i < period; ++i) iter = compose(p, iter);
    for (const FixedPointRecord& rec : records) {
      if (rec.cls.kind == StabilityKind::Superattracting ||
          rec.cls.kind == StabilityKind::Attracting) {
        if (auto rho = contracting_radius(iter, rec.location)) {
          certs.disks.push_back({rec.location, *rho, period});
          certs.iterates.push_back(iter);
        }
      } else if (rec.cls.kind == StabilityKind::Parabolic && rec.cls.q == 1 &&
                 period == 1 && !certs.parabolic) {
        try {
          certs.parabolic = normalize_parabolic(p, rec.location);
        } catch (const Error&) {
          // multiple petals or no trap; leave uncertified
        }
      }
    }
  }
  return certs;
}

bool certified_bounded(const BoundednessCertificates& certs,
                       const PolynomialMap& p, Complex z, int n_max) {
  Complex w = z;
  for (int n = 0; n <= n_max; ++n) {
    for (const TrapDisk& disk : certs.disks) {
      if (std::abs(w - disk.center) < disk.radius) return true;
    }
    if (certs.parabolic) {
      if (certs.parabolic->in_trap(certs.parabolic->affine().to_model(w))) {
        return true;
      }
    }
    w = p(w);
  }
  return false;
}

}  // namespace

ConnectivityReport connectivity(const PolynomialMap& p, int n_max) {
  if (p.degree() < 2) fail(Errc::Degenerate, "connectivity: degree >= 2");
  ConnectivityReport report;
  std::vector<Complex> crits = critical_points(p);
  BoundednessCertificates certs = build_certificates(p);

  bool any_escaped = false;
  bool all_inside = true;
  for (Complex c : crits) {
    Verdict v = membership(p, c, n_max);
    if (v.escaped()) {
      any_escaped = true;
    } else if (certified_bounded(certs, p, c, n_max)) {
      v = Verdict::make_inside(v.iterations_used);
    }
    if (!v.inside()) all_inside = false;
    report.witnesses.emplace_back(c, v);
  }

  if (any_escaped) {
    report.status = Connectivity::Disconnected;
  } else if (all_inside) {
    report.status = Connectivity::Connected;
  } else {
    report.status = Connectivity::Undetermined;
  }
  return report;
}

NewtonBasin newton_quadratic_basin(Complex a, Complex b, Complex z) {
  Complex sep = a - b;
  if (sep == Complex(0)) fail(Errc::Degenerate, "newton basin: a == b");
  double da = std::abs(z - a);
  double db = std::abs(z - b);
  if (std::abs(da - db) <= 1e-12 * std::abs(sep)) return NewtonBasin::OnJulia;
  return da < db ? NewtonBasin::RootA : NewtonBasin::RootB;
}

}  // namespace imploder
