#include "imploder/lavaurs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace imploder {

Complex lavaurs(const ParabolicModel& m, Complex z, double tol) {
  CoordinateResult a = phi(m, z, 0.5 * tol);
  CoordinateResult b = psi(m, a.value, 0.5 * tol);
  if (a.residual + b.residual > tol) {
    fail(Errc::NoConvergence, "lavaurs: combined residual above tol");
  }
  return b.value;
}

Complex horn(const ParabolicModel& m, Complex Z, double tol) {
  CoordinateResult w = psi(m, Z, 0.5 * tol);
  if (!in_basin(m, w.value).inside()) {
    fail(Errc::OutOfDomain, "horn: psi(Z) is not in the parabolic basin");
  }
  return phi(m, w.value, 0.5 * tol).value;
}

double default_im_max(const ParabolicModel& m) {
  double gap = std::abs(Complex(1) - m.a());
  double height = gap > 0 ? std::log(1.0 / gap) / (2.0 * M_PI) : 0.0;
  return std::max(0.0, height) + 3.0;
}

namespace {

constexpr double kFdStep = 1e-6;

std::optional<Complex> horn_or_nothing(const ParabolicModel& m, Complex Z,
                                       double tol) {
  try {
    return horn(m, Z, tol);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct NewtonHit {
  Complex Z;
  Complex rho;
};

// Newton on G(Z) = E(Z) - Z with central-difference derivatives. Steps are
// clamped: past the fixed-point band G flattens toward the constant c0 and
// unclamped Newton shoots off into the upper half-plane.
std::optional<NewtonHit> newton_fixed_point(const ParabolicModel& m,
                                            Complex seed, double band_im_max,
                                            double eval_tol, double accept) {
  Complex Z = seed;
  for (int it = 0; it < 30; ++it) {
    if (std::abs(Z.imag()) > band_im_max + 2.0 || std::abs(Z.imag()) < 0.05) {
      return std::nullopt;
    }
    auto e0 = horn_or_nothing(m, Z, eval_tol);
    if (!e0) return std::nullopt;
    Complex g = *e0 - Z;
    auto ep = horn_or_nothing(m, Z + Complex(kFdStep), eval_tol);
    auto em = horn_or_nothing(m, Z - Complex(kFdStep), eval_tol);
    if (!ep || !em) return std::nullopt;
    Complex dE = (*ep - *em) / (2.0 * kFdStep);
    if (std::abs(g) < accept) return NewtonHit{Z, dE};
    Complex dG = dE - Complex(1);
    if (std::abs(dG) < 1e-12) return std::nullopt;
    Complex step = g / dG;
    if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
    Z -= step;
  }
  return std::nullopt;
}

Complex normalize_re(Complex Z) {
  return Z - std::floor(Z.real());
}

}  // namespace

std::vector<LavaursFixedPoint> find_attracting_fixed_points(
    const ParabolicModel& m, double im_min, double im_max, int grid) {
  if (im_min < 0.2) fail(Errc::Usage, "fixed points: im_min >= 0.2");
  if (grid < 2) fail(Errc::Usage, "fixed points: grid >= 2");
  if (im_max < 0) im_max = default_im_max(m);

  // Coarse |E(Z)-Z| landscape over both bands; Newton only from local
  // minima (the horn map has one fixed point per unit cell per band for a
  // near 1, so a handful of seeds suffices).
  const double step = 1.0 / grid;
  const double grid_tol = 1e-6;
  struct Node {
    Complex Z;
    double g = std::numeric_limits<double>::infinity();
  };
  std::vector<Node> nodes;
  int rows = std::max(1, int(std::floor((im_max - im_min) / step)) + 1);
  for (int band = 0; band < 2; ++band) {
    double sign = band == 0 ? 1.0 : -1.0;
    for (int iy = 0; iy < rows; ++iy) {
      double im = sign * (im_min + iy * step);
      for (int ix = 0; ix < grid; ++ix) {
        Node node;
        node.Z = Complex((ix + 0.5) * step, im);
        if (auto e = horn_or_nothing(m, node.Z, grid_tol)) {
          node.g = std::abs(*e - node.Z);
        }
        nodes.push_back(node);
      }
    }
  }

  auto value_at = [&](int band, int iy, int ix) {
    ix = (ix % grid + grid) % grid;  // Re is periodic
    if (iy < 0 || iy >= rows) return std::numeric_limits<double>::infinity();
    return nodes[size_t(band) * rows * grid + size_t(iy) * grid + ix].g;
  };
  std::vector<Complex> seeds;
  for (int band = 0; band < 2; ++band) {
    for (int iy = 0; iy < rows; ++iy) {
      for (int ix = 0; ix < grid; ++ix) {
        double g = value_at(band, iy, ix);
        if (!std::isfinite(g)) continue;
        bool is_min = true;
        for (int dy = -1; dy <= 1 && is_min; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (value_at(band, iy + dy, ix + dx) < g) {
              is_min = false;
              break;
            }
          }
        }
        if (is_min) {
          seeds.push_back(
              nodes[size_t(band) * rows * grid + size_t(iy) * grid + ix].Z);
        }
      }
    }
  }

  // Newton from each seed, in parallel; results merged in seed order.
  std::vector<std::optional<NewtonHit>> hits(seeds.size());
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next.fetch_add(1); i < seeds.size();
         i = next.fetch_add(1)) {
      hits[i] = newton_fixed_point(m, seeds[i], im_max, 1e-7, 5e-7);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::vector<LavaursFixedPoint> out;
  for (const auto& hit : hits) {
    if (!hit) continue;
    Complex Z = normalize_re(hit->Z);
    bool duplicate = false;
    for (const LavaursFixedPoint& fp : out) {
      Complex d = Z - fp.Z;
      d -= std::round(d.real());
      if (std::abs(d) < 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    // The acceptance threshold sits above the horn-map evaluation noise
    // (~1e-9 at this tolerance) and well below the 1e-6 residual contract.
    auto polished = newton_fixed_point(m, Z, im_max, 1e-9, 2e-8);
    if (!polished) continue;
    if (!(std::abs(polished->rho) < 1.0)) continue;
    Complex Zf = normalize_re(polished->Z);
    Complex xi = psi(m, Zf, 1e-9).value;
    out.push_back({Zf, xi, polished->rho, 0});
  }

  std::sort(out.begin(), out.end(),
            [](const LavaursFixedPoint& x, const LavaursFixedPoint& y) {
              if (x.Z.imag() != y.Z.imag()) return x.Z.imag() > y.Z.imag();
              return x.Z.real() < y.Z.real();
            });
  for (size_t i = 0; i < out.size(); ++i) out[i].basin_label = int(i);
  return out;
}

std::vector<AttractionDisk> attraction_disks(
    const ParabolicModel& m, const std::vector<LavaursFixedPoint>& fps,
    double tol) {
  std::vector<AttractionDisk> disks;
  for (const LavaursFixedPoint& fp : fps) {
    AttractionDisk disk{fp, 0.0};
    for (double rho = 0.5; rho >= 1e-6; rho *= 0.5) {
      bool ok = true;
      for (int j = 0; j < 64 && ok; ++j) {
        double theta = 2.0 * M_PI * (j + 0.5) / 64;
        Complex x = fp.xi + rho * Complex(std::cos(theta), std::sin(theta));
        if (!in_basin(m, x).inside()) {
          ok = false;
          break;
        }
        try {
          ok = std::abs(lavaurs(m, x, tol) - fp.xi) < rho;
        } catch (const Error&) {
          ok = false;
        }
      }
      if (ok) {
        disk.radius = rho;
        break;
      }
    }
    disks.push_back(disk);
  }
  return disks;
}

KLVerdict k_lavaurs_verdict(const ParabolicModel& m, Complex z, int depth,
                            int n_max, const std::vector<AttractionDisk>& disks,
                            double tol) {
  if (depth < 0) fail(Errc::Usage, "k_lavaurs: depth >= 0");
  Verdict kf = membership(m.f(), z, n_max);
  if (kf.escaped()) return {KLVerdict::State::NotInKf, 0, std::nullopt};
  if (!in_basin(m, z, n_max).inside()) {
    return {KLVerdict::State::InKfOutsideBasin, 0, std::nullopt};
  }

  Complex w = z;
  std::optional<int> attractor;
  for (int k = 1; k <= depth; ++k) {
    for (const AttractionDisk& disk : disks) {
      if (disk.radius > 0 && std::abs(w - disk.fp.xi) < disk.radius) {
        // Trapped by an attracting fixed point: the rest of the orbit
        // stays in the basin.
        return {KLVerdict::State::Retained, depth, disk.fp.basin_label};
      }
    }
    w = lavaurs(m, w, tol);
    if (membership(m.f(), w, n_max).escaped()) {
      return {KLVerdict::State::LavaursEscapes, k, std::nullopt};
    }
    if (!in_basin(m, w, n_max).inside()) {
      return {KLVerdict::State::InKfOutsideBasin, k, std::nullopt};
    }
  }
  for (const AttractionDisk& disk : disks) {
    if (disk.radius > 0 && std::abs(w - disk.fp.xi) < disk.radius) {
      attractor = disk.fp.basin_label;
    }
  }
  return {KLVerdict::State::Retained, depth, attractor};
}

KLVerdict k_lavaurs_verdict(const ParabolicModel& m, Complex z, int depth,
                            int n_max,
                            const std::vector<LavaursFixedPoint>& fps) {
  return k_lavaurs_verdict(m, z, depth, n_max, attraction_disks(m, fps),
                           1e-8);
}

}  // namespace imploder
