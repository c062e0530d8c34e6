#pragma once

#include <optional>

#include "imploder/fatou.hpp"

namespace imploder {

// Lavaurs map L = psi . phi, defined on the parabolic basin. Commutes
// with f.
Complex lavaurs(const ParabolicModel& m, Complex z,
                double tol = kComposedTol);

// Horn map E = phi . psi, defined where psi(Z) lands in the basin
// (Errc::OutOfDomain otherwise). E - Id is periodic of period 1 and tends
// to -pi i (1-a) in the upper half-plane.
Complex horn(const ParabolicModel& m, Complex Z, double tol = kComposedTol);

struct LavaursFixedPoint {
  Complex Z;            // horn coordinate, Re normalized to [0, 1)
  Complex xi;           // plane coordinate, xi = psi(Z)
  Complex rho;          // multiplier E'(Z)
  int basin_label = 0;
};

// im_max < 0 selects the default band height (1/2pi) log(1/|1-a|) + 3.
double default_im_max(const ParabolicModel& m);

// Attracting fixed points of the Lavaurs map, located through the horn
// map: Newton on E(Z) - Z (derivatives by central difference, h = 1e-6)
// from the best grid seeds in the bands Im in [im_min, im_max] and
// [-im_max, -im_min], Re in [0, 1). Results are deduplicated modulo 1,
// filtered to |rho| < 1, and labeled in a deterministic order. An empty
// result is legal.
std::vector<LavaursFixedPoint> find_attracting_fixed_points(
    const ParabolicModel& m, double im_min = 0.4, double im_max = -1.0,
    int grid = 24);

struct KLVerdict {
  enum class State { NotInKf, InKfOutsideBasin, LavaursEscapes, Retained };
  State state = State::NotInKf;
  int index = 0;  // escape count for LavaursEscapes, depth for Retained
  std::optional<int> attractor;
};

// A Lavaurs fixed point with a disk around xi verified to map into itself
// under L; entering the disk certifies convergence to xi.
struct AttractionDisk {
  LavaursFixedPoint fp;
  double radius = 0;
};

std::vector<AttractionDisk> attraction_disks(
    const ParabolicModel& m, const std::vector<LavaursFixedPoint>& fps,
    double tol = 1e-8);

// Membership in K(L) = points whose whole Lavaurs orbit stays in the
// filled Julia set. NotInKf if z escapes; InKfOutsideBasin if the orbit
// is bounded but leaves (or starts outside) the basin where L is defined;
// LavaursEscapes(k) at the first Lavaurs iterate escaping; Retained(depth)
// otherwise, with the attractor label set once the orbit enters one of
// the attraction disks.
KLVerdict k_lavaurs_verdict(const ParabolicModel& m, Complex z, int depth,
                            int n_max,
                            const std::vector<LavaursFixedPoint>& fps);
KLVerdict k_lavaurs_verdict(const ParabolicModel& m, Complex z, int depth,
                            int n_max, const std::vector<AttractionDisk>& disks,
                            double tol);

}  // namespace imploder
