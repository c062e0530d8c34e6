#pragma once

#include <utility>
#include <vector>

#include "imploder/dynamics.hpp"

namespace imploder {

// Three-valued membership for semidecidable set queries. Inside is only
// produced by algorithms holding a boundedness certificate (a verified trap
// region or a closed-form oracle); plain escape-time iteration can only say
// Escaped or Undetermined.
struct Verdict {
  enum class State { Inside, Escaped, Undetermined };
  State state = State::Undetermined;
  int escape_index = -1;    // valid when state == Escaped
  int iterations_used = 0;

  bool inside() const { return state == State::Inside; }
  bool escaped() const { return state == State::Escaped; }

  static Verdict make_inside(int iters) {
    return {State::Inside, -1, iters};
  }
  static Verdict make_escaped(int n, int iters) {
    return {State::Escaped, n, iters};
  }
  static Verdict make_undetermined(int iters) {
    return {State::Undetermined, -1, iters};
  }
};

// R = max(1, (2 + sum_{i<d} |c_i|) / |c_d|); satisfies |p(z)| >= 2|z|
// whenever |z| >= R, so crossing it certifies divergence to infinity.
double escape_radius(const PolynomialMap& p);

// Filled-Julia-set query by escape time: Escaped(n) if the orbit leaves the
// disk of radius escape_radius(p) at step n <= n_max, else Undetermined.
Verdict membership(const PolynomialMap& p, Complex z, int n_max);

enum class Connectivity { Connected, Disconnected, Undetermined };

std::string to_string(Connectivity c);

struct ConnectivityReport {
  Connectivity status = Connectivity::Undetermined;
  // One entry per finite critical point (with multiplicity).
  std::vector<std::pair<Complex, Verdict>> witnesses;
};

// Fatou's criterion: the filled Julia set is connected iff every critical
// orbit is bounded. Disconnected needs one escaping critical orbit;
// Connected needs a boundedness certificate (attracting-cycle trap disk or
// parabolic trap) for every critical orbit; otherwise Undetermined.
ConnectivityReport connectivity(const PolynomialMap& p, int n_max);

enum class NewtonBasin { RootA, RootB, OnJulia };

// Basin of Newton's method for (z-a)(z-b): the method is conjugate to
// w -> w^2 via w = (z-a)/(z-b), so the basins are the half-planes cut by
// the perpendicular bisector of [a,b].
NewtonBasin newton_quadratic_basin(Complex a, Complex b, Complex z);

}  // namespace imploder
