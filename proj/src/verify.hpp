// Independent symbolic checks: polynomial first-integral obstruction, the
// invariant-cone identity, and the worked-example harness for the parametric
// pipeline.
#pragma once

#include "engine.hpp"

#include <array>
#include <map>
#include <string>

namespace hznf {

// Monomial x^a y^b z^c mu^m of a full three-variable expansion.  The rest of
// the library never leaves (x, R) form; these polynomials exist so the checks
// below can verify identities against the raw coordinates.
struct XyzMon {
  int x = 0, y = 0, z = 0;
  MuExp mu;

  bool operator<(const XyzMon& o) const {
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
    if (z != o.z) return z < o.z;
    return mu_cmp(mu, o.mu) < 0;
  }
  bool operator==(const XyzMon& o) const {
    return x == o.x && y == o.y && z == o.z && mu == o.mu;
  }
};

using XyzPoly = std::map<XyzMon, Rat>;

// the right-hand sides (xdot, ydot, zdot) of the system generated by v,
// expanded into raw coordinates (rotation included)
std::array<XyzPoly, 3> expand_system(const Field& v);

// R*xdot - 2x*(y*ydot + z*zdot) for an arbitrary system triple
XyzPoly cone_residual(const XyzPoly& xdot, const XyzPoly& ydot, const XyzPoly& zdot);

// true iff the cone residual of v's system vanishes identically
bool cone_invariance_check(const Field& v);

// Dimension of the space of polynomial first integrals of degree 1..max_deg
// for the system generated by a rotation-free, parameter-free v != 0.
// The expected value is zero for every nonzero element of the algebra.
int first_integral_obstruction(const Field& v, int max_deg);

// Outcome of one worked-example trial: the pipeline's computed radial values
// compared against the closed forms b/a and b(da-cb)/a^3.
struct ExampleReport {
  Rat expected_beta1, expected_beta2;
  Rat computed_beta1, computed_beta2;
  bool unit_quadratic = false;  // E^1_1 coefficient is exactly 1
  bool unit_unfolding = false;  // E^0_0 mu1 + E^0_1 mu2 + E^0_2 mu3, all unit
  bool pass = false;
  std::string error;  // nonempty when the pipeline rejected the input
};

// builds the three-equation quartic family for (a,b,c,d,e), runs the
// parametric pipeline, and fills the report; throws DegenerateError when
// ab(da-cb) = 0
ExampleReport example_trial(const Rat& a, const Rat& b, const Rat& c,
                            const Rat& d, const Rat& e,
                            const Options& opt = Options{12, 3});

// the family itself (three parameters), exposed for reuse by callers
Field example_family(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                     const Rat& e);

}  // namespace hznf
