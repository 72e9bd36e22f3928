#pragma once

// Exhaustive round-trip audit of the shape-lattice parametrization, shared by
// the unit tests and the acceptance run.

#include <cmath>
#include <sstream>
#include <string>

#include "cubicshape/shape.hpp"
#include "oracles.hpp"

namespace audit {

using namespace cubicshape;

struct Result {
  i64 points = 0;
  i64 failures = 0;
  std::string first_failure;
};

// Checks one lattice point with nonzero multiplier.
inline void check_point(const ShapeLattice& L, i64 x, i64 y, i64 X, Result& res) {
  const ShapePoint P = make_point(L, x, y);
  const CubicForm f = point_to_form(L, P);
  const i128 d = oracle::cubic_disc(f.a, f.b, f.c, f.d);
  if ((d < 0 ? -d : d) >= X) return;
  ++res.points;
  const QuadForm H = hessian(f);
  const QuadForm nQ{P.n * L.shape.r, P.n * L.shape.s, P.n * L.shape.t};
  bool ok = form_to_point(L, f) == P && H == nQ && disc(f) == d && ring_disc_formula(L, x, y) == d &&
            P.ringdisc == d && d == -i128(P.n) * P.n * L.D / 3;
  if (!ok) {
    if (res.failures == 0) {
      std::ostringstream os;
      os << L.shape << " at (" << x << ", " << y << ")";
      res.first_failure = os.str();
    }
    ++res.failures;
  }
}

// Every lattice point with 0 < |disc| < X; indefinite shapes have infinitely
// many, so those are taken from the box |x|, |y| <= box.
inline Result run(const QuadForm& q, i64 X, i64 box = 3000) {
  const ShapeLattice L = lattice_for(q);
  Result res;
  if (L.kind == ShapeKind::square) {
    // |disc| = 27 (r^3 d^2 - s^3 a d)^2 / D^3 < X
    const long double M = std::sqrt(static_cast<long double>(X) * L.D * L.D * L.D / 27);
    const i64 r3 = q.r * q.r * q.r, s3 = q.s * q.s * q.s;
    const i64 dmax = static_cast<i64>(M) + 1;
    for (i64 d = -dmax; d <= dmax; ++d) {
      if (d == 0 || d % L.ystep != 0) continue;
      const long double w = M / std::abs(d);
      const i64 lo = static_cast<i64>(std::floor((r3 * d - w) / s3)) - 1;
      const i64 hi = static_cast<i64>(std::ceil((r3 * d + w) / s3)) + 1;
      for (i64 a = lo; a <= hi; ++a)
        if (L.contains(a, d) && r3 * d - s3 * a != 0) check_point(L, a, d, X, res);
    }
    return res;
  }
  i64 R = box;
  if (L.kind == ShapeKind::definite) {
    // adjoint t b^2 - s b c + r c^2 bounded by sqrt(3 r^2 t^2 X / |D|)
    const long double bound = std::sqrt(3.0L * q.r * q.r * q.t * q.t * X / std::abs(L.D));
    const long double lam = ((q.r + q.t) - std::sqrt((long double)(q.r - q.t) * (q.r - q.t) + q.s * q.s)) / 2;
    R = static_cast<i64>(std::sqrt(bound / lam)) + 1;
  }
  for (i64 x = -R; x <= R; ++x)
    for (i64 y = -R; y <= R; ++y)
      if ((x != 0 || y != 0) && L.contains(x, y)) check_point(L, x, y, X, res);
  return res;
}

}  // namespace audit
